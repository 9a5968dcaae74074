use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quotnef::quot::{build_report, classify, classify_genus0, DivClassQuot, ExactOptions, NefVerdict, Report, ReportOptions, Verdict};
use quotnef::symprod::{CurveParams, DivClassSym, SymBasis, TProvenance};
use quotnef::{Rat, RatVec};
use rayon::prelude::*;
use serde::Serialize;

mod config;
mod render;
mod table;

use config::{Config, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] quotnef::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Parser)]
#[command(name = "quotnef", version, about = "Nef cones of Quot schemes of torsion quotients on curves")]
struct Cli {
    /// TOML settings file (default: $QUOTNEF_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Accept conjectural or user-supplied values of t in exact cones
    #[arg(long, global = true)]
    allow_conjectural_t: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CurveArgs {
    /// Genus of the curve
    #[arg(long)]
    g: u32,
    /// Length of the quotient
    #[arg(long)]
    d: u32,
    /// Rank of the bundle
    #[arg(long)]
    n: Option<u32>,
    /// Splitting type a1,a2,... of E on P^1 (genus 0 only)
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 1)]
    splitting: Option<Vec<i64>>,
    /// Override the value of t for this genus
    #[arg(long, value_parser = parse_rat)]
    t: Option<Rat>,
    /// Provenance of --t: known, conjectural or user-supplied
    #[arg(long, default_value = "user-supplied", value_parser = parse_provenance)]
    t_provenance: TProvenance,
}

#[derive(Subcommand)]
enum Command {
    /// Report the bounds and, when known, the exact nef cone
    Cone {
        #[command(flatten)]
        curve: CurveArgs,
        /// json or table
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Decide whether a class is nef, with a certificate
    Check {
        #[command(flatten)]
        curve: CurveArgs,
        /// "a;bx,btheta" (or "a;bx" when d = 1; "a;h" in genus 0)
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Basis of the coordinates after ';' (default X_THETA)
        #[arg(long, value_parser = parse_basis)]
        basis: Option<SymBasis>,
    },
    /// Draw the cross-section picture
    Render {
        #[command(flatten)]
        curve: CurveArgs,
        /// svg, tikz or table
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reports for every cell of a range, one JSON object per line
    Grid {
        /// e.g. 1..4, 2 or 1,3,5
        #[arg(long, value_parser = parse_range)]
        g: Range,
        #[arg(long, value_parser = parse_range)]
        d: Range,
        #[arg(long, value_parser = parse_range)]
        n: Range,
    },
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    s.parse().map_err(|e: quotnef::Error| e.to_string())
}

fn parse_provenance(s: &str) -> Result<TProvenance, String> {
    s.parse().map_err(|e: quotnef::Error| e.to_string())
}

fn parse_basis(s: &str) -> Result<SymBasis, String> {
    s.parse().map_err(|e: quotnef::Error| e.to_string())
}

#[derive(Clone, Debug, PartialEq)]
struct Range(Vec<u32>);

/// `a..b` (inclusive), a single value, or a comma-separated list.
fn parse_range(s: &str) -> Result<Range, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad range {s:?}"));
    let v: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if v.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(Range(v))
}

fn params_for(g: u32, d: u32, n: Option<u32>, t: Option<(Rat, TProvenance)>, cfg: &Config) -> Result<CurveParams, CliError> {
    let mut params = CurveParams::new(g, d, n)?;
    let t = t.or_else(|| cfg.t_override(g).map(|v| (v.value.clone(), v.provenance)));
    if let Some((value, provenance)) = t {
        if g == 0 {
            return Err(CliError::Usage("--t needs g >= 1".into()));
        }
        params = params.with_t(value, provenance)?;
    }
    Ok(params)
}

impl CurveArgs {
    fn params(&self, cfg: &Config) -> Result<CurveParams, CliError> {
        let n = match (&self.splitting, self.n) {
            (Some(_), _) if self.g != 0 => return Err(CliError::Usage("--splitting requires --g 0".into())),
            (Some(s), Some(n)) if n as usize != s.len() => {
                return Err(CliError::Usage(format!("--n {n} disagrees with a splitting of length {}", s.len())))
            }
            (Some(s), _) => Some(s.len() as u32),
            (None, n) => n,
        };
        let t = self.t.clone().map(|v| (v, self.t_provenance));
        params_for(self.g, self.d, n, t, cfg)
    }

    fn report(&self, cfg: &Config) -> Result<Report, CliError> {
        let params = self.params(cfg)?;
        let opts = ReportOptions {
            allow_conjectural_t: cfg.allow_conjectural_t,
        };
        Ok(build_report(&params, self.splitting.as_deref(), opts)?)
    }
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    class: RatVec,
    #[serde(flatten)]
    result: &'a NefVerdict,
}

#[derive(Serialize)]
struct Genus0CheckOutput {
    class: RatVec,
    verdict: Verdict,
    certificate: quotnef::cones::MembershipCert,
}

fn parse_class(s: &str) -> Result<(Rat, Vec<Rat>), CliError> {
    let bad = || CliError::Usage(format!("class {s:?} is not of the form \"a;b1,b2\""));
    let (a, rest) = s.split_once(';').ok_or_else(bad)?;
    let a = a.trim().parse::<Rat>().map_err(|_| bad())?;
    let coords = rest
        .split(',')
        .map(|c| c.trim().parse::<Rat>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((a, coords))
}

fn cmd_check(curve: &CurveArgs, class: &str, basis: Option<SymBasis>, cfg: &Config) -> Result<String, CliError> {
    let params = curve.params(cfg)?;
    let (a, coords) = parse_class(class)?;
    if params.g == 0 {
        if basis.is_some() {
            return Err(CliError::Usage("--basis does not apply in genus 0".into()));
        }
        let split = match &curve.splitting {
            Some(s) => s.clone(),
            None => {
                let n = params.n.ok_or_else(|| CliError::Usage("genus 0 needs --n or --splitting".into()))?;
                vec![0; n as usize]
            }
        };
        if coords.len() != 1 {
            return Err(CliError::Usage("a genus-0 class is \"a;h\"".into()));
        }
        let x = RatVec::new(vec![a, coords[0].clone()]);
        let (verdict, certificate) = classify_genus0(&split, params.d, &x)?;
        return Ok(serde_json::to_string_pretty(&Genus0CheckOutput {
            class: x,
            verdict,
            certificate,
        })?);
    }
    if params.n.is_none() {
        return Err(CliError::Usage("--n is required".into()));
    }
    let basis = basis.unwrap_or_else(|| SymBasis::default_for(&params));
    let beta = DivClassSym::new(&params, basis, coords)?;
    let class = DivClassQuot::new(a, beta)?;
    let opts = ExactOptions {
        allow_conjectural_t: cfg.allow_conjectural_t,
    };
    let result = classify(&class, opts)?;
    Ok(serde_json::to_string_pretty(&CheckOutput {
        class: class.canonical(),
        result: &result,
    })?)
}

#[derive(Serialize)]
struct GridError {
    g: u32,
    d: u32,
    n: u32,
    error: String,
}

fn cmd_grid(gs: &[u32], ds: &[u32], ns: &[u32], cfg: &Config) -> Result<String, CliError> {
    let cells: Vec<(u32, u32, u32)> = gs
        .iter()
        .flat_map(|&g| ds.iter().flat_map(move |&d| ns.iter().map(move |&n| (g, d, n))))
        .collect();
    let opts = ReportOptions {
        allow_conjectural_t: cfg.allow_conjectural_t,
    };
    let lines: Vec<Result<String, CliError>> = cells
        .par_iter()
        .map(|&(g, d, n)| {
            let report = params_for(g, d, Some(n), None, cfg).and_then(|p| Ok(build_report(&p, None, opts)?));
            Ok(match report {
                Ok(r) => serde_json::to_string(&r)?,
                Err(e) => serde_json::to_string(&GridError {
                    g,
                    d,
                    n,
                    error: e.to_string(),
                })?,
            })
        })
        .collect();
    let mut out = String::new();
    for line in lines {
        out.push_str(&line?);
        out.push('\n');
    }
    Ok(out)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => emit(text),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = Config::load(cli.config.as_deref(), cli.allow_conjectural_t)?;
    match &cli.command {
        Command::Cone { curve, format } => {
            let report = curve.report(&cfg)?;
            let text = match format.or(cfg.format) {
                None | Some(Format::Json) => serde_json::to_string_pretty(&report)? + "\n",
                Some(Format::Table) => table::report(&report),
                Some(f) => return Err(CliError::Usage(format!("cone does not support --format {f:?}"))),
            };
            emit(&text)?;
            Ok(if report.has_hypothesis_flag() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Check { curve, class, basis } => {
            emit(&(cmd_check(curve, class, *basis, &cfg)? + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { curve, format, out } => {
            if curve.g == 0 || curve.splitting.is_some() {
                return Err(CliError::Usage("no picture in genus 0".into()));
            }
            let report = curve.report(&cfg)?;
            let scene = render::Scene::from_report(&report)?;
            let format = match format {
                Some(f) => *f,
                None => match cfg.format {
                    Some(f @ (Format::Svg | Format::Tikz | Format::Table)) => f,
                    _ => Format::Svg,
                },
            };
            let text = match format {
                Format::Svg => render::svg(&scene),
                Format::Tikz => render::tikz(&scene),
                Format::Table => render::table(&scene),
                Format::Json => return Err(CliError::Usage("render does not support --format json".into())),
            };
            write_out(&text, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid { g, d, n } => {
            emit(&cmd_grid(&g.0, &d.0, &n.0, &cfg)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quotnef::rat;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap().0, vec![1, 2, 3, 4]);
        assert_eq!(parse_range("2..=3").unwrap().0, vec![2, 3]);
        assert_eq!(parse_range("3").unwrap().0, vec![3]);
        assert_eq!(parse_range("1,5").unwrap().0, vec![1, 5]);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("a").is_err());
    }

    #[test]
    fn classes() {
        let (a, c) = parse_class("1/2; 3,-1").unwrap();
        assert_eq!(a, rat(1, 2));
        assert_eq!(c, vec![Rat::int(3), Rat::int(-1)]);
        assert!(parse_class("1,2").is_err());
        assert!(parse_class("1;x").is_err());
    }

    #[test]
    fn cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
