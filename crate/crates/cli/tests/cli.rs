use std::process::{Command, Output};

use quotnef::cones::Cone;
use quotnef::quot::Report;
use quotnef::{rat, Rat, RatVec};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quotnef"));
    cmd.args(args).env_remove("QUOTNEF_CONFIG").env_remove("QUOTNEF_ALLOW_CONJECTURAL_T");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Report {
    serde_json::from_slice(&o.stdout).expect("report json")
}

fn cone(gens: &[Vec<Rat>]) -> Cone {
    let gens: Vec<RatVec> = gens.iter().cloned().map(RatVec::new).collect();
    Cone::from_generators(gens[0].dim(), &gens).unwrap()
}

#[test]
fn cone_length_two_genus_two() {
    let o = run(&["cone", "--g", "2", "--d", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    // L0 = 4x - theta, alpha_2 = 3x - (3x - theta) = theta.
    let l0 = vec![Rat::zero(), Rat::int(4), Rat::int(-1)];
    let a = vec![Rat::one(), Rat::int(3), rat(-3, 4)];
    let alpha = vec![Rat::zero(), Rat::zero(), Rat::one()];
    assert_eq!(r.exact.unwrap(), cone(&[a, l0, alpha]));
    assert_eq!(r.theorem.as_deref(), Some("length-2-very-general"));
}

#[test]
fn cone_genus_zero_splitting() {
    let o = run(&["cone", "--g", "0", "--splitting", "-1,2", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    let expected = cone(&[vec![Rat::one(), Rat::int(3)], vec![Rat::zero(), Rat::one()]]);
    assert_eq!(r.exact.unwrap(), expected);
    assert_eq!(r.params.splitting, Some(vec![-1, 2]));
}

#[test]
fn cone_unknown_t_exits_two() {
    let o = run(&["cone", "--g", "7", "--d", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["exact"].is_null());
    let flags: Vec<&str> = v["flags"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert!(flags.contains(&"t-unknown"));
}

#[test]
fn report_json_round_trips() {
    for args in [
        &["cone", "--g", "3", "--d", "5", "--n", "2"][..],
        &["cone", "--g", "1", "--d", "1", "--n", "1"][..],
        &["cone", "--g", "0", "--splitting", "1,1,4", "--d", "2"][..],
    ] {
        let o = run(args);
        let text = stdout(&o);
        let r: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
    }
}

#[test]
fn table_format() {
    let o = run(&["cone", "--g", "3", "--d", "3", "--n", "3", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.contains("theorem: length-3-low-genus"));
    assert!(t.contains("flags:"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["cone", "--g", "x", "--d", "2", "--n", "2"][..],
        &["cone", "--d", "2"][..],
        &["cone", "--g", "2", "--d", "2", "--splitting", "1,2"][..],
        &["cone", "--g", "2", "--d", "0", "--n", "2"][..],
        &["check", "--g", "2", "--d", "2", "--n", "2", "--class", "1,2,3"][..],
        &["check", "--g", "2", "--d", "2", "--n", "2", "--class", "1;2"][..],
        &["frobnicate"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

fn check(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_examples() {
    // kappa_2 = O(1) + (2/3)(12x - theta) at g = 3, d = 4.
    let v = check(&["check", "--g", "3", "--d", "4", "--n", "2", "--class", "1;8,-2/3"]);
    assert_eq!(v["verdict"], "nef");
    assert_eq!(v["certificate"]["kind"], "cone-membership");

    let v = check(&["check", "--g", "2", "--d", "4", "--n", "4", "--class", "1;3,0"]);
    assert_eq!(v["verdict"], "not-nef");
    assert_eq!(v["certificate"]["partition"], serde_json::json!([4]));

    let v = check(&["check", "--g", "2", "--d", "4", "--n", "4", "--class", "0;0,1"]);
    assert_eq!(v["verdict"], "nef");
    assert_eq!(v["certificate"]["source"], "lower-bound");
}

#[test]
fn check_other_basis() {
    let a = check(&["check", "--g", "3", "--d", "4", "--n", "2", "--class", "1;8,-2/3"]);
    let b = check(&["check", "--g", "3", "--d", "4", "--n", "2", "--class", "1;0,2/3", "--basis", "THETA_L0"]);
    assert_eq!(a, b);
}

#[test]
fn check_genus_zero() {
    let v = check(&["check", "--g", "0", "--splitting", "-1,2", "--d", "3", "--class", "1;3"]);
    assert_eq!(v["verdict"], "nef");
    let v = check(&["check", "--g", "0", "--splitting", "-1,2", "--d", "3", "--class", "1;2"]);
    assert_eq!(v["verdict"], "not-nef");
    assert_eq!(v["certificate"]["verdict"], "outside");
}

fn render(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out");
    let mut full = vec!["render"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read_to_string(path).unwrap()
}

fn circle(svg: &str, label: &str) -> String {
    let needle = format!(">{label}</text>");
    let line = svg.lines().find(|l| l.ends_with(&needle)).unwrap();
    let x = line.split('"').nth(1).unwrap();
    let y = line.split('"').nth(3).unwrap();
    format!("{x},{y}")
}

#[test]
fn render_is_deterministic() {
    for fmt in ["svg", "tikz", "table"] {
        let args = ["--g", "2", "--d", "5", "--n", "5", "--format", fmt];
        assert_eq!(render(&args), render(&args));
    }
    let svg = render(&["--g", "2", "--d", "5", "--n", "5"]);
    assert!(svg.contains("viewBox=\"0 0 600 600\""));
    assert!(svg.contains(concat!("quotnef ", env!("CARGO_PKG_VERSION"))));
}

#[test]
fn render_points() {
    let svg = render(&["--g", "2", "--d", "2", "--n", "2"]);
    assert_eq!(circle(&svg, "E"), circle(&svg, "A"));
    assert_eq!(circle(&svg, "A"), "300.000000,60.000000");

    let svg = render(&["--g", "2", "--d", "5", "--n", "5"]);
    let pts: Vec<String> = ["A", "D", "E"].iter().map(|l| circle(&svg, l)).collect();
    assert!(pts[0] != pts[1] && pts[1] != pts[2] && pts[0] != pts[2]);
    // D = (2/3)A + (1/3)B.
    assert_eq!(pts[1], "220.000000,220.000000");
    assert!(svg.contains("D = (2/3, 1/3, 0)"));
    assert!(svg.contains("tau = 2/3"));
}

#[test]
fn render_genus_one_table() {
    let t = render(&["--g", "1", "--d", "3", "--n", "3", "--format", "table"]);
    assert!(t.contains("Δ_d/2 = L₀"));
}

#[test]
fn render_errors() {
    let o = run(&["render", "--g", "2", "--d", "2", "--n", "2", "--out", "/nonexistent/dir/x.svg"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["render", "--g", "2", "--d", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["render", "--g", "0", "--splitting", "1,2", "--d", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn grid_lines_are_ordered_reports() {
    let o = run(&["grid", "--g", "1..3", "--d", "1..3", "--n", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 18);
    let mut i = 0;
    for g in 1..=3 {
        for d in 1..=3 {
            for n in [1, 3] {
                let r: Report = serde_json::from_str(lines[i]).unwrap();
                assert_eq!((r.params.g, r.params.d, r.params.n), (g, d, Some(n)));
                let single = report(&run(&["cone", "--g", &g.to_string(), "--d", &d.to_string(), "--n", &n.to_string()]));
                assert_eq!(r, single);
                i += 1;
            }
        }
    }
}

const CONFIG: &str = r#"
allow_conjectural_t = true
format = "table"

[t_overrides.5]
value = "9/4"
provenance = "conjectural"
"#;

fn exact_present(o: &Output) -> bool {
    report(o).exact.is_some()
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quotnef.toml");
    std::fs::write(&path, CONFIG).unwrap();
    let p = path.to_str().unwrap();
    let base = ["cone", "--g", "5", "--d", "2", "--n", "2", "--format", "json"];

    // Built-in: t for genus 5 is unknown.
    let o = run(&base);
    assert_eq!(o.status.code(), Some(2));
    assert!(!exact_present(&o));

    // File supplies t and the opt-in.
    let mut args = base.to_vec();
    args.extend_from_slice(&["--config", p]);
    let o = run(&args);
    // d = 2 is below the gonality, so the missing upper bound still exits 2.
    assert_eq!(o.status.code(), Some(2));
    let r = report(&o);
    assert!(r.exact.is_some());
    assert!(r.flags.iter().all(|f| f.name() != "conjectural-t-refused"));
    assert!(r.flags.iter().any(|f| f.name() == "conjectural-t"));

    // The same file through the environment.
    let o = run_env(&base, &[("QUOTNEF_CONFIG", p)]);
    assert!(exact_present(&o));

    // Environment beats the file.
    let o = run_env(&base, &[("QUOTNEF_CONFIG", p), ("QUOTNEF_ALLOW_CONJECTURAL_T", "0")]);
    assert!(report(&o).flags.iter().any(|f| f.name() == "conjectural-t-refused"));

    // The flag beats the environment.
    let mut args = base.to_vec();
    args.push("--allow-conjectural-t");
    let o = run_env(&args, &[("QUOTNEF_CONFIG", p), ("QUOTNEF_ALLOW_CONJECTURAL_T", "0")]);
    assert!(exact_present(&o));

    // The file's default format applies when no flag is given.
    let o = run(&["cone", "--g", "2", "--d", "2", "--n", "2", "--config", p]);
    assert!(stdout(&o).starts_with("g = 2"));

    // --t on the command line replaces the file's value.
    let mut args = base.to_vec();
    args.extend_from_slice(&["--config", p, "--t", "2", "--t-provenance", "known"]);
    let r = report(&run(&args));
    assert!(r.flags.iter().all(|f| f.name() != "conjectural-t"));
}

#[test]
fn bad_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "[t_overrides.5]\nvalue = \"9/4\"\n").unwrap();
    let o = run(&["cone", "--g", "5", "--d", "2", "--n", "2", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["cone", "--g", "2", "--d", "2", "--n", "2", "--config", "/nonexistent.toml"]);
    assert_eq!(o.status.code(), Some(1));
}
