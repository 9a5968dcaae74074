//! Plain-text form of a [`Report`].

use std::fmt::Write as _;

use quotnef::cones::Cone;
use quotnef::quot::{BoundaryKind, NefProof, Report};
use quotnef::symprod::TStatus;
use quotnef::RatVec;

fn list(vs: &[RatVec]) -> String {
    if vs.is_empty() {
        return "none".into();
    }
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn cone(s: &mut String, name: &str, c: &Option<Cone>) {
    match c {
        None => writeln!(s, "{name}: none").unwrap(),
        Some(c) => {
            writeln!(s, "{name}:").unwrap();
            writeln!(s, "  generators  {}", list(c.generators())).unwrap();
            writeln!(s, "  facets      {}", list(c.facets())).unwrap();
            if !c.lineality().is_empty() {
                writeln!(s, "  lineality   {}", list(c.lineality())).unwrap();
            }
        }
    }
}

pub fn report(r: &Report) -> String {
    let p = &r.params;
    let mut s = String::new();
    write!(s, "g = {}, d = {}", p.g, p.d).unwrap();
    if let Some(n) = p.n {
        write!(s, ", n = {n}").unwrap();
    }
    if let Some(split) = &p.splitting {
        let parts: Vec<String> = split.iter().map(|a| a.to_string()).collect();
        write!(s, ", E = O({})", parts.join(") + O(")).unwrap();
    }
    writeln!(s, "  (gonality {}{})", p.gonality, if p.very_general { ", very general" } else { "" }).unwrap();
    writeln!(s, "coordinates: {}", r.coordinates.join(", ")).unwrap();
    if let Some(t) = &p.t {
        let t = match t {
            TStatus::Known(v) => format!("{v} (known)"),
            TStatus::Conjectural(v) => format!("{v} (conjectural)"),
            TStatus::UserSupplied(v) => format!("{v} (user-supplied)"),
            TStatus::ConjecturalIrrational => "irrational (conjectural)".into(),
            TStatus::Unknown => "unknown".into(),
        };
        writeln!(s, "t: {t}").unwrap();
    }
    writeln!(s, "theorem: {}", r.theorem.as_deref().unwrap_or("none")).unwrap();
    cone(&mut s, "exact", &r.exact);
    cone(&mut s, "upper", &r.upper);
    cone(&mut s, "lower", &r.lower);
    if !r.boundary.is_empty() {
        s.push_str("boundary:\n");
        for b in &r.boundary {
            let kind = match b.kind {
                BoundaryKind::GonalSection => "gonal-section",
                BoundaryKind::TildeDelta => "tilde-delta",
                BoundaryKind::EvenGenus => "even-genus",
            };
            let proof = match &b.nef_proof {
                NefProof::LowerBound { .. } => "lower bound".to_string(),
                NefProof::Theorem { citation } => citation.clone(),
            };
            write!(s, "  {kind:<14}{}  on {}", b.class, b.curve.symbol()).unwrap();
            if let Some(deg) = &b.degree {
                write!(s, "  deg L = {deg}").unwrap();
            }
            writeln!(s, "  nef by {proof}").unwrap();
        }
    }
    if let Some(pic) = &r.picture {
        writeln!(s, "picture: tau = {}, rho = {}", pic.tau, pic.rho).unwrap();
    }
    if r.flags.is_empty() {
        s.push_str("flags: none\n");
    } else {
        s.push_str("flags:\n");
        for f in &r.flags {
            writeln!(s, "  {:<27}{}", f.name(), f.description()).unwrap();
        }
    }
    s
}
