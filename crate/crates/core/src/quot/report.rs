//! One JSON-serializable summary per `(g, d, n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::boundary::{boundary_certificates, BoundaryCert};
use super::bounds::{exact_status, genus0_cone, lower_bound_cone, upper_bound_cone, ExactOptions, ExactStatus, Theorem};
use super::picture::{picture_points, Picture};
use crate::cones::Cone;
use crate::error::Error;
use crate::symprod::{CurveParams, TStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    NoUpperBound,
    TUnknown,
    ConjecturalTRefused,
    TIrrational,
    RowHypothesesUnsatisfied,
    NoExactRow,
    WeakUpperNoTildeDelta,
    RankOneIdentification,
    ConjecturalT,
    TauRhoDiscrepancy,
    PictureUnavailable,
}

impl Flag {
    /// Flags that mean a requested result could not be established under
    /// the stated hypotheses.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Flag::NoUpperBound
                | Flag::TUnknown
                | Flag::ConjecturalTRefused
                | Flag::TIrrational
                | Flag::RowHypothesesUnsatisfied
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Flag::NoUpperBound => "no-upper-bound",
            Flag::TUnknown => "t-unknown",
            Flag::ConjecturalTRefused => "conjectural-t-refused",
            Flag::TIrrational => "t-irrational",
            Flag::RowHypothesesUnsatisfied => "row-hypotheses-unsatisfied",
            Flag::NoExactRow => "no-exact-row",
            Flag::WeakUpperNoTildeDelta => "weak-upper-no-tilde-delta",
            Flag::RankOneIdentification => "rank-one-identification",
            Flag::ConjecturalT => "conjectural-t",
            Flag::TauRhoDiscrepancy => "tau-rho-discrepancy",
            Flag::PictureUnavailable => "picture-unavailable",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Flag::NoUpperBound => "no upper bound: needs g >= 1 and d >= gonality",
            Flag::TUnknown => "d = 2 but no value of t is known for this genus",
            Flag::ConjecturalTRefused => "d = 2 row needs a conjectural t; pass --allow-conjectural-t",
            Flag::TIrrational => "conjectural t = sqrt(g) is irrational; no exact rational cone",
            Flag::RowHypothesesUnsatisfied => "a theorem row matches (g, d) but its other hypotheses fail",
            Flag::NoExactRow => "no theorem computes this cone exactly",
            Flag::WeakUpperNoTildeDelta => "n < d: upper bound uses the section of the small diagonal",
            Flag::RankOneIdentification => "n = 1: O(1) + Delta/2 is numerically trivial",
            Flag::ConjecturalT => "exact cone uses a conjectural or user-supplied t",
            Flag::TauRhoDiscrepancy => "printed rho differs from the recomputed normalisation of kappa_2",
            Flag::PictureUnavailable => "cross-section picture needs g >= 1 and d >= 2",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub g: u32,
    pub d: u32,
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<i64>>,
    pub very_general: bool,
    pub gonality: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<TStatus>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub params: ReportParams,
    /// Names of the coordinate axes of every vector in the report.
    pub coordinates: Vec<String>,
    pub upper: Option<Cone>,
    pub lower: Option<Cone>,
    pub exact: Option<Cone>,
    pub theorem: Option<String>,
    pub boundary: Vec<BoundaryCert>,
    pub picture: Option<Picture>,
    pub flags: Vec<Flag>,
}

impl Report {
    pub fn has_hypothesis_flag(&self) -> bool {
        self.flags.iter().any(Flag::is_hypothesis)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub allow_conjectural_t: bool,
}

fn coordinate_names(d: u32) -> Vec<String> {
    let mut v = vec!["O_Q(1)".to_string(), "x".to_string()];
    if d >= 2 {
        v.push("theta_d".to_string());
    }
    v
}

/// Genus-0 report for `E = ⊕ O(a_i)` on `P¹`.
fn genus0_report(params: &CurveParams, splitting: &[i64]) -> Result<Report, Error> {
    let cone = genus0_cone(splitting, params.d)?;
    Ok(Report {
        params: ReportParams {
            g: 0,
            d: params.d,
            n: Some(splitting.len() as u32),
            splitting: Some(splitting.to_vec()),
            very_general: params.very_general,
            gonality: 1,
            t: None,
        },
        coordinates: vec!["O_Q(1)".into(), "H".into()],
        upper: Some(cone.clone()),
        lower: Some(cone.clone()),
        exact: Some(cone),
        theorem: Some(Theorem::Genus0Split.citation().into()),
        boundary: Vec::new(),
        picture: None,
        flags: vec![Flag::PictureUnavailable],
    })
}

/// Assembles the report.
///
/// For `g = 0` a missing `splitting` means the trivial bundle of rank `n`.
/// A splitting with `g > 0` is rejected.
pub fn build_report(params: &CurveParams, splitting: Option<&[i64]>, opts: ReportOptions) -> Result<Report, Error> {
    if params.g == 0 {
        let owned;
        let split = match splitting {
            Some(s) => s,
            None => {
                let n = params
                    .n
                    .ok_or_else(|| Error::InvalidParams("genus 0 needs n or a splitting type".into()))?;
                owned = vec![0; n as usize];
                &owned
            }
        };
        return genus0_report(params, split);
    }
    if splitting.is_some() {
        return Err(Error::InvalidParams("a splitting type requires g = 0".into()));
    }
    let n = params
        .n
        .ok_or_else(|| Error::InvalidParams("the rank n is required".into()))?;
    let mut flags = Vec::new();

    let upper = match upper_bound_cone(params) {
        Ok(u) => {
            if u.weak {
                flags.push(Flag::WeakUpperNoTildeDelta);
            }
            Some(u.cone)
        }
        Err(Error::NoUpperBound(_)) => {
            flags.push(Flag::NoUpperBound);
            None
        }
        Err(e) => return Err(e),
    };
    let lower = lower_bound_cone(params)?;

    let exact_opts = ExactOptions {
        allow_conjectural_t: opts.allow_conjectural_t,
    };
    let (exact, theorem) = match exact_status(params, exact_opts)? {
        ExactStatus::Found(e) => {
            if e.conditional {
                flags.push(Flag::ConjecturalT);
            }
            (Some(e.cone), Some(e.theorem.citation().to_string()))
        }
        other => {
            flags.push(match other {
                ExactStatus::NoRow => Flag::NoExactRow,
                ExactStatus::HypothesesUnsatisfied(_) => Flag::RowHypothesesUnsatisfied,
                ExactStatus::TUnknown => Flag::TUnknown,
                ExactStatus::TIrrational => Flag::TIrrational,
                ExactStatus::ConjecturalTRefused => Flag::ConjecturalTRefused,
                ExactStatus::Found(_) => unreachable!(),
            });
            (None, None)
        }
    };
    if n == 1 {
        flags.push(Flag::RankOneIdentification);
    }
    let picture = if params.d >= 2 {
        let p = picture_points(params)?;
        if p.rho_discrepancy {
            flags.push(Flag::TauRhoDiscrepancy);
        }
        Some(p)
    } else {
        flags.push(Flag::PictureUnavailable);
        None
    };
    flags.sort();

    Ok(Report {
        params: ReportParams {
            g: params.g,
            d: params.d,
            n: Some(n),
            splitting: None,
            very_general: params.very_general,
            gonality: params.gonality(),
            t: (params.d == 2).then(|| params.t_status()),
        },
        coordinates: coordinate_names(params.d),
        upper,
        lower: Some(lower),
        exact,
        theorem,
        boundary: boundary_certificates(params)?,
        picture,
        flags,
    })
}
