use serde::{Deserialize, Serialize};

use super::bounds::lower_bound_cone;
use super::{require_quot, DivClassQuot, QuotCurve};
use crate::cones::Witness;
use crate::error::Error;
use crate::exactmath::{Rat, RatVec};
use crate::symprod::{CurveParams, SymCurveKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryKind {
    /// `B_L` with `deg L = d+g−1`, killed by `η_*l′`.
    GonalSection,
    /// `κ₂`, killed by `δ̃`.
    TildeDelta,
    /// `B_L` with `deg L = 3(k−1)` for `g = 2k`, `d = k`.
    EvenGenus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "kebab-case")]
pub enum NefProof {
    /// Coefficients over the generators of the lower-bound cone.
    LowerBound { coefficients: Vec<Rat> },
    Theorem { citation: String },
}

/// A nef class together with a curve it annihilates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCert {
    pub kind: BoundaryKind,
    pub class: RatVec,
    /// `deg L` when the class is a `B_L`.
    pub degree: Option<Rat>,
    pub curve: QuotCurve,
    pub pairing: Rat,
    pub nef_proof: NefProof,
}

impl BoundaryCert {
    /// Recomputes the pairing and, for lower-bound proofs, the combination.
    pub fn verify(&self, params: &CurveParams) -> bool {
        let Ok(functional) = self.curve.pairing(params) else {
            return false;
        };
        if functional.dim() != self.class.dim() || !functional.dot(&self.class).is_zero() || !self.pairing.is_zero() {
            return false;
        }
        match &self.nef_proof {
            NefProof::LowerBound { coefficients } => {
                let Ok(lower) = lower_bound_cone(params) else {
                    return false;
                };
                if coefficients.len() != lower.generators().len() || coefficients.iter().any(Rat::is_negative) {
                    return false;
                }
                let mut sum = RatVec::zeros(self.class.dim());
                for (c, g) in coefficients.iter().zip(lower.generators()) {
                    sum = &sum + &g.scale(c);
                }
                sum == self.class
            }
            NefProof::Theorem { .. } => self.kind == BoundaryKind::EvenGenus && even_genus_degree(params).is_some(),
        }
    }
}

/// `3(k−1)` when `g = 2k` and `d = k`.
pub fn even_genus_degree(params: &CurveParams) -> Option<Rat> {
    let g = params.g;
    (g >= 2 && g.is_multiple_of(2) && params.d == g / 2).then(|| Rat::from(3 * (g / 2 - 1)))
}

fn lower_proof(params: &CurveParams, class: &RatVec) -> Result<NefProof, Error> {
    let lower = lower_bound_cone(params)?;
    match lower.membership(class)?.witness {
        Witness::Combination(coefficients) => Ok(NefProof::LowerBound { coefficients }),
        Witness::Separating(_) => unreachable!("boundary classes lie in the lower bound"),
    }
}

pub fn boundary_certificates(params: &CurveParams) -> Result<Vec<BoundaryCert>, Error> {
    let n = require_quot(params)?;
    let (g, d) = (params.g, params.d);
    let mut out = Vec::new();
    let mut push = |kind, class: DivClassQuot, degree, curve: QuotCurve, proof: Option<NefProof>| -> Result<(), Error> {
        let pairing = class.pair(curve)?;
        let canonical = class.canonical();
        let nef_proof = match proof {
            Some(p) => p,
            None => lower_proof(params, &canonical)?,
        };
        out.push(BoundaryCert {
            kind,
            class: canonical,
            degree,
            curve,
            pairing,
            nef_proof,
        });
        Ok(())
    };
    if d >= params.gonality() {
        let deg = Rat::from(d + g - 1);
        let class = DivClassQuot::b_class(params, &deg)?;
        push(BoundaryKind::GonalSection, class, Some(deg), QuotCurve::SECTION_GONAL, None)?;
    }
    if n >= d {
        let class = DivClassQuot::kappa2(params)?;
        push(BoundaryKind::TildeDelta, class, None, QuotCurve::TildeDelta, None)?;
    }
    if let Some(deg) = even_genus_degree(params) {
        let class = DivClassQuot::b_class(params, &deg)?;
        let proof = NefProof::Theorem {
            citation: "even-genus-half-degree".into(),
        };
        push(
            BoundaryKind::EvenGenus,
            class,
            Some(deg),
            QuotCurve::Section(SymCurveKind::EvenGenusExtremal),
            Some(proof),
        )?;
    }
    Ok(out)
}
