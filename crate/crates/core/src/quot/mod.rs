//! `N¹` of the Quot scheme `Q(n,d)` of torsion quotients of `O_C^n` of
//! length `d`, on a curve of genus `g ≥ 1`.
//!
//! Canonical coordinates are `(a; b_x, b_θ)` for `a·[O_Q(1)] + b_x·[x] +
//! b_θ·[θ_d]`, or `(a; b_x)` when `d = 1`. Genus 0 with a split bundle has
//! its own two-dimensional model in [`bounds::genus0_cone`].

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactmath::{Rat, RatVec};
use crate::symprod::{CurveParams, DivClassSym, SymCurveClass, SymCurveKind};

pub mod boundary;
pub mod bounds;
pub mod criterion;
pub mod partitions;
pub mod picture;
pub mod report;

pub use boundary::{boundary_certificates, even_genus_degree, BoundaryCert, BoundaryKind, NefProof};
pub use bounds::{
    exact_cone, exact_status, genus0_cone, lower_bound_cone, upper_bound_cone, ExactCone,
    ExactOptions, ExactStatus, Theorem, UpperBound,
};
pub use criterion::{
    check_nef_necessary, check_nef_sufficient, classify, classify_genus0, CertSource, NefCertificate, NefVerdict,
    Verdict,
};
pub use partitions::{partitions_leq, Partition};
pub use picture::{picture_points, Picture, PicturePoint};
pub use report::{build_report, Flag, Report, ReportOptions};

/// Dimension of the canonical coordinate space of `N¹(Q(n,d))`.
pub fn quot_dim(params: &CurveParams) -> usize {
    params.sym_dim() + 1
}

pub(crate) fn require_quot(params: &CurveParams) -> Result<u32, Error> {
    if params.g == 0 {
        return Err(Error::InvalidParams(
            "genus 0 uses the split-bundle model (genus0_cone)".into(),
        ));
    }
    params
        .n
        .ok_or_else(|| Error::InvalidParams("the rank n is required".into()))
}

/// For `n = 1`, `Q = C^(d)` and `[O_Q(1)] + [Δ_d/2]` is numerically zero.
/// Returns that class in canonical coordinates.
pub fn rank_one_kernel(params: &CurveParams) -> RatVec {
    let hd = DivClassSym::half_delta(params).expect("g >= 1").canonical();
    RatVec::new(vec![Rat::one()]).concat(&hd)
}

/// A numerical divisor class `a·[O_Q(1)] + Φ*β`.
#[derive(Clone, Debug)]
pub struct DivClassQuot {
    params: CurveParams,
    a: Rat,
    beta: DivClassSym,
}

impl DivClassQuot {
    pub fn new(a: Rat, beta: DivClassSym) -> Result<Self, Error> {
        let params = beta.params().clone();
        require_quot(&params)?;
        Ok(DivClassQuot { params, a, beta })
    }

    pub fn from_sym(beta: DivClassSym) -> Result<Self, Error> {
        Self::new(Rat::zero(), beta)
    }

    pub fn from_canonical(params: &CurveParams, coords: &RatVec) -> Result<Self, Error> {
        require_quot(params)?;
        let dim = quot_dim(params);
        if coords.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.dim(),
            });
        }
        let beta = DivClassSym::from_canonical(params, coords.entries()[1..].iter().cloned().collect())?;
        Self::new(coords[0].clone(), beta)
    }

    pub fn o1(params: &CurveParams) -> Result<Self, Error> {
        Self::b_class(params, &Rat::zero())
    }

    /// `[B_L] = [O_Q(1)] + deg(L)·[x]`.
    pub fn b_class(params: &CurveParams, deg: &Rat) -> Result<Self, Error> {
        require_quot(params)?;
        Self::new(Rat::one(), DivClassSym::x(params)?.scale(deg))
    }

    /// `κ₁ = [O_Q(1)] + μ₀[L₀] + (d+g−2)/(dg)·[θ_d]`.
    pub fn kappa1(params: &CurveParams) -> Result<Self, Error> {
        require_quot(params)?;
        let (g, d) = (params.g, params.d);
        let s = Rat::from(d + g - 2) / Rat::from(d * g);
        let beta = &DivClassSym::l0(params)?.scale(&params.mu0(d)) + &DivClassSym::theta(params)?.scale(&s);
        Self::new(Rat::one(), beta)
    }

    /// `κ₂ = [O_Q(1)] + (g+1)/(2g)·[L₀]`.
    pub fn kappa2(params: &CurveParams) -> Result<Self, Error> {
        require_quot(params)?;
        Self::new(Rat::one(), DivClassSym::l0(params)?.scale(&params.mu0(2)))
    }

    /// `[O_Q(1)] + c·[L₀]`.
    pub fn o1_plus_l0(params: &CurveParams, c: &Rat) -> Result<Self, Error> {
        require_quot(params)?;
        Self::new(Rat::one(), DivClassSym::l0(params)?.scale(c))
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn beta(&self) -> &DivClassSym {
        &self.beta
    }

    pub fn canonical(&self) -> RatVec {
        RatVec::new(vec![self.a.clone()]).concat(&self.beta.canonical())
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        DivClassQuot {
            params: self.params.clone(),
            a: &self.a * factor,
            beta: self.beta.scale(factor),
        }
    }

    /// `η*` of the class along the section for the trivial partition:
    /// `−a·[Δ_d/2] + β` on `C^(d)`.
    pub fn eta_pullback(&self) -> DivClassSym {
        let hd = DivClassSym::half_delta(&self.params).expect("g >= 1");
        &self.beta + &hd.scale(&-&self.a)
    }

    pub fn pair(&self, curve: QuotCurve) -> Result<Rat, Error> {
        Ok(self.canonical().dot(&curve.pairing(&self.params)?))
    }
}

impl Add<&DivClassQuot> for &DivClassQuot {
    type Output = DivClassQuot;
    fn add(self, rhs: &DivClassQuot) -> DivClassQuot {
        DivClassQuot {
            params: self.params.clone(),
            a: &self.a + &rhs.a,
            beta: &self.beta + &rhs.beta,
        }
    }
}

impl fmt::Display for DivClassQuot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·[O(1)] + {}", self.a, self.beta)
    }
}

/// Test curves on `Q(n,d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotCurve {
    /// `l`: a line in a fibre of the Hilbert–Chow map.
    FiberLine,
    /// `η_*γ` for a curve `γ` on `C^(d)`.
    Section(SymCurveKind),
    /// `δ̃`: the small diagonal lifted through a fixed surjection `k^n → k^d`.
    TildeDelta,
}

impl QuotCurve {
    pub const SECTION_GONAL: QuotCurve = QuotCurve::Section(SymCurveKind::GonalLine);
    pub const SECTION_SMALL_DIAG: QuotCurve = QuotCurve::Section(SymCurveKind::SmallDiagonal);

    pub fn symbol(&self) -> String {
        match self {
            QuotCurve::FiberLine => "l".into(),
            QuotCurve::Section(k) => format!("η_*{}", k.symbol()),
            QuotCurve::TildeDelta => "δ̃".into(),
        }
    }

    /// Pairing functional in canonical coordinates.
    pub fn pairing(&self, params: &CurveParams) -> Result<RatVec, Error> {
        let n = require_quot(params)?;
        let invalid = |reason: String| Error::InvalidCurve {
            curve: self.symbol(),
            reason,
        };
        let sd = params.sym_dim();
        match self {
            QuotCurve::FiberLine => {
                if n < 2 {
                    return Err(invalid("needs n >= 2".into()));
                }
                Ok(RatVec::unit(sd + 1, 0))
            }
            QuotCurve::Section(kind) => {
                let gamma = SymCurveClass::new(params, *kind)?.pairing;
                let hd = DivClassSym::half_delta(params)?.canonical();
                Ok(RatVec::new(vec![-hd.dot(&gamma)]).concat(&gamma))
            }
            QuotCurve::TildeDelta => {
                if n < params.d {
                    return Err(invalid(format!("needs n >= d (n = {n}, d = {})", params.d)));
                }
                let delta = SymCurveClass::new(params, SymCurveKind::SmallDiagonal)?.pairing;
                Ok(RatVec::new(vec![Rat::zero()]).concat(&delta))
            }
        }
    }
}

impl fmt::Display for QuotCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}
