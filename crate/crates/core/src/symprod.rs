//! Divisor classes and test curves on the symmetric product `C^(d)` of a
//! smooth projective curve of genus `g ≥ 1`.
//!
//! Classes are stored in any of the supported bases but always compared in
//! the canonical basis `{[x], [θ_d]}`. For `d = 1` the Néron–Severi space is
//! the degree line: `θ₁ ≡ g·[x]`, `Δ₁/2 = 0` and `L₀ = 0`.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cones::Cone;
use crate::error::Error;
use crate::exactmath::{Rat, RatMat, RatVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TProvenance {
    Known,
    Conjectural,
    UserSupplied,
}

impl FromStr for TProvenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "known" => Ok(TProvenance::Known),
            "conjectural" => Ok(TProvenance::Conjectural),
            "user-supplied" | "user" => Ok(TProvenance::UserSupplied),
            other => Err(Error::Parse(format!("unknown t provenance {other:?}"))),
        }
    }
}

impl fmt::Display for TProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TProvenance::Known => "known",
            TProvenance::Conjectural => "conjectural",
            TProvenance::UserSupplied => "user-supplied",
        })
    }
}

/// A rational value of `t` with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TValue {
    pub value: Rat,
    pub provenance: TProvenance,
}

/// What is known about `t` for a given genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum TStatus {
    Known(Rat),
    Conjectural(Rat),
    UserSupplied(Rat),
    /// Conjecturally `√g` with `g` not a square, so not representable.
    ConjecturalIrrational,
    Unknown,
}

impl TStatus {
    pub fn rational(&self) -> Option<&Rat> {
        match self {
            TStatus::Known(t) | TStatus::Conjectural(t) | TStatus::UserSupplied(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_known(&self) -> bool {
        matches!(self, TStatus::Known(_))
    }
}

/// Built-in values of `t` for a very general curve of genus `g`.
pub fn t_table(g: u32) -> TStatus {
    match g {
        0 => TStatus::Unknown,
        1 => TStatus::Known(Rat::one()),
        2 => TStatus::Known(Rat::int(2)),
        3 => TStatus::Known(Rat::new(9, 5)),
        _ => match Rat::from(g).sqrt_exact() {
            Some(root) => TStatus::Known(root),
            None if g >= 9 => TStatus::ConjecturalIrrational,
            None => TStatus::Unknown,
        },
    }
}

/// Curve and Quot-scheme parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveParams {
    pub g: u32,
    pub d: u32,
    pub n: Option<u32>,
    pub very_general: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<TValue>,
}

impl CurveParams {
    pub fn new(g: u32, d: u32, n: Option<u32>) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::InvalidParams("d must be at least 1".into()));
        }
        if n == Some(0) {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        Ok(CurveParams {
            g,
            d,
            n,
            very_general: g >= 2,
            t: None,
        })
    }

    /// Parameters of `Q(n, d)` over a genus `g` curve.
    pub fn quot(g: u32, n: u32, d: u32) -> Result<Self, Error> {
        Self::new(g, d, Some(n))
    }

    pub fn sym(g: u32, d: u32) -> Result<Self, Error> {
        Self::new(g, d, None)
    }

    pub fn with_very_general(mut self, very_general: bool) -> Result<Self, Error> {
        if self.g >= 2 && !very_general {
            return Err(Error::InvalidParams(
                "genus at least 2 requires a very general curve".into(),
            ));
        }
        self.very_general = very_general;
        Ok(self)
    }

    /// Overrides the built-in value of `t`.
    pub fn with_t(mut self, value: Rat, provenance: TProvenance) -> Result<Self, Error> {
        if !value.is_positive() {
            return Err(Error::InvalidParams("t must be positive".into()));
        }
        self.t = Some(TValue { value, provenance });
        Ok(self)
    }

    /// Same curve, symmetric product of a different order.
    pub fn with_d(&self, d: u32) -> Self {
        CurveParams {
            d,
            ..self.clone()
        }
    }

    pub fn gonality(&self) -> u32 {
        match self.g {
            0 => 1,
            1 => 2,
            g => (g + 3) / 2,
        }
    }

    /// `μ₀^(m) = (m+g−1)/(mg)`.
    ///
    /// Panics when `g = 0` or `m = 0`.
    pub fn mu0(&self, m: u32) -> Rat {
        assert!(self.g >= 1 && m >= 1, "mu0 needs g >= 1 and m >= 1");
        Rat::from(m + self.g - 1) / Rat::from(m * self.g)
    }

    pub fn t_status(&self) -> TStatus {
        match &self.t {
            Some(TValue { value, provenance }) => match provenance {
                TProvenance::Known => TStatus::Known(value.clone()),
                TProvenance::Conjectural => TStatus::Conjectural(value.clone()),
                TProvenance::UserSupplied => TStatus::UserSupplied(value.clone()),
            },
            None => t_table(self.g),
        }
    }

    /// Dimension of `N¹(C^(d))` as modelled here.
    pub fn sym_dim(&self) -> usize {
        if self.d == 1 {
            1
        } else {
            2
        }
    }

    fn require_genus(&self) -> Result<(), Error> {
        if self.g == 0 {
            Err(Error::InvalidParams(
                "symmetric-product classes need g >= 1; genus 0 is handled by the split-bundle model".into(),
            ))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymBasis {
    #[serde(rename = "X_THETA")]
    XTheta,
    #[serde(rename = "X_DELTA")]
    XDelta,
    #[serde(rename = "THETA_L0")]
    ThetaL0,
    #[serde(rename = "X_L0")]
    XL0,
    #[serde(rename = "ALPHA_L0")]
    AlphaL0,
    /// The single basis `{[x]}` used when `d = 1`.
    #[serde(rename = "DEGREE")]
    Degree,
}

impl SymBasis {
    pub const ALL: [SymBasis; 6] = [
        SymBasis::XTheta,
        SymBasis::XDelta,
        SymBasis::ThetaL0,
        SymBasis::XL0,
        SymBasis::AlphaL0,
        SymBasis::Degree,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            SymBasis::XTheta => "X_THETA",
            SymBasis::XDelta => "X_DELTA",
            SymBasis::ThetaL0 => "THETA_L0",
            SymBasis::XL0 => "X_L0",
            SymBasis::AlphaL0 => "ALPHA_L0",
            SymBasis::Degree => "DEGREE",
        }
    }

    /// Names of the two (or one) basis classes, for display.
    pub fn labels(&self) -> &'static [&'static str] {
        match self {
            SymBasis::XTheta => &["x", "θ"],
            SymBasis::XDelta => &["x", "Δ/2"],
            SymBasis::ThetaL0 => &["θ", "L₀"],
            SymBasis::XL0 => &["x", "L₀"],
            SymBasis::AlphaL0 => &["α_t", "L₀"],
            SymBasis::Degree => &["x"],
        }
    }

    /// Canonical `{x, θ}` coordinates of the basis classes, as matrix columns.
    pub fn matrix(&self, params: &CurveParams) -> Result<RatMat, Error> {
        params.require_genus()?;
        let invalid = |reason: &str| Error::InvalidBasis {
            basis: self.tag().into(),
            reason: reason.into(),
        };
        if params.d == 1 {
            return match self {
                SymBasis::Degree => Ok(RatMat::identity(1)),
                _ => Err(invalid("d = 1 only supports the DEGREE basis")),
            };
        }
        let cols = match self {
            SymBasis::Degree => return Err(invalid("DEGREE is only valid for d = 1")),
            SymBasis::XTheta => [x_coords(params), theta_coords(params)],
            SymBasis::XDelta => [x_coords(params), half_delta_coords(params)],
            SymBasis::ThetaL0 => [theta_coords(params), l0_coords(params)],
            SymBasis::XL0 => [x_coords(params), l0_coords(params)],
            SymBasis::AlphaL0 => {
                if params.d != 2 {
                    return Err(invalid("ALPHA_L0 requires d = 2"));
                }
                let Some(t) = params.t_status().rational().cloned() else {
                    return Err(invalid("no rational value of t is available"));
                };
                [alpha_coords(params, &t), l0_coords(params)]
            }
        };
        RatMat::from_columns(&cols)
    }

    /// The basis used when nothing else is requested.
    pub fn default_for(params: &CurveParams) -> SymBasis {
        if params.d == 1 {
            SymBasis::Degree
        } else {
            SymBasis::XTheta
        }
    }
}

impl FromStr for SymBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        SymBasis::ALL
            .into_iter()
            .find(|b| b.tag() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown basis {s:?}")))
    }
}

impl fmt::Display for SymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn canon(params: &CurveParams, bx: Rat, btheta: Rat) -> RatVec {
    if params.d == 1 {
        RatVec::new(vec![bx + btheta * Rat::from(params.g)])
    } else {
        RatVec::new(vec![bx, btheta])
    }
}

fn x_coords(params: &CurveParams) -> RatVec {
    canon(params, Rat::one(), Rat::zero())
}

fn theta_coords(params: &CurveParams) -> RatVec {
    canon(params, Rat::zero(), Rat::one())
}

/// `Δ/2 = (d+g−1)[x] − θ`.
fn half_delta_coords(params: &CurveParams) -> RatVec {
    canon(params, Rat::from(params.d + params.g - 1), -Rat::one())
}

/// `L₀ = dg[x] − θ`.
fn l0_coords(params: &CurveParams) -> RatVec {
    canon(params, Rat::from(params.d * params.g), -Rat::one())
}

/// `α_t = (t+1)[x] − Δ₂/2`.
fn alpha_coords(params: &CurveParams, t: &Rat) -> RatVec {
    let half_delta = half_delta_coords(params);
    &x_coords(params).scale(&(t + Rat::one())) - &half_delta
}

/// A numerical divisor class on `C^(d)`.
#[derive(Clone, Debug)]
pub struct DivClassSym {
    params: CurveParams,
    basis: SymBasis,
    coords: RatVec,
}

/// Serialized form of a [`DivClassSym`]; parameters travel separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymClassRepr {
    pub basis: SymBasis,
    pub coords: Vec<Rat>,
}

impl DivClassSym {
    pub fn new(params: &CurveParams, basis: SymBasis, coords: Vec<Rat>) -> Result<Self, Error> {
        let m = basis.matrix(params)?;
        if coords.len() != m.cols() {
            return Err(Error::DimensionMismatch {
                expected: m.cols(),
                found: coords.len(),
            });
        }
        Ok(DivClassSym {
            params: params.clone(),
            basis,
            coords: RatVec::new(coords),
        })
    }

    pub fn from_canonical(params: &CurveParams, coords: RatVec) -> Result<Self, Error> {
        Self::new(params, SymBasis::default_for(params), coords.into_entries())
    }

    pub fn from_repr(params: &CurveParams, repr: &SymClassRepr) -> Result<Self, Error> {
        Self::new(params, repr.basis, repr.coords.clone())
    }

    pub fn repr(&self) -> SymClassRepr {
        SymClassRepr {
            basis: self.basis,
            coords: self.coords.entries().to_vec(),
        }
    }

    pub fn x(params: &CurveParams) -> Result<Self, Error> {
        params.require_genus()?;
        Self::from_canonical(params, x_coords(params))
    }

    pub fn theta(params: &CurveParams) -> Result<Self, Error> {
        params.require_genus()?;
        Self::from_canonical(params, theta_coords(params))
    }

    pub fn half_delta(params: &CurveParams) -> Result<Self, Error> {
        params.require_genus()?;
        Self::from_canonical(params, half_delta_coords(params))
    }

    pub fn l0(params: &CurveParams) -> Result<Self, Error> {
        params.require_genus()?;
        Self::from_canonical(params, l0_coords(params))
    }

    /// `α_t` for `d = 2`, using the supplied `t` (or the known one).
    pub fn alpha(params: &CurveParams, t: Option<&Rat>) -> Result<Self, Error> {
        params.require_genus()?;
        if params.d != 2 {
            return Err(Error::InvalidParams("α_t is defined for d = 2".into()));
        }
        let t = match t {
            Some(t) => t.clone(),
            None => params
                .t_status()
                .rational()
                .cloned()
                .ok_or_else(|| Error::InvalidParams(format!("no rational t for genus {}", params.g)))?,
        };
        Self::from_canonical(params, alpha_coords(params, &t))
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn basis(&self) -> SymBasis {
        self.basis
    }

    pub fn coords(&self) -> &RatVec {
        &self.coords
    }

    /// Coordinates in `{[x], [θ_d]}` (just `[x]` when `d = 1`).
    pub fn canonical(&self) -> RatVec {
        self.basis
            .matrix(&self.params)
            .and_then(|m| m.mul_vec(&self.coords))
            .expect("basis validated at construction")
    }

    pub fn convert(&self, to: SymBasis) -> Result<Self, Error> {
        let m = to.matrix(&self.params)?;
        let coords = m.solve(&self.canonical())?;
        Ok(DivClassSym {
            params: self.params.clone(),
            basis: to,
            coords,
        })
    }

    pub fn pair(&self, curve: SymCurveKind) -> Result<Rat, Error> {
        let c = SymCurveClass::new(&self.params, curve)?;
        Ok(self.canonical().dot(&c.pairing))
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        DivClassSym {
            params: self.params.clone(),
            basis: self.basis,
            coords: self.coords.scale(factor),
        }
    }

    /// Same numerical class (parameters are not compared beyond `g`, `d`).
    pub fn numerically_equal(&self, other: &DivClassSym) -> bool {
        self.params.g == other.params.g
            && self.params.d == other.params.d
            && self.canonical() == other.canonical()
    }
}

impl Add<&DivClassSym> for &DivClassSym {
    type Output = DivClassSym;

    /// The sum is expressed in the basis of the left operand.
    fn add(self, rhs: &DivClassSym) -> DivClassSym {
        assert!(
            self.params.g == rhs.params.g && self.params.d == rhs.params.d,
            "adding classes on different symmetric products"
        );
        let sum = &self.canonical() + &rhs.canonical();
        DivClassSym::from_canonical(&self.params, sum)
            .and_then(|c| c.convert(self.basis))
            .expect("basis already valid")
    }
}

impl fmt::Display for DivClassSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .zip(self.basis.labels())
            .map(|(c, l)| format!("{c}·[{l}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Test curves on `C^(d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymCurveKind {
    /// `δ`: the small diagonal `C → C^(d)`, `p ↦ dp`.
    SmallDiagonal,
    /// `δ′`: `p ↦ p + D` for a fixed effective `D` of degree `d−1`.
    ShiftedPoint,
    /// `l′`: a line in a fibre of `C^(d) → Pic^d` coming from a gonal pencil.
    GonalLine,
    /// For `g = 2k` and `d = k`: the curve class contracted by `θ_k − 2[x]`.
    EvenGenusExtremal,
}

impl SymCurveKind {
    pub const ALL: [SymCurveKind; 4] = [
        SymCurveKind::SmallDiagonal,
        SymCurveKind::ShiftedPoint,
        SymCurveKind::GonalLine,
        SymCurveKind::EvenGenusExtremal,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            SymCurveKind::SmallDiagonal => "δ",
            SymCurveKind::ShiftedPoint => "δ′",
            SymCurveKind::GonalLine => "l′",
            SymCurveKind::EvenGenusExtremal => "γ_k",
        }
    }
}

/// A curve class on `C^(d)` given by its pairings with `[x]` and `[θ_d]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymCurveClass {
    pub kind: SymCurveKind,
    /// Pairings against the canonical basis.
    pub pairing: RatVec,
}

impl SymCurveClass {
    pub fn new(params: &CurveParams, kind: SymCurveKind) -> Result<Self, Error> {
        params.require_genus()?;
        let invalid = |reason: String| Error::InvalidCurve {
            curve: kind.symbol().into(),
            reason,
        };
        let (g, d) = (params.g, params.d);
        let (px, ptheta) = match kind {
            SymCurveKind::SmallDiagonal => (Rat::from(d), Rat::from(d * d * g)),
            SymCurveKind::ShiftedPoint => (Rat::one(), Rat::from(g)),
            SymCurveKind::GonalLine => {
                if d < params.gonality() {
                    return Err(invalid(format!(
                        "needs d >= gonality {} (d = {d})",
                        params.gonality()
                    )));
                }
                (Rat::one(), Rat::zero())
            }
            SymCurveKind::EvenGenusExtremal => {
                if g % 2 != 0 || d != g / 2 {
                    return Err(invalid(format!("needs g = 2d (g = {g}, d = {d})")));
                }
                (Rat::one(), Rat::int(2))
            }
        };
        let pairing = if d == 1 {
            RatVec::new(vec![px])
        } else {
            RatVec::new(vec![px, ptheta])
        };
        Ok(SymCurveClass { kind, pairing })
    }
}

/// Which statement pins down `Nef(C^(d))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymNefSource {
    DegreeLine,
    AboveGonality,
    LengthTwo,
    Bounds,
}

/// Bounds on `Nef(C^(d))` in canonical coordinates.
#[derive(Clone, Debug)]
pub struct SymNefCone {
    pub lower: Cone,
    pub upper: Cone,
    pub exact: bool,
    pub source: SymNefSource,
}

pub fn nef_cone_sym(params: &CurveParams) -> Result<SymNefCone, Error> {
    params.require_genus()?;
    if params.d == 1 {
        let c = Cone::from_generators(1, &[x_coords(params)])?;
        return Ok(SymNefCone {
            lower: c.clone(),
            upper: c,
            exact: true,
            source: SymNefSource::DegreeLine,
        });
    }
    let lower = Cone::from_generators(2, &[l0_coords(params), theta_coords(params)])?;
    if params.d >= params.gonality() {
        return Ok(SymNefCone {
            upper: lower.clone(),
            lower,
            exact: true,
            source: SymNefSource::AboveGonality,
        });
    }
    if params.d == 2 {
        if let TStatus::Known(t) = params.t_status() {
            let c = Cone::from_generators(2, &[l0_coords(params), alpha_coords(params, &t)])?;
            return Ok(SymNefCone {
                lower: c.clone(),
                upper: c,
                exact: true,
                source: SymNefSource::LengthTwo,
            });
        }
    }
    let curves = [
        SymCurveClass::new(params, SymCurveKind::SmallDiagonal)?.pairing,
        SymCurveClass::new(params, SymCurveKind::ShiftedPoint)?.pairing,
    ];
    let upper = Cone::from_generators(2, &curves)?.dual();
    Ok(SymNefCone {
        lower,
        upper,
        exact: false,
        source: SymNefSource::Bounds,
    })
}
