//! Upper and lower bounds for `Nef(Q(n,d))` and the cases where the cone is
//! known exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{quot_dim, rank_one_kernel, require_quot, DivClassQuot, QuotCurve};
use crate::cones::Cone;
use crate::error::Error;
use crate::exactmath::{Rat, RatVec};
use crate::symprod::{CurveParams, DivClassSym, TStatus, TValue, TProvenance};

/// Builds a Quot cone from classes, dropping zero vectors and adding the
/// rank-one lineality line when `n = 1`.
fn quot_cone(params: &CurveParams, classes: &[RatVec]) -> Result<Cone, Error> {
    let mut gens: Vec<RatVec> = classes.iter().filter(|c| !c.is_zero()).cloned().collect();
    if params.n == Some(1) {
        let k = rank_one_kernel(params);
        gens.push(-&k);
        gens.push(k);
    }
    Cone::from_generators(quot_dim(params), &gens)
}

fn lift(beta: Result<DivClassSym, Error>) -> Result<RatVec, Error> {
    Ok(DivClassQuot::from_sym(beta?)?.canonical())
}

#[derive(Clone, Debug)]
pub struct UpperBound {
    pub cone: Cone,
    /// The curves whose dual cone this is.
    pub curves: Vec<QuotCurve>,
    /// True when `δ̃` was unavailable (`n < d`) and `g ≥ 2`.
    pub weak: bool,
}

/// Dual of the cone spanned by the test curves `l`, `η_*l′` and `δ̃`.
///
/// When `n < d`, `δ̃` does not exist and `η_*δ` is used instead; for `g = 1`
/// the two pair identically, for `g ≥ 2` the bound is weaker.
pub fn upper_bound_cone(params: &CurveParams) -> Result<UpperBound, Error> {
    let n = require_quot(params)?;
    let gon = params.gonality();
    if params.d < gon {
        return Err(Error::NoUpperBound(format!(
            "needs d >= gonality {gon} (d = {})",
            params.d
        )));
    }
    let mut curves = Vec::new();
    if n >= 2 {
        curves.push(QuotCurve::FiberLine);
    }
    curves.push(QuotCurve::SECTION_GONAL);
    let weak = n < params.d;
    curves.push(if weak {
        QuotCurve::SECTION_SMALL_DIAG
    } else {
        QuotCurve::TildeDelta
    });
    let rows = curves
        .iter()
        .map(|c| c.pairing(params))
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone::from_generators(quot_dim(params), &rows)?.dual();
    Ok(UpperBound {
        cone,
        curves,
        weak: weak && params.g >= 2,
    })
}

/// `⟨κ₁, κ₂, θ_d, L₀⟩`.
pub fn lower_bound_cone(params: &CurveParams) -> Result<Cone, Error> {
    require_quot(params)?;
    let gens = [
        DivClassQuot::kappa1(params)?.canonical(),
        DivClassQuot::kappa2(params)?.canonical(),
        lift(DivClassSym::theta(params))?,
        lift(DivClassSym::l0(params))?,
    ];
    quot_cone(params, &gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `g = 0`, `E = ⊕ O(a_i)`.
    Genus0Split,
    /// `g = 1`, any `n`, `d`.
    Genus1,
    /// `g ≥ 2` very general, `d = 2`, in terms of `t`.
    LengthTwo,
    /// `2 ≤ g ≤ 4` very general, `d = 3`, `n ≥ 3`.
    LengthThreeLowGenus,
}

impl Theorem {
    pub fn citation(&self) -> &'static str {
        match self {
            Theorem::Genus0Split => "genus-0-split",
            Theorem::Genus1 => "genus-1",
            Theorem::LengthTwo => "length-2-very-general",
            Theorem::LengthThreeLowGenus => "length-3-low-genus",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.citation())
    }
}

#[derive(Clone, Debug)]
pub struct ExactCone {
    pub cone: Cone,
    pub theorem: Theorem,
    /// Set when the row fired on a conjectural or user-supplied `t`.
    pub conditional: bool,
    pub t: Option<TValue>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExactOptions {
    pub allow_conjectural_t: bool,
}

#[derive(Clone, Debug)]
pub enum ExactStatus {
    Found(ExactCone),
    /// No database row covers these `(g, d)`.
    NoRow,
    /// A row matches `(g, d)` but another hypothesis fails.
    HypothesesUnsatisfied(String),
    /// `d = 2` and no value of `t` is available.
    TUnknown,
    /// `d = 2`, opted in, but the conjectural `t = √g` is irrational.
    TIrrational,
    /// `d = 2` with only a conjectural `t` and no opt-in.
    ConjecturalTRefused,
}

pub fn exact_status(params: &CurveParams, opts: ExactOptions) -> Result<ExactStatus, Error> {
    if params.g == 0 {
        let n = params
            .n
            .ok_or_else(|| Error::InvalidParams("the rank n is required".into()))?;
        let cone = genus0_cone(&vec![0; n as usize], params.d)?;
        return Ok(ExactStatus::Found(ExactCone {
            cone,
            theorem: Theorem::Genus0Split,
            conditional: false,
            t: None,
        }));
    }
    require_quot(params)?;
    let (g, d) = (params.g, params.d);
    if g == 1 {
        let hd = lift(DivClassSym::half_delta(params))?;
        let o1_hd = &DivClassQuot::o1(params)?.canonical() + &hd;
        let cone = quot_cone(params, &[o1_hd, lift(DivClassSym::theta(params))?, hd])?;
        return Ok(ExactStatus::Found(ExactCone {
            cone,
            theorem: Theorem::Genus1,
            conditional: false,
            t: None,
        }));
    }
    if !params.very_general {
        return Ok(ExactStatus::HypothesesUnsatisfied(
            "the curve must be very general".into(),
        ));
    }
    match d {
        2 => {
            let (t, provenance) = match params.t_status() {
                TStatus::Known(t) => (t, TProvenance::Known),
                TStatus::Conjectural(t) | TStatus::UserSupplied(t) if opts.allow_conjectural_t => {
                    let prov = params.t.as_ref().map_or(TProvenance::Conjectural, |v| v.provenance);
                    (t, prov)
                }
                TStatus::Conjectural(_) | TStatus::UserSupplied(_) => {
                    return Ok(ExactStatus::ConjecturalTRefused)
                }
                TStatus::ConjecturalIrrational if opts.allow_conjectural_t => {
                    return Ok(ExactStatus::TIrrational)
                }
                TStatus::ConjecturalIrrational => return Ok(ExactStatus::ConjecturalTRefused),
                TStatus::Unknown => return Ok(ExactStatus::TUnknown),
            };
            let coeff = (&t + Rat::one()) / (Rat::from(g) + &t);
            let gens = [
                DivClassQuot::o1_plus_l0(params, &coeff)?.canonical(),
                lift(DivClassSym::l0(params))?,
                lift(DivClassSym::alpha(params, Some(&t)))?,
            ];
            Ok(ExactStatus::Found(ExactCone {
                cone: quot_cone(params, &gens)?,
                theorem: Theorem::LengthTwo,
                conditional: provenance != TProvenance::Known,
                t: Some(TValue {
                    value: t,
                    provenance,
                }),
            }))
        }
        3 if g <= 4 => {
            let n = require_quot(params)?;
            if n < 3 {
                return Ok(ExactStatus::HypothesesUnsatisfied(format!(
                    "the d = 3 row needs n >= 3 (n = {n})"
                )));
            }
            let gens = [
                DivClassQuot::o1_plus_l0(params, &params.mu0(3))?.canonical(),
                lift(DivClassSym::theta(params))?,
                lift(DivClassSym::l0(params))?,
            ];
            Ok(ExactStatus::Found(ExactCone {
                cone: quot_cone(params, &gens)?,
                theorem: Theorem::LengthThreeLowGenus,
                conditional: false,
                t: None,
            }))
        }
        _ => Ok(ExactStatus::NoRow),
    }
}

/// The exact nef cone when a database row applies.
///
/// Refuses (with an error) a `d = 2` request that would need a conjectural
/// `t` without opt-in.
pub fn exact_cone(params: &CurveParams, opts: ExactOptions) -> Result<Option<ExactCone>, Error> {
    match exact_status(params, opts)? {
        ExactStatus::Found(c) => Ok(Some(c)),
        ExactStatus::ConjecturalTRefused => Err(Error::ConjecturalTRefused(params.g)),
        _ => Ok(None),
    }
}

/// `Nef(Q(E,d))` on `P¹` for `E = ⊕ O(a_i)`, in coordinates `(a; h)` for
/// `a·[O_Q(1)] + h·[O_{P^d}(1)]`.
pub fn genus0_cone(splitting: &[i64], d: u32) -> Result<Cone, Error> {
    let Some(&a1) = splitting.iter().min() else {
        return Err(Error::InvalidParams("the splitting type must be nonempty".into()));
    };
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1".into()));
    }
    let h = -a1 + i64::from(d) - 1;
    Cone::from_int_generators(2, &[&[1, h], &[0, 1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn q(g: u32, n: u32, d: u32) -> CurveParams {
        CurveParams::quot(g, n, d).unwrap()
    }

    fn v(xs: &[Rat]) -> RatVec {
        RatVec::new(xs.to_vec())
    }

    #[test]
    fn upper_examples() {
        let up = upper_bound_cone(&q(2, 2, 2)).unwrap();
        let expected = Cone::from_generators(3, &[
            v(&[Rat::one(), Rat::int(3), rat(-3, 4)]),
            RatVec::from_ints(&[0, 0, 1]),
            RatVec::from_ints(&[0, 4, -1]),
        ])
        .unwrap();
        assert!(up.cone.equal(&expected));
        assert!(!up.weak);

        let p = q(1, 2, 4);
        let up = upper_bound_cone(&p).unwrap();
        assert!(up.curves.contains(&QuotCurve::SECTION_SMALL_DIAG));
        assert!(!up.weak);
        let o1_l0 = DivClassQuot::o1_plus_l0(&p, &Rat::one()).unwrap().canonical();
        let expected = Cone::from_generators(3, &[
            o1_l0,
            lift(DivClassSym::theta(&p)).unwrap(),
            lift(DivClassSym::l0(&p)).unwrap(),
        ])
        .unwrap();
        assert!(up.cone.equal(&expected));

        assert!(matches!(upper_bound_cone(&q(5, 4, 3)), Err(Error::NoUpperBound(_))));
    }

    #[test]
    fn lower_example() {
        let p = q(2, 2, 2);
        let low = lower_bound_cone(&p).unwrap();
        let k2 = DivClassQuot::kappa2(&p).unwrap().canonical();
        assert!(low.contains(&k2).unwrap());
    }

    #[test]
    fn exact_rows() {
        let p = q(2, 2, 2);
        let e = exact_cone(&p, ExactOptions::default()).unwrap().unwrap();
        assert_eq!(e.theorem, Theorem::LengthTwo);
        let expected = Cone::from_generators(3, &[
            DivClassQuot::o1_plus_l0(&p, &rat(3, 4)).unwrap().canonical(),
            lift(DivClassSym::l0(&p)).unwrap(),
            lift(DivClassSym::alpha(&p, Some(&Rat::int(2)))).unwrap(),
        ])
        .unwrap();
        assert!(e.cone.equal(&expected));

        let p = q(4, 5, 3);
        let e = exact_cone(&p, ExactOptions::default()).unwrap().unwrap();
        assert_eq!(e.theorem, Theorem::LengthThreeLowGenus);
        assert!(e.cone.contains(&DivClassQuot::o1_plus_l0(&p, &rat(1, 2)).unwrap().canonical()).unwrap());

        assert!(matches!(
            exact_status(&q(3, 2, 3), ExactOptions::default()).unwrap(),
            ExactStatus::HypothesesUnsatisfied(_)
        ));
        assert!(matches!(exact_status(&q(7, 3, 2), ExactOptions::default()).unwrap(), ExactStatus::TUnknown));
        assert_eq!(
            exact_cone(&q(10, 3, 2), ExactOptions::default()).unwrap_err(),
            Error::ConjecturalTRefused(10)
        );
        let opt = ExactOptions { allow_conjectural_t: true };
        assert!(matches!(exact_status(&q(10, 3, 2), opt).unwrap(), ExactStatus::TIrrational));
        let p = q(10, 3, 2).with_t(rat(19, 6), TProvenance::Conjectural).unwrap();
        assert!(exact_cone(&p, ExactOptions::default()).is_err());
        assert!(exact_cone(&p, opt).unwrap().unwrap().conditional);
    }

    #[test]
    fn genus_one_rank_one() {
        let p = q(1, 1, 2);
        let e = exact_cone(&p, ExactOptions::default()).unwrap().unwrap();
        assert_eq!(e.cone.lineality().len(), 1);
        let o1 = DivClassQuot::o1(&p).unwrap().canonical();
        let hd = lift(DivClassSym::half_delta(&p)).unwrap();
        assert!(e.cone.contains(&(&o1 + &hd)).unwrap());
    }

    #[test]
    fn genus_zero() {
        let c = genus0_cone(&[0, 0, 0], 4).unwrap();
        assert!(c.equal(&Cone::from_int_generators(2, &[&[1, 3], &[0, 1]]).unwrap()));
        let c = genus0_cone(&[2, -1], 3).unwrap();
        assert!(c.equal(&Cone::from_int_generators(2, &[&[1, 3], &[0, 1]]).unwrap()));
        let c = genus0_cone(&[5], 1).unwrap();
        assert!(c.equal(&Cone::from_int_generators(2, &[&[1, -5], &[0, 1]]).unwrap()));
        assert!(genus0_cone(&[], 2).is_err());
    }
}
