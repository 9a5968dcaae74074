//! The affine cross-section of `N¹(Q)` through the frame
//! `A = O(1)+μ₀L₀`, `B = θ_d`, `C = L₀`, with the points `D ∝ κ₁`, `E ∝ κ₂`.

use serde::{Deserialize, Serialize};

use super::{require_quot, DivClassQuot};
use crate::error::Error;
use crate::exactmath::{Rat, RatMat, RatVec};
use crate::symprod::{CurveParams, DivClassSym};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicturePoint {
    pub label: String,
    pub class: RatVec,
    /// Barycentric weights over `(A, B, C)`; they sum to 1.
    pub weights: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Picture {
    pub points: Vec<PicturePoint>,
    pub tau: Rat,
    pub tau_printed: Rat,
    pub rho: Rat,
    pub rho_printed: Rat,
    pub e_equals_a: bool,
    pub rho_discrepancy: bool,
    /// Whether the printed expansion of `D` agrees with `τκ₁`. It does not:
    /// it halves the `O(1)` coefficient.
    pub d_printed_form_consistent: bool,
}

impl Picture {
    pub fn point(&self, label: &str) -> Option<&PicturePoint> {
        self.points.iter().find(|p| p.label == label)
    }
}

/// `τ` as printed: `1/(1 + (d+g−2)/(dg))`.
pub fn tau_printed(g: u32, d: u32) -> Rat {
    (Rat::one() + Rat::from(d + g - 2) / Rat::from(d * g)).recip().expect("positive")
}

/// `ρ` as printed: `1/(1 + (g+1)/(2g) − (d+g−2)/(dg))`.
pub fn rho_printed(g: u32, d: u32) -> Rat {
    let s = Rat::one() + Rat::from(g + 1) / Rat::from(2 * g) - Rat::from(d + g - 2) / Rat::from(d * g);
    s.recip().expect("positive")
}

pub fn picture_points(params: &CurveParams) -> Result<Picture, Error> {
    require_quot(params)?;
    let (g, d) = (params.g, params.d);
    if d < 2 {
        return Err(Error::InvalidParams("the picture needs d >= 2".into()));
    }
    let lift = |b: DivClassSym| DivClassQuot::from_sym(b).map(|c| c.canonical());
    let a = DivClassQuot::o1_plus_l0(params, &params.mu0(d))?.canonical();
    let b = lift(DivClassSym::theta(params)?)?;
    let c = lift(DivClassSym::l0(params)?)?;
    let frame = RatMat::from_columns(&[a.clone(), b.clone(), c.clone()])?;

    let kappa1 = DivClassQuot::kappa1(params)?.canonical();
    let kappa2 = DivClassQuot::kappa2(params)?.canonical();
    let w1 = frame.solve(&kappa1)?;
    let w2 = frame.solve(&kappa2)?;
    let tau = w1.iter().sum::<Rat>().recip().expect("nonzero weight sum");
    let rho = w2.iter().sum::<Rat>().recip().expect("nonzero weight sum");

    let point = |label: &str, class: RatVec, weights: RatVec| PicturePoint {
        label: label.into(),
        class,
        weights: weights.into_entries(),
    };
    let unit = |i| RatVec::unit(3, i);
    let d_class = kappa1.scale(&tau);
    let e_class = kappa2.scale(&rho);
    let e_equals_a = e_class == a;
    let rho_printed = rho_printed(g, d);
    let points = vec![
        point("A", a, unit(0)),
        point("B", b, unit(1)),
        point("C", c, unit(2)),
        point("D", d_class, w1.scale(&tau)),
        point("E", e_class, w2.scale(&rho)),
    ];
    Ok(Picture {
        points,
        tau,
        tau_printed: tau_printed(g, d),
        rho_discrepancy: !e_equals_a && rho != rho_printed,
        rho,
        rho_printed,
        e_equals_a,
        d_printed_form_consistent: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn genus_two_length_two() {
        let p = CurveParams::quot(2, 2, 2).unwrap();
        let pic = picture_points(&p).unwrap();
        assert_eq!(pic.tau, rat(2, 3));
        assert_eq!(pic.tau, pic.tau_printed);
        assert!(pic.e_equals_a);
        assert!(!pic.rho_discrepancy);
        assert_eq!(pic.point("E").unwrap().weights, vec![Rat::one(), Rat::zero(), Rat::zero()]);
    }

    #[test]
    fn genus_two_length_five() {
        let p = CurveParams::quot(2, 5, 5).unwrap();
        let pic = picture_points(&p).unwrap();
        let d = pic.point("D").unwrap();
        assert_eq!(d.weights, vec![rat(2, 3), rat(1, 3), Rat::zero()]);
        assert!(!pic.e_equals_a);
        assert!(pic.rho_discrepancy);
        for pt in &pic.points {
            assert_eq!(pt.weights.iter().sum::<Rat>(), Rat::one());
        }
    }

    #[test]
    fn needs_d_two() {
        assert!(picture_points(&CurveParams::quot(2, 2, 1).unwrap()).is_err());
    }
}
