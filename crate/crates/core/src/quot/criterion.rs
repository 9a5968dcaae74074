//! One-sided nefness checks with checkable certificates.
//!
//! [`check_nef_sufficient`] only ever answers `Nef` or `Unknown`;
//! [`check_nef_necessary`] only `NotNef` or `Unknown`. [`classify`] runs
//! every available test and refuses to answer if two certificates disagree.

use serde::{Deserialize, Serialize};

use super::bounds::{exact_status, genus0_cone, lower_bound_cone, upper_bound_cone, ExactOptions, ExactStatus, Theorem};
use super::partitions::{nontrivial_part_sizes, Partition};
use super::{require_quot, DivClassQuot, QuotCurve};
use crate::cones::{Cone, MembershipCert, Verdict as ConeVerdict, Witness};
use crate::error::Error;
use crate::exactmath::{Rat, RatVec};
use crate::symprod::{nef_cone_sym, CurveParams, DivClassSym, SymBasis, SymCurveClass, SymCurveKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Nef,
    NotNef,
    Unknown,
}

/// Which cone a membership or separation certificate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertSource {
    /// `⟨κ₁, κ₂, θ_d, L₀⟩` on `Q`.
    LowerBound,
    /// The dual of the test-curve cone on `Q`.
    UpperBound,
    /// An exact cone from the theorem database.
    ExactCone(Theorem),
    /// The proven lower bound of `Nef(C^(d))`, pulled back along `Φ`.
    SymLowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NefCertificate {
    /// `target = Σ coefficients[i]·generators[i]` with nonnegative
    /// coefficients, in a cone of nef classes.
    ConeMembership {
        source: CertSource,
        target: RatVec,
        generators: Vec<RatVec>,
        coefficients: Vec<Rat>,
    },
    /// After scaling to `a = 1`, `β` has the listed coordinates in the
    /// `{θ_d, L₀}` basis (or `{x}` when `d = 1`), all nonnegative, and the
    /// `L₀` coefficient is at least `μ₀` of every part size `≥ 2`.
    PartitionCriterion {
        coords: Vec<Rat>,
        threshold: Rat,
        critical_part: Option<u32>,
    },
    /// A curve on `Q` on which the class is negative.
    NegativeCurve { curve: QuotCurve, pairing: Rat },
    /// The pullback along `η_partition` restricted to the factor `C^(part)`
    /// lies outside the proven upper bound of `Nef(C^(part))`.
    ViolatedPartition {
        partition: Partition,
        part: u32,
        class_on_part: RatVec,
        functional: RatVec,
        value: Rat,
        curve: Option<SymCurveKind>,
    },
    /// A facet functional of a cone containing `Nef(Q)` that is negative on
    /// the class.
    SeparatingFacet {
        source: CertSource,
        functional: RatVec,
        value: Rat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefVerdict {
    pub verdict: Verdict,
    pub certificate: Option<NefCertificate>,
}

impl NefVerdict {
    fn unknown() -> Self {
        NefVerdict {
            verdict: Verdict::Unknown,
            certificate: None,
        }
    }

    fn nef(cert: NefCertificate) -> Self {
        NefVerdict {
            verdict: Verdict::Nef,
            certificate: Some(cert),
        }
    }

    fn not_nef(cert: NefCertificate) -> Self {
        NefVerdict {
            verdict: Verdict::NotNef,
            certificate: Some(cert),
        }
    }

    /// Rechecks the certificate from scratch. `Unknown` verifies trivially.
    pub fn verify(&self, class: &DivClassQuot, opts: ExactOptions) -> bool {
        match (&self.verdict, &self.certificate) {
            (Verdict::Unknown, None) => true,
            (Verdict::Nef, Some(c)) => c.proves_nef() && c.verify(class, opts),
            (Verdict::NotNef, Some(c)) => !c.proves_nef() && c.verify(class, opts),
            _ => false,
        }
    }
}

fn cone_for(source: CertSource, params: &CurveParams, opts: ExactOptions) -> Option<Cone> {
    match source {
        CertSource::LowerBound => lower_bound_cone(params).ok(),
        CertSource::UpperBound => upper_bound_cone(params).ok().map(|u| u.cone),
        CertSource::SymLowerBound => nef_cone_sym(params).ok().map(|c| c.lower),
        CertSource::ExactCone(theorem) => match exact_status(params, opts) {
            Ok(ExactStatus::Found(e)) if e.theorem == theorem => Some(e.cone),
            _ => None,
        },
    }
}

fn membership_cert(source: CertSource, cone: &Cone, target: &RatVec, cert: MembershipCert) -> Option<NefCertificate> {
    match cert.witness {
        Witness::Combination(coefficients) => Some(NefCertificate::ConeMembership {
            source,
            target: target.clone(),
            generators: cone.generators().to_vec(),
            coefficients,
        }),
        Witness::Separating(_) => None,
    }
}

fn named_curve(params: &CurveParams, functional: &RatVec) -> Option<SymCurveKind> {
    SymCurveKind::ALL.into_iter().find(|&k| {
        SymCurveClass::new(params, k)
            .map(|c| c.pairing.is_positive_multiple_of(functional))
            .unwrap_or(false)
    })
}

/// `a·(θ_m − (m+g−1)[x]) + b_x[x]` on `C^(m)`, i.e. the restriction of
/// `η_partition*(a·O(1) + b_x[x])` to a factor `C^(m)`.
fn class_on_part(params: &CurveParams, a: &Rat, bx: &Rat, m: u32) -> RatVec {
    let pm = params.with_d(m);
    let half_delta = DivClassSym::half_delta(&pm).expect("g >= 1").canonical();
    let x = DivClassSym::x(&pm).expect("g >= 1").canonical();
    &x.scale(bx) - &half_delta.scale(a)
}

/// Is the `θ_d` coordinate of `β` zero (so `π*β` has no cross terms)?
fn beta_is_x_multiple(class: &DivClassQuot) -> Option<Rat> {
    let b = class.beta().canonical();
    match b.dim() {
        1 => Some(b[0].clone()),
        _ if b[1].is_zero() => Some(b[0].clone()),
        _ => None,
    }
}

impl NefCertificate {
    pub fn proves_nef(&self) -> bool {
        matches!(
            self,
            NefCertificate::ConeMembership { .. } | NefCertificate::PartitionCriterion { .. }
        )
    }

    pub fn verify(&self, class: &DivClassQuot, opts: ExactOptions) -> bool {
        let params = class.params();
        let Ok(n) = require_quot(params) else {
            return false;
        };
        match self {
            NefCertificate::ConeMembership {
                source,
                target,
                generators,
                coefficients,
            } => {
                let expected_target = match source {
                    CertSource::SymLowerBound if n == 1 => class.eta_pullback().canonical(),
                    CertSource::SymLowerBound if class.a().is_zero() => class.beta().canonical(),
                    CertSource::SymLowerBound => return false,
                    _ => class.canonical(),
                };
                let Some(cone) = cone_for(*source, params, opts) else {
                    return false;
                };
                if *target != expected_target
                    || generators.as_slice() != cone.generators()
                    || coefficients.len() != generators.len()
                    || coefficients.iter().any(Rat::is_negative)
                {
                    return false;
                }
                let mut sum = RatVec::zeros(target.dim());
                for (c, g) in coefficients.iter().zip(generators) {
                    sum = &sum + &g.scale(c);
                }
                sum == *target
            }
            NefCertificate::PartitionCriterion {
                coords,
                threshold,
                critical_part,
            } => {
                if n == 1 || !class.a().is_positive() {
                    return false;
                }
                let beta = class.beta().scale(&class.a().recip().expect("positive"));
                if params.d == 1 {
                    return critical_part.is_none()
                        && threshold.is_zero()
                        && coords.as_slice() == beta.canonical().entries()
                        && !coords[0].is_negative();
                }
                let Ok(b) = beta.convert(SymBasis::ThetaL0) else {
                    return false;
                };
                let sizes = nontrivial_part_sizes(params.d, n);
                let expected = sizes.iter().map(|&m| params.mu0(m)).max();
                coords.as_slice() == b.coords().entries()
                    && expected.as_ref() == Some(threshold)
                    && *critical_part == sizes.first().copied()
                    && !coords[0].is_negative()
                    && coords[1] >= *threshold
            }
            NefCertificate::NegativeCurve { curve, pairing } => {
                class.pair(*curve).map(|v| v == *pairing).unwrap_or(false) && pairing.is_negative()
            }
            NefCertificate::ViolatedPartition {
                partition,
                part,
                class_on_part: on_part,
                functional,
                value,
                curve,
            } => {
                let d = params.d;
                if partition.total() != d
                    || partition.len() > n as usize
                    || !partition.parts().contains(part)
                {
                    return false;
                }
                let expected = if *partition == Partition::trivial(d) {
                    class.eta_pullback().canonical()
                } else {
                    match beta_is_x_multiple(class) {
                        Some(bx) => class_on_part(params, class.a(), &bx, *part),
                        None => return false,
                    }
                };
                let pm = params.with_d(*part);
                let Ok(sym) = nef_cone_sym(&pm) else {
                    return false;
                };
                let curve_ok = match curve {
                    Some(k) => SymCurveClass::new(&pm, *k)
                        .map(|c| c.pairing.is_positive_multiple_of(functional))
                        .unwrap_or(false),
                    None => true,
                };
                *on_part == expected
                    && functional.dim() == on_part.dim()
                    && curve_ok
                    && sym.upper.generators().iter().all(|g| !functional.dot(g).is_negative())
                    && functional.dot(on_part) == *value
                    && value.is_negative()
            }
            NefCertificate::SeparatingFacet {
                source,
                functional,
                value,
            } => {
                if matches!(source, CertSource::LowerBound | CertSource::SymLowerBound) {
                    return false;
                }
                let Some(cone) = cone_for(*source, params, opts) else {
                    return false;
                };
                let x = class.canonical();
                functional.dim() == x.dim()
                    && cone.generators().iter().all(|g| !functional.dot(g).is_negative())
                    && functional.dot(&x) == *value
                    && value.is_negative()
            }
        }
    }
}

/// Sufficient condition for nefness from the partition criterion.
pub fn check_nef_sufficient(class: &DivClassQuot) -> NefVerdict {
    let params = class.params();
    let n = require_quot(params).expect("validated at construction");
    let sym = nef_cone_sym(params).expect("g >= 1");
    let via_sym = |target: RatVec| -> NefVerdict {
        let cert = sym.lower.membership(&target).expect("same dimension");
        if cert.verdict == ConeVerdict::Outside {
            return NefVerdict::unknown();
        }
        membership_cert(CertSource::SymLowerBound, &sym.lower, &target, cert)
            .map_or_else(NefVerdict::unknown, NefVerdict::nef)
    };
    if n == 1 {
        return via_sym(class.eta_pullback().canonical());
    }
    let a = class.a();
    if a.is_negative() {
        return NefVerdict::unknown();
    }
    if a.is_zero() {
        return via_sym(class.beta().canonical());
    }
    let beta = class.beta().scale(&a.recip().expect("positive"));
    if params.d == 1 {
        let coords = beta.canonical().into_entries();
        if coords[0].is_negative() {
            return NefVerdict::unknown();
        }
        return NefVerdict::nef(NefCertificate::PartitionCriterion {
            coords,
            threshold: Rat::zero(),
            critical_part: None,
        });
    }
    let b = beta.convert(SymBasis::ThetaL0).expect("d >= 2");
    let sizes = nontrivial_part_sizes(params.d, n);
    let threshold = params.mu0(sizes[0]);
    let coords = b.coords().entries().to_vec();
    if coords[0].is_negative() || coords[1] < threshold {
        return NefVerdict::unknown();
    }
    NefVerdict::nef(NefCertificate::PartitionCriterion {
        coords,
        threshold,
        critical_part: Some(sizes[0]),
    })
}

fn violated(params: &CurveParams, partition: Partition, part: u32, on_part: RatVec) -> Option<NefCertificate> {
    let pm = params.with_d(part);
    let sym = nef_cone_sym(&pm).expect("g >= 1");
    let cert = sym.upper.membership(&on_part).expect("same dimension");
    match cert.witness {
        Witness::Separating(functional) => {
            let value = functional.dot(&on_part);
            let curve = named_curve(&pm, &functional);
            Some(NefCertificate::ViolatedPartition {
                partition,
                part,
                class_on_part: on_part,
                functional,
                value,
                curve,
            })
        }
        Witness::Combination(_) => None,
    }
}

/// Necessary conditions: negativity on the fibre line, and pullbacks along
/// partition maps that split without cross terms.
pub fn check_nef_necessary(class: &DivClassQuot) -> NefVerdict {
    let params = class.params();
    let n = require_quot(params).expect("validated at construction");
    let d = params.d;
    if n >= 2 && class.a().is_negative() {
        return NefVerdict::not_nef(NefCertificate::NegativeCurve {
            curve: QuotCurve::FiberLine,
            pairing: class.a().clone(),
        });
    }
    if let Some(cert) = violated(params, Partition::trivial(d), d, class.eta_pullback().canonical()) {
        return NefVerdict::not_nef(cert);
    }
    if n >= 2 {
        if let Some(bx) = beta_is_x_multiple(class) {
            for m in 1..d {
                let partition = Partition::containing(d, m).expect("m < d");
                let on_part = class_on_part(params, class.a(), &bx, m);
                if let Some(cert) = violated(params, partition, m, on_part) {
                    return NefVerdict::not_nef(cert);
                }
            }
        }
    }
    NefVerdict::unknown()
}

/// Runs every available test.
///
/// Returns an error if one test proves nefness and another refutes it.
pub fn classify(class: &DivClassQuot, opts: ExactOptions) -> Result<NefVerdict, Error> {
    let params = class.params();
    let x = class.canonical();
    let mut found: Vec<NefVerdict> = Vec::new();

    let lower = lower_bound_cone(params)?;
    let cert = lower.membership(&x)?;
    if let Some(c) = membership_cert(CertSource::LowerBound, &lower, &x, cert) {
        found.push(NefVerdict::nef(c));
    }
    if let Ok(ExactStatus::Found(e)) = exact_status(params, opts) {
        let source = CertSource::ExactCone(e.theorem);
        let cert = e.cone.membership(&x)?;
        match cert.witness {
            Witness::Separating(functional) => {
                let value = functional.dot(&x);
                found.push(NefVerdict::not_nef(NefCertificate::SeparatingFacet {
                    source,
                    functional,
                    value,
                }));
            }
            w => {
                let cert = MembershipCert {
                    verdict: cert.verdict,
                    witness: w,
                };
                if let Some(c) = membership_cert(source, &e.cone, &x, cert) {
                    found.push(NefVerdict::nef(c));
                }
            }
        }
    }
    found.push(check_nef_sufficient(class));
    found.push(check_nef_necessary(class));
    if let Ok(up) = upper_bound_cone(params) {
        if let Witness::Separating(functional) = up.cone.membership(&x)?.witness {
            let value = functional.dot(&x);
            found.push(NefVerdict::not_nef(NefCertificate::SeparatingFacet {
                source: CertSource::UpperBound,
                functional,
                value,
            }));
        }
    }

    let nef = found.iter().find(|v| v.verdict == Verdict::Nef);
    let not_nef = found.iter().find(|v| v.verdict == Verdict::NotNef);
    match (nef, not_nef) {
        (Some(a), Some(b)) => Err(Error::ContradictoryCertificates(format!(
            "{:?} vs {:?}",
            a.certificate, b.certificate
        ))),
        (Some(v), None) | (None, Some(v)) => Ok(v.clone()),
        (None, None) => Ok(NefVerdict::unknown()),
    }
}

/// Exact classification on `P¹` for a split bundle, in `(a; h)` coordinates.
pub fn classify_genus0(splitting: &[i64], d: u32, x: &RatVec) -> Result<(Verdict, MembershipCert), Error> {
    let cone = genus0_cone(splitting, d)?;
    let cert = cone.membership(x)?;
    let verdict = if cert.verdict == ConeVerdict::Outside {
        Verdict::NotNef
    } else {
        Verdict::Nef
    };
    Ok((verdict, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn q(g: u32, n: u32, d: u32) -> CurveParams {
        CurveParams::quot(g, n, d).unwrap()
    }

    const OPTS: ExactOptions = ExactOptions {
        allow_conjectural_t: false,
    };

    #[test]
    fn kappa2_is_sufficient_nef() {
        for g in 1..=6 {
            for d in 2..=6 {
                for n in 2..=6 {
                    let c = DivClassQuot::kappa2(&q(g, n, d)).unwrap();
                    let v = check_nef_sufficient(&c);
                    assert_eq!(v.verdict, Verdict::Nef, "g={g} d={d} n={n}");
                    assert!(v.verify(&c, OPTS));
                }
            }
        }
    }

    #[test]
    fn kappa1_is_one_sided() {
        let c = DivClassQuot::kappa1(&q(2, 2, 5)).unwrap();
        assert_eq!(check_nef_sufficient(&c).verdict, Verdict::Unknown);
    }

    #[test]
    fn degree_line_sufficient() {
        let p = q(3, 2, 1);
        let c = DivClassQuot::o1(&p).unwrap();
        let v = check_nef_sufficient(&c);
        assert_eq!(v.verdict, Verdict::Nef);
        assert!(v.verify(&c, OPTS));
    }

    #[test]
    fn necessary_examples() {
        let p = q(2, 4, 4);
        let c = DivClassQuot::b_class(&p, &Rat::int(4)).unwrap();
        let v = check_nef_necessary(&c);
        assert_eq!(v.verdict, Verdict::NotNef);
        assert!(v.verify(&c, OPTS));
        match v.certificate.unwrap() {
            NefCertificate::ViolatedPartition { partition, .. } => assert_eq!(partition, Partition::trivial(4)),
            other => panic!("unexpected {other:?}"),
        }

        let c = DivClassQuot::b_class(&p, &Rat::int(5)).unwrap();
        assert_eq!(check_nef_necessary(&c).verdict, Verdict::Unknown);

        let p = q(2, 2, 2);
        let c = DivClassQuot::o1(&p).unwrap();
        let v = check_nef_necessary(&c);
        assert_eq!(v.verdict, Verdict::NotNef);
        assert!(v.verify(&c, OPTS));

        let c = DivClassQuot::o1(&p).unwrap().scale(&rat(-1, 2));
        let v = check_nef_necessary(&c);
        assert!(matches!(v.certificate, Some(NefCertificate::NegativeCurve { .. })));
        assert!(v.verify(&c, OPTS));
    }

    #[test]
    fn negative_b_class() {
        let p = q(3, 3, 3);
        let c = DivClassQuot::b_class(&p, &rat(-1, 2)).unwrap();
        let v = check_nef_necessary(&c);
        assert_eq!(v.verdict, Verdict::NotNef);
        assert!(v.verify(&c, OPTS));
    }

    #[test]
    fn tampered_certificates_fail() {
        let p = q(2, 4, 4);
        let c = DivClassQuot::b_class(&p, &Rat::int(4)).unwrap();
        let mut v = check_nef_necessary(&c);
        if let Some(NefCertificate::ViolatedPartition { value, .. }) = &mut v.certificate {
            *value = Rat::int(-100);
        }
        assert!(!v.verify(&c, OPTS));
        let other = DivClassQuot::kappa2(&p).unwrap();
        assert!(!check_nef_necessary(&c).verify(&other, OPTS));
    }

    #[test]
    fn classify_examples() {
        let p = q(2, 2, 2);
        let c = DivClassQuot::o1_plus_l0(&p, &rat(3, 4)).unwrap();
        let v = classify(&c, OPTS).unwrap();
        assert_eq!(v.verdict, Verdict::Nef);
        assert!(v.verify(&c, OPTS));

        let theta = DivClassQuot::from_sym(DivClassSym::theta(&p).unwrap()).unwrap();
        assert_eq!(classify(&theta, OPTS).unwrap().verdict, Verdict::Nef);

        let c = DivClassQuot::o1_plus_l0(&p, &rat(1, 2)).unwrap();
        let v = classify(&c, OPTS).unwrap();
        assert_eq!(v.verdict, Verdict::NotNef);
        assert!(v.verify(&c, OPTS));
    }

    #[test]
    fn rank_one_reduction() {
        let p = q(2, 1, 3);
        // O(1) + Δ/2 is numerically trivial on C^(3).
        let hd = DivClassSym::half_delta(&p).unwrap();
        let c = &DivClassQuot::o1(&p).unwrap() + &DivClassQuot::from_sym(hd).unwrap();
        let v = check_nef_sufficient(&c);
        assert_eq!(v.verdict, Verdict::Nef);
        assert!(v.verify(&c, OPTS));
        assert_eq!(check_nef_necessary(&c).verdict, Verdict::Unknown);
        assert_eq!(classify(&c.scale(&Rat::int(-1)), OPTS).unwrap().verdict, Verdict::Nef);
    }

    #[test]
    fn genus_zero_classification() {
        let (v, cert) = classify_genus0(&[-1, 2], 3, &RatVec::from_ints(&[1, 3])).unwrap();
        assert_eq!(v, Verdict::Nef);
        assert_eq!(cert.verdict, ConeVerdict::Boundary);
        let (v, _) = classify_genus0(&[-1, 2], 3, &RatVec::from_ints(&[1, 2])).unwrap();
        assert_eq!(v, Verdict::NotNef);
    }
}
