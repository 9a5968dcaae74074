//! Exact polyhedral cones in ambient dimension 1 to 4.
//!
//! A [`Cone`] keeps both descriptions at once: a list of generators (extreme
//! rays followed by `±` lineality vectors) and the facet inequalities
//! `f·x ≥ 0` plus equalities `e·x = 0`. Both are computed eagerly by double
//! description, so every cone is immutable and cheap to query.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactmath::{Rat, RatMat, RatVec};

pub const MAX_DIM: usize = 4;

/// Output of the double-description pass over `{x : a·x ≥ 0 for a in rows}`.
struct Dd {
    lineality: Vec<RatVec>,
    rays: Vec<RatVec>,
}

fn double_description(dim: usize, rows: &[RatVec]) -> Dd {
    let mut lin: Vec<RatVec> = (0..dim).map(|i| RatVec::unit(dim, i)).collect();
    let mut rays: Vec<RatVec> = Vec::new();
    let mut done: Vec<&RatVec> = Vec::new();

    for a in rows {
        if let Some(pos) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lin.remove(pos);
            if a.dot(&l0).is_negative() {
                l0 = -l0;
            }
            let a0 = a.dot(&l0);
            let reduce = |v: &RatVec| -> RatVec {
                let c = &a.dot(v) / &a0;
                v - &l0.scale(&c)
            };
            lin = lin.iter().map(reduce).collect();
            rays = rays.iter().map(reduce).collect();
            rays.push(l0);
        } else {
            let vals: Vec<Rat> = rays.iter().map(|r| a.dot(r)).collect();
            let free = dim - lin.len();
            let mut next = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, vp) in vals.iter().enumerate() {
                if !vp.is_positive() {
                    continue;
                }
                for (j, vn) in vals.iter().enumerate() {
                    if !vn.is_negative() {
                        continue;
                    }
                    let (p, m) = (&rays[i], &rays[j]);
                    let common: Vec<RatVec> = done
                        .iter()
                        .filter(|c| c.dot(p).is_zero() && c.dot(m).is_zero())
                        .map(|c| (*c).clone())
                        .collect();
                    let rank = if common.is_empty() {
                        0
                    } else {
                        RatMat::from_rows(common).expect("uniform rows").rank()
                    };
                    if rank + 2 == free {
                        next.push(&m.scale(vp) - &p.scale(vn));
                    }
                }
            }
            rays = next;
        }
        done.push(a);
    }

    let lineality = canonical_subspace(&lin);
    let rays = rays
        .iter()
        .map(|r| project_out(r, &lineality).primitive())
        .filter(|r| !r.is_zero())
        .sorted()
        .dedup()
        .collect();
    Dd { lineality, rays }
}

/// Reduced row echelon basis of the span, scaled to primitive integer rows.
fn canonical_subspace(vs: &[RatVec]) -> Vec<RatVec> {
    if vs.is_empty() {
        return Vec::new();
    }
    RatMat::from_rows(vs.to_vec())
        .expect("uniform rows")
        .row_basis()
        .iter()
        .map(RatVec::primitive)
        .collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
fn project_out(v: &RatVec, basis: &[RatVec]) -> RatVec {
    let mut ortho: Vec<RatVec> = Vec::new();
    for b in basis {
        let mut w = b.clone();
        for o in &ortho {
            w = &w - &o.scale(&(&w.dot(o) / &o.dot(o)));
        }
        ortho.push(w);
    }
    let mut out = v.clone();
    for o in &ortho {
        out = &out - &o.scale(&(&out.dot(o) / &o.dot(o)));
    }
    out
}

fn check_dim(dim: usize) -> Result<(), Error> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// A closed convex polyhedral cone.
#[derive(Clone)]
pub struct Cone {
    dim: usize,
    generators: Vec<RatVec>,
    rays: Vec<RatVec>,
    lineality: Vec<RatVec>,
    facets: Vec<RatVec>,
    equalities: Vec<RatVec>,
}

impl Cone {
    /// Cone spanned by nonnegative combinations of `gens`.
    ///
    /// Redundant and duplicate generators are dropped. Extreme rays keep the
    /// scale and order of the first input generator on that ray.
    pub fn from_generators(dim: usize, gens: &[RatVec]) -> Result<Self, Error> {
        check_dim(dim)?;
        for g in gens {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let dual = double_description(dim, gens);
        let equalities = dual.lineality;
        let facets = dual.rays;

        let mut rows = facets.clone();
        for e in &equalities {
            rows.push(e.clone());
            rows.push(-e);
        }
        let primal = double_description(dim, &rows);

        let mut matched: Vec<(usize, RatVec)> = Vec::new();
        let mut unmatched: Vec<RatVec> = Vec::new();
        for r in &primal.rays {
            match gens.iter().position(|g| g.is_positive_multiple_of(r)) {
                Some(i) => matched.push((i, gens[i].clone())),
                None => unmatched.push(r.clone()),
            }
        }
        matched.sort_by_key(|(i, _)| *i);
        let rays: Vec<RatVec> = matched
            .into_iter()
            .map(|(_, g)| g)
            .chain(unmatched)
            .collect();
        let mut generators = rays.clone();
        for l in &primal.lineality {
            generators.push(l.clone());
            generators.push(-l);
        }
        Ok(Cone {
            dim,
            generators,
            rays,
            lineality: primal.lineality,
            facets,
            equalities,
        })
    }

    pub fn from_int_generators(dim: usize, gens: &[&[i64]]) -> Result<Self, Error> {
        let gens: Vec<RatVec> = gens.iter().map(|g| RatVec::from_ints(g)).collect();
        Self::from_generators(dim, &gens)
    }

    /// Cone `{x : f·x ≥ 0 for every f in normals}`.
    pub fn from_facets(dim: usize, normals: &[RatVec]) -> Result<Self, Error> {
        check_dim(dim)?;
        for f in normals {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.dim(),
                });
            }
        }
        let dd = double_description(dim, normals);
        let mut gens = dd.rays;
        for l in &dd.lineality {
            gens.push(l.clone());
            gens.push(-l);
        }
        Self::from_generators(dim, &gens)
    }

    pub fn zero(dim: usize) -> Result<Self, Error> {
        Self::from_generators(dim, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays followed by `±l` for each lineality basis vector `l`.
    pub fn generators(&self) -> &[RatVec] {
        &self.generators
    }

    /// Extreme rays modulo the lineality space.
    pub fn rays(&self) -> &[RatVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[RatVec] {
        &self.lineality
    }

    /// Primitive inner normals of the facets.
    pub fn facets(&self) -> &[RatVec] {
        &self.facets
    }

    /// Basis of the linear functionals vanishing on the cone.
    pub fn equalities(&self) -> &[RatVec] {
        &self.equalities
    }

    /// Facets together with `±e` for every equality: the full H-description.
    pub fn h_rows(&self) -> Vec<RatVec> {
        let mut rows = self.facets.clone();
        for e in &self.equalities {
            rows.push(e.clone());
            rows.push(-e);
        }
        rows
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dim - self.equalities.len()
    }

    /// `{y : y·x ≥ 0 for all x in self}`.
    pub fn dual(&self) -> Cone {
        Cone::from_generators(self.dim, &self.h_rows()).expect("valid cone data")
    }

    pub fn contains(&self, x: &RatVec) -> Result<bool, Error> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(self.equalities.iter().all(|e| e.dot(x).is_zero())
            && self.facets.iter().all(|f| !f.dot(x).is_negative()))
    }

    /// Exact classification of `x` with a checkable witness.
    pub fn membership(&self, x: &RatVec) -> Result<MembershipCert, Error> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        for e in &self.equalities {
            let v = e.dot(x);
            if !v.is_zero() {
                let normal = if v.is_positive() { -e } else { e.clone() };
                return Ok(MembershipCert {
                    verdict: Verdict::Outside,
                    witness: Witness::Separating(normal),
                });
            }
        }
        if let Some(f) = self.facets.iter().find(|f| f.dot(x).is_negative()) {
            return Ok(MembershipCert {
                verdict: Verdict::Outside,
                witness: Witness::Separating(f.clone()),
            });
        }
        let on_face = !self.equalities.is_empty() || self.facets.iter().any(|f| f.dot(x).is_zero());
        let coefficients = self.combination(x);
        Ok(MembershipCert {
            verdict: if on_face {
                Verdict::Boundary
            } else {
                Verdict::Interior
            },
            witness: Witness::Combination(coefficients),
        })
    }

    /// Nonnegative coefficients over `generators()` reproducing `x`, found on
    /// a linearly independent subset. `x` must lie in the cone.
    fn combination(&self, x: &RatVec) -> Vec<Rat> {
        let n = self.generators.len();
        if x.is_zero() {
            return vec![Rat::zero(); n];
        }
        for size in 1..=self.dim.min(n) {
            for subset in (0..n).combinations(size) {
                let cols: Vec<RatVec> = subset.iter().map(|&i| self.generators[i].clone()).collect();
                let m = RatMat::from_columns(&cols).expect("uniform columns");
                if let Ok(sol) = m.solve(x) {
                    if sol.iter().all(|c| !c.is_negative()) {
                        let mut coeffs = vec![Rat::zero(); n];
                        for (k, &i) in subset.iter().enumerate() {
                            coeffs[i] = sol[k].clone();
                        }
                        return coeffs;
                    }
                }
            }
        }
        unreachable!("point passed the facet test but has no conic combination")
    }

    /// True when every generator of `other` lies in `self`.
    pub fn includes(&self, other: &Cone) -> bool {
        self.dim == other.dim
            && other
                .generators
                .iter()
                .all(|g| self.contains(g).expect("same dimension"))
    }

    /// Set equality by mutual containment.
    pub fn equal(&self, other: &Cone) -> bool {
        self.includes(other) && other.includes(self)
    }

    /// Image under the linear map `m` (acting on column vectors).
    pub fn map(&self, m: &RatMat) -> Result<Cone, Error> {
        let gens = self
            .generators
            .iter()
            .map(|g| m.mul_vec(g))
            .collect::<Result<Vec<_>, _>>()?;
        let gens: Vec<RatVec> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Cone::from_generators(m.rows(), &gens)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[derive(Serialize, Deserialize)]
struct ConeRepr {
    ambient_dim: usize,
    generators: Vec<RatVec>,
    facets: Vec<RatVec>,
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ConeRepr {
            ambient_dim: self.dim,
            generators: self.generators.clone(),
            facets: self.h_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ConeRepr::deserialize(deserializer)?;
        let from_v = Cone::from_generators(repr.ambient_dim, &repr.generators).map_err(D::Error::custom)?;
        let from_h = Cone::from_facets(repr.ambient_dim, &repr.facets).map_err(D::Error::custom)?;
        if !from_v.equal(&from_h) {
            return Err(D::Error::custom(Error::InconsistentRepresentation));
        }
        Ok(from_v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// One nonnegative coefficient per cone generator.
    Combination(Vec<Rat>),
    /// A functional nonnegative on the cone and negative on the point.
    Separating(RatVec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCert {
    pub verdict: Verdict,
    pub witness: Witness,
}

impl MembershipCert {
    /// Rechecks the witness against `cone` and `x` from scratch.
    pub fn verify(&self, cone: &Cone, x: &RatVec) -> bool {
        match (&self.verdict, &self.witness) {
            (Verdict::Outside, Witness::Separating(y)) => {
                y.dim() == x.dim()
                    && y.dot(x).is_negative()
                    && cone.generators().iter().all(|g| !y.dot(g).is_negative())
            }
            (Verdict::Interior | Verdict::Boundary, Witness::Combination(cs)) => {
                if cs.len() != cone.generators().len() || cs.iter().any(Rat::is_negative) {
                    return false;
                }
                let mut sum = RatVec::zeros(x.dim());
                for (c, g) in cs.iter().zip(cone.generators()) {
                    sum = &sum + &g.scale(c);
                }
                &sum == x
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    #[test]
    fn orthant_is_self_dual() {
        for dim in 1..=4 {
            let gens: Vec<RatVec> = (0..dim).map(|i| RatVec::unit(dim, i)).collect();
            let c = Cone::from_generators(dim, &gens).unwrap();
            assert!(c.dual().equal(&c));
            assert_eq!(c.facets().len(), dim);
        }
    }

    #[test]
    fn redundant_generators_are_pruned() {
        let c = Cone::from_int_generators(2, &[&[1, 0], &[2, 0], &[1, 1], &[0, 3]]).unwrap();
        assert_eq!(c.generators(), &[v(&[1, 0]), v(&[0, 3])]);
    }

    #[test]
    fn zero_generator_rejected() {
        assert_eq!(
            Cone::from_int_generators(2, &[&[0, 0]]).unwrap_err(),
            Error::ZeroGenerator
        );
        assert_eq!(
            Cone::from_int_generators(5, &[&[1, 0, 0, 0, 0]]).unwrap_err(),
            Error::UnsupportedDimension(5)
        );
    }

    #[test]
    fn half_plane_and_line() {
        let half = Cone::from_int_generators(2, &[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert_eq!(half.lineality(), &[v(&[0, 1])]);
        assert_eq!(half.facets(), &[v(&[1, 0])]);
        let orthant = Cone::from_int_generators(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(!orthant.equal(&half));
        assert!(half.includes(&orthant));

        let line = Cone::from_int_generators(3, &[&[1, 1, 0], &[-1, -1, 0]]).unwrap();
        assert_eq!(line.dimension(), 1);
        assert!(line.facets().is_empty());
        assert_eq!(line.dual().dimension(), 2);
        assert!(line.dual().dual().equal(&line));
    }

    #[test]
    fn zero_and_whole_space() {
        let z = Cone::zero(3).unwrap();
        assert!(z.generators().is_empty());
        assert_eq!(z.equalities().len(), 3);
        let whole = z.dual();
        assert_eq!(whole.lineality().len(), 3);
        assert!(whole.dual().equal(&z));
        assert!(whole.contains(&v(&[-5, 2, 7])).unwrap());
    }

    #[test]
    fn membership_witnesses() {
        let c = Cone::from_int_generators(3, &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]).unwrap();
        let inside = v(&[4, 1, 2]);
        let cert = c.membership(&inside).unwrap();
        assert_eq!(cert.verdict, Verdict::Interior);
        assert!(cert.verify(&c, &inside));

        let sum = &c.generators()[0] + &c.generators()[1];
        let cert = c.membership(&sum).unwrap();
        assert_eq!(cert.verdict, Verdict::Boundary);
        assert!(cert.verify(&c, &sum));

        let out = -&c.generators()[2];
        let cert = c.membership(&out).unwrap();
        assert_eq!(cert.verdict, Verdict::Outside);
        assert!(cert.verify(&c, &out));
        assert!(!cert.verify(&c, &inside));

        assert!(c.membership(&v(&[1, 0])).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let c = Cone::from_generators(2, &[RatVec::new(vec![rat(1, 2), rat(1, 3)]), v(&[0, 1])]).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"1/2\""));
        let back: Cone = serde_json::from_str(&json).unwrap();
        assert!(back.equal(&c));
        assert_eq!(back.generators(), c.generators());

        let bad = r#"{"ambient_dim":2,"generators":[["1","0"],["0","1"]],"facets":[["1","0"]]}"#;
        assert!(serde_json::from_str::<Cone>(bad).is_err());
    }

    #[test]
    fn linear_image() {
        let c = Cone::from_int_generators(2, &[&[1, 0], &[0, 1]]).unwrap();
        let m = RatMat::from_int_rows(&[&[1, 1], &[0, 1]]).unwrap();
        let img = c.map(&m).unwrap();
        assert!(img.equal(&Cone::from_int_generators(2, &[&[1, 0], &[1, 1]]).unwrap()));
    }

    fn gen_set(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-4i64..5, dim), 1..7)
    }

    proptest! {
        #[test]
        fn double_dual_any_cone(dim in 1usize..5, raw in gen_set(4)) {
            let gens: Vec<RatVec> = raw
                .iter()
                .map(|g| RatVec::from_ints(&g[..dim]))
                .filter(|g| !g.is_zero())
                .collect();
            let c = Cone::from_generators(dim, &gens).unwrap();
            prop_assert!(c.dual().dual().equal(&c));
            for g in &gens {
                prop_assert!(c.contains(g).unwrap());
            }
            for y in c.dual().generators() {
                for g in &gens {
                    prop_assert!(!y.dot(g).is_negative());
                }
            }
        }

        #[test]
        fn witnesses_verify(raw in gen_set(3), p in prop::collection::vec(-6i64..7, 3)) {
            let gens: Vec<RatVec> = raw.iter().map(|g| RatVec::from_ints(g)).filter(|g| !g.is_zero()).collect();
            let c = Cone::from_generators(3, &gens).unwrap();
            let x = RatVec::from_ints(&p);
            let cert = c.membership(&x).unwrap();
            prop_assert!(cert.verify(&c, &x));
            prop_assert_eq!(cert.verdict == Verdict::Outside, !c.contains(&x).unwrap());
        }
    }
}
