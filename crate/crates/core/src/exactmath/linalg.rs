use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::Rat;
use crate::error::Error;

/// Dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVec(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVec(entries.iter().map(|&v| Rat::int(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// Inner product.
    ///
    /// Panics on a dimension mismatch; use [`RatVec::checked_dot`] for
    /// untrusted input.
    pub fn dot(&self, other: &RatVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot product of mismatched vectors");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn checked_dot(&self, other: &RatVec) -> Result<Rat, Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.dot(other))
    }

    pub fn scale(&self, factor: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|x| x * factor).collect())
    }

    /// Positive multiple with integer entries whose gcd is one. The zero
    /// vector maps to itself.
    pub fn primitive(&self) -> RatVec {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x))
            .abs();
        RatVec(ints.into_iter().map(|x| Rat::from(x / &gcd)).collect())
    }

    /// True when `self = c * other` for some rational `c > 0`.
    pub fn is_positive_multiple_of(&self, other: &RatVec) -> bool {
        self.dim() == other.dim()
            && !self.is_zero()
            && !other.is_zero()
            && self.primitive() == other.primitive()
    }

    pub fn concat(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().chain(other.0.iter()).cloned().collect())
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, index: usize) -> &Rat {
        &self.0[index]
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(value: Vec<Rat>) -> Self {
        RatVec(value)
    }
}

impl FromIterator<Rat> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RatVec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a RatVec {
    type Item = &'a Rat;
    type IntoIter = std::slice::Iter<'a, Rat>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add<&RatVec> for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim(), "sum of mismatched vectors");
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&RatVec> for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim(), "difference of mismatched vectors");
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        -&self
    }
}

/// Small dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Row-reduced echelon form together with its pivot columns.
struct Echelon {
    mat: RatMat,
    pivots: Vec<usize>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Rows must all have the same length.
    pub fn from_rows(rows: Vec<RatVec>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, RatVec::dim);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.dim(),
                });
            }
            data.extend(row.into_entries());
        }
        Ok(RatMat {
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        Self::from_rows(rows.iter().map(|r| RatVec::from_ints(r)).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RatVec]) -> Result<Self, Error> {
        Ok(Self::from_rows(cols.to_vec())?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> RatVec {
        RatVec::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> RatVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &RatVec) -> Result<RatVec, Error> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.dim(),
            });
        }
        Ok((0..self.rows).map(|r| self.row(r).dot(x)).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip().expect("nonzero pivot");
            for c in 0..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_basis(&self) -> Vec<RatVec> {
        let e = self.echelon();
        (0..e.pivots.len()).map(|r| e.mat.row(r)).collect()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<RatVec> {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = RatVec::zeros(self.cols).into_entries();
                v[f] = Rat::one();
                for (r, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.mat.get(r, f);
                }
                RatVec::new(v)
            })
            .collect()
    }

    /// Unique exact solution of `A x = b`.
    ///
    /// Overdetermined systems are accepted when consistent. Inconsistent and
    /// rank-deficient systems are reported as errors.
    pub fn solve(&self, b: &RatVec) -> Result<RatVec, Error> {
        if b.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.dim(),
            });
        }
        let mut aug = RatMat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let e = aug.echelon();
        if e.pivots.contains(&self.cols) {
            return Err(Error::Inconsistent);
        }
        if e.pivots.len() < self.cols {
            return Err(Error::RankDeficient {
                rank: e.pivots.len(),
                cols: self.cols,
            });
        }
        Ok((0..self.cols)
            .map(|r| e.mat.get(r, self.cols).clone())
            .collect())
    }
}
