use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `numer / denom`.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn int(value: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Exact square root when both numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rat(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Decimal rendering rounded half away from zero. Display-layer only.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), places);
        let scaled = self.numer() * &scale;
        let denom = self.denom();
        let (mut q, r) = scaled.abs().div_rem(denom);
        if &(r * 2) >= denom {
            q += 1;
        }
        let digits = q.to_string();
        let negative = self.is_negative() && !q.is_zero();
        let (int_part, frac_part) = if places == 0 {
            (digits, String::new())
        } else if digits.len() > places {
            let split = digits.len() - places;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{digits:0>places$}"))
        };
        let sign = if negative { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    pub fn as_bigrational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(value: i64) -> Self {
        Rat::int(value)
    }
}

impl From<u32> for Rat {
    fn from(value: u32) -> Self {
        Rat::int(i64::from(value))
    }
}

impl From<BigInt> for Rat {
    fn from(value: BigInt) -> Self {
        Rat(BigRational::from_integer(value))
    }
}

impl From<BigRational> for Rat {
    fn from(value: BigRational) -> Self {
        Rat(value)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Rat::from_bigints(parse_int(p)?, parse_int(q)?),
            None => Ok(Rat::from(parse_int(s)?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl Div<&Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        &self / rhs
    }
}

impl Div<Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self / &rhs
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for `Rat::new`.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(6, -8);
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(rat(10, 5).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rat>().unwrap(), rat(2, 3));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn serde_uses_strings() {
        let json = serde_json::to_string(&rat(3, 4)).unwrap();
        assert_eq!(json, "\"3/4\"");
        let back: Rat = serde_json::from_str("\"-5\"").unwrap();
        assert_eq!(back, Rat::int(-5));
    }

    #[test]
    fn decimals() {
        assert_eq!(rat(2, 3).to_decimal(6), "0.666667");
        assert_eq!(rat(-1, 8).to_decimal(2), "-0.13");
        assert_eq!(rat(300, 1).to_decimal(6), "300.000000");
        assert_eq!(rat(-1, 1000).to_decimal(2), "0.00");
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(rat(16, 9).sqrt_exact(), Some(rat(4, 3)));
        assert_eq!(Rat::int(10).sqrt_exact(), None);
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn reduction_is_idempotent(p in -1000i64..1000, q in 1i64..1000) {
            let r = rat(p, q);
            let again = Rat::from_bigints(r.numer().clone(), r.denom().clone()).unwrap();
            prop_assert_eq!(&again, &r);
            prop_assert_eq!(r.numer().gcd(r.denom()), BigInt::one());
        }
    }
}
