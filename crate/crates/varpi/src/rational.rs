//! Exact rational scalars.
//!
//! Every quantity in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in canonical form (reduced, positive denominator). There is
//! no floating point anywhere in the computational path; decimal strings are
//! produced only for display.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `numer / denom`. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `numer / denom` over big integers. Panics if `denom == 0`.
    pub fn from_big_ratio(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Integer power; negative exponents invert (panic on zero base).
    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rational(self.0.pow(exp))
    }

    /// Decimal rendering with `sig` significant digits, for display only.
    /// Trailing zeros are trimmed; exact integers render without a point.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let n = self.numer().abs();
        let d = self.denom().clone();

        // Exponent e with 10^e <= n/d < 10^(e+1).
        let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
        loop {
            let scaled = shift10(&n, sig as i64 - 1 - e);
            let q = &scaled / &d;
            let len = q.to_string().len() as i64;
            if len > sig as i64 {
                e += 1;
            } else if len < sig as i64 {
                e -= 1;
            } else {
                break;
            }
        }

        // One extra digit for round-half-up.
        let scaled = shift10(&n, sig as i64 - e);
        let mut q = &scaled / &d;
        let last = (&q % 10u32).to_i64().unwrap();
        q /= 10u32;
        if last >= 5 {
            q += 1u32;
            if q.to_string().len() > sig {
                q /= 10u32;
                e += 1;
            }
        }

        let digits = q.to_string();
        let mut body = if e >= sig as i64 || e < -6 {
            // scientific form
            let mut m = digits.clone();
            m.insert(1, '.');
            let m = trim_zeros(&m);
            format!("{}e{}", m, e)
        } else if e >= 0 {
            let point = (e + 1) as usize;
            let (int, frac) = digits.split_at(point.min(digits.len()));
            let int = if point > digits.len() {
                let mut s = digits.clone();
                s.push_str(&"0".repeat(point - digits.len()));
                s
            } else {
                int.to_string()
            };
            trim_zeros(&format!("{}.{}", int, frac))
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            trim_zeros(&format!("0.{}{}", zeros, digits))
        };
        if neg {
            body.insert(0, '-');
        }
        body
    }
}

fn shift10(n: &BigInt, e: i64) -> BigInt {
    if e >= 0 {
        n * BigInt::from(10u32).pow(e as u32)
    } else {
        n / BigInt::from(10u32).pow((-e) as u32)
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_bigint(acc)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRationalError(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer: BigInt = num_str.trim().parse().map_err(|_| bad())?;
        let denom: BigInt = match den_str {
            Some(d) => d.trim().parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_int(n as i64)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(r("3/4").to_string(), "3/4");
        assert_eq!(r("-6/8").to_string(), "-3/4");
        assert_eq!(r("5").to_string(), "5");
        assert_eq!(r("10/5").to_string(), "2");
        assert_eq!(r("0/7"), Rational::zero());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn canonical_form() {
        let v = Rational::new(-4, -6);
        assert_eq!(v.numer(), &BigInt::from(2));
        assert_eq!(v.denom(), &BigInt::from(3));
        let w = Rational::new(4, -6);
        assert!(w.is_negative());
        assert_eq!(w.to_string(), "-2/3");
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Rational::new(1, 3);
        let sum = &third + &third + third.clone();
        assert_eq!(sum, Rational::one());
        assert_eq!(Rational::new(1, 2).pow(-2), Rational::from_int(4));
        assert_eq!(
            Rational::new(2, 3) * Rational::new(9, 4),
            Rational::new(3, 2)
        );
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Rational::one());
        assert_eq!(factorial(5), Rational::from_int(120));
        assert_eq!(factorial(10), Rational::from_int(3628800));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::zero().to_decimal(12), "0");
        assert_eq!(Rational::new(3, 2).to_decimal(12), "1.5");
        assert_eq!(Rational::new(1, 3).to_decimal(12), "0.333333333333");
        assert_eq!(Rational::new(62, 15).to_decimal(12), "4.13333333333");
        assert_eq!(Rational::new(-1, 4).to_decimal(12), "-0.25");
        assert_eq!(Rational::from_int(4140).to_decimal(12), "4140");
        assert_eq!(Rational::new(1, 300).to_decimal(6), "0.00333333");
        assert_eq!(Rational::new(2, 3).to_decimal(3), "0.667");
        assert_eq!(Rational::new(999, 1000).to_decimal(2), "1");
        assert_eq!(Rational::new(1, 1_000_000_000).to_decimal(3), "1e-9");
    }

    #[test]
    fn serde_round_trip() {
        let v = Rational::new(-7, 12);
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, "\"-7/12\"");
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, v);
        let int: Rational = serde_json::from_str("\"42\"").unwrap();
        assert_eq!(int, Rational::from_int(42));
    }
}
