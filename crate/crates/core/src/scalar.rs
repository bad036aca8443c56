//! Exact scalars: Gaussian rationals `x + y·i` with `x, y ∈ ℚ`.
//!
//! Each rational component is kept in lowest terms with a positive
//! denominator. Components that fit in `i64` are stored inline and only
//! promoted to big integers when an operation overflows; results are demoted
//! again whenever they fit, so the representation of a value is unique and
//! structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("empty scalar literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed scalar literal `{0}`")]
    Malformed(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn small_ok(r: &Ratio<i64>) -> bool {
    // keep i64::MIN out so negation never overflows
    *r.numer() != i64::MIN && *r.denom() != i64::MIN
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(Ratio::from_integer(1)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_big(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn new(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(num, den)))
    }

    fn from_small(r: Ratio<i64>) -> Self {
        if small_ok(&r) {
            Rational(Repr::Small(r))
        } else {
            Rational(Repr::Big(to_big(&r)))
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rational(Repr::Small(Ratio::new_raw(n, d)))
            }
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(b) => b.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(r) => Self::from_small(r.recip()),
            Repr::Big(b) => Self::from_big(b.recip()),
        })
    }

    fn binop(
        &self,
        rhs: &Rational,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = small(a, b) {
                return Self::from_small(r);
            }
        }
        Self::from_big(big(&self.to_big(), &rhs.to_big()))
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                // cross-multiplication in i128 cannot overflow
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.binop(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if rhs.is_zero() {
            return self.clone();
        }
        self.binop(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if self.is_zero() || rhs.is_zero() {
            return Rational::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        self.binop(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.binop(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(r) => Rational(Repr::Small(-*r)),
            Repr::Big(b) => Rational::from_big(-b),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let malformed = || ScalarParseError::Malformed(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| malformed())?;
        let den: BigInt = den.parse().map_err(|_| malformed())?;
        Rational::new(num, den).ok_or_else(|| ScalarParseError::ZeroDenominator(s.to_string()))
    }
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_integer(1)
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::new(Rational::from_integer(n), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        let r = Rational::new(BigInt::from(num), BigInt::from(den)).expect("nonzero denominator");
        Scalar::new(r, Rational::zero())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(Rational::from_integer(re), Rational::from_integer(im))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -&self.im)
    }

    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Scalar::new(self.re.recip()?, Rational::zero()));
        }
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        Some(Scalar::new(&self.re / &norm, -(&self.im / &norm)))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self.is_real(), rhs.is_real()) {
            (true, true) => Scalar::new(&self.re * &rhs.re, Rational::zero()),
            (true, false) => Scalar::new(&self.re * &rhs.re, &self.re * &rhs.im),
            (false, true) => Scalar::new(&self.re * &rhs.re, &self.im * &rhs.re),
            (false, false) => Scalar::new(
                &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
                &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
            ),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.is_real() {
            return Scalar::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::new(r, Rational::zero())
    }
}

/// Formats as `a/b`, `c/d i` or `a/b+c/d i`; round-trips through [`FromStr`].
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{} i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_imag(part: &str, whole: &str) -> Result<Rational, ScalarParseError> {
    // `part` has its trailing `i` removed and keeps its sign
    let t = part.trim();
    match t {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => {
            let (sign, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let body = body.trim().trim_end_matches('*').trim();
            let r: Rational = body.parse().map_err(|e| match e {
                ScalarParseError::ZeroDenominator(_) => {
                    ScalarParseError::ZeroDenominator(whole.to_string())
                }
                _ => ScalarParseError::Malformed(whole.to_string()),
            })?;
            Ok(if sign { -r } else { r })
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let Some(stripped) = s.strip_suffix('i') else {
            return Ok(Scalar::new(s.parse()?, Rational::zero()));
        };
        // split at the last sign that is not leading
        let bytes = stripped.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| bytes[k] == b'+' || bytes[k] == b'-');
        let (re, im) = match split {
            Some(k) => {
                let re: Rational = stripped[..k].parse().map_err(|e| match e {
                    ScalarParseError::ZeroDenominator(_) => {
                        ScalarParseError::ZeroDenominator(s.to_string())
                    }
                    _ => ScalarParseError::Malformed(s.to_string()),
                })?;
                (re, parse_imag(&stripped[k..], s)?)
            }
            None => (Rational::zero(), parse_imag(stripped, s)?),
        };
        Ok(Scalar::new(re, im))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string like \"1/2+3/4 i\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                let n = BigInt::from(v);
                Ok(Scalar::new(Rational::new(n, BigInt::one()).unwrap(), Rational::zero()))
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for lit in ["0", "3", "-1/2", "1/2+3/4 i", "1/2-3/4 i", "-5/3 i", "7+1 i"] {
            assert_eq!(s(lit).to_string(), lit);
        }
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("2i"), Scalar::gaussian(0, 2));
        assert_eq!(s("1+i"), Scalar::gaussian(1, 1));
        assert_eq!(s("2/4"), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn malformed_literals_are_rejected() {
        assert!(matches!("1/0".parse::<Scalar>(), Err(ScalarParseError::ZeroDenominator(_))));
        assert!(matches!("1+1/0 i".parse::<Scalar>(), Err(ScalarParseError::ZeroDenominator(_))));
        assert!(matches!("abc".parse::<Scalar>(), Err(ScalarParseError::Malformed(_))));
        assert!(matches!("".parse::<Scalar>(), Err(ScalarParseError::Empty)));
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_integer(-1));
        let a = s("1/2+3 i");
        let b = s("-2/3+1/5 i");
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(a.recip().unwrap() * &a, Scalar::one());
        assert!(Scalar::zero().recip().is_none());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_integer(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.re().numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let back = &sq / &big;
        assert_eq!(back, big);
        // canonical small representation after demotion
        assert_eq!(format!("{:?}", back), i64::MAX.to_string());
        let min = Scalar::from_integer(i64::MIN);
        assert_eq!(-(-min.clone()), min);
    }

    #[test]
    fn canonical_zero() {
        let a = s("3/7-2 i");
        let z = &a - &a;
        assert_eq!(z, Scalar::zero());
        assert_eq!(z.re().denom(), BigInt::one());
    }
}
