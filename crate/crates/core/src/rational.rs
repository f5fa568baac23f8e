//! Exact rational numbers with an `i64` fast path.
//!
//! Values are kept canonical (reduced, positive denominator, small
//! representation whenever it fits), so structural equality and hashing
//! coincide with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Invariant: `den > 0`, `gcd(num, den) == 1`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_i128(n as i128, 1).expect("nonzero denominator")
    }

    /// Builds `num / den`, reducing to lowest terms.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        if num == 0 {
            return Ok(Self::zero());
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
            Ok(Rational(Repr::Small {
                num: num as i64,
                den: den as i64,
            }))
        } else {
            Ok(Self::from_big(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))
        }
    }

    /// Canonicalises an already reduced big rational.
    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small { num: n, den: d });
            }
        }
        Rational(Repr::Big(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small { num: 0, .. } => Err(Error::DivisionByZero),
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Number of bits needed for numerator and denominator; a size measure for heuristics.
    pub fn height_bits(&self) -> u64 {
        match &self.0 {
            Repr::Small { num, den } => {
                (64 - num.unsigned_abs().leading_zeros() + 64 - den.leading_zeros()) as u64
            }
            Repr::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            if b == d {
                return Self::from_i128(*a as i128 + *c as i128, *b as i128).expect("den");
            }
            let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
            let m = *b as i128 * *d as i128;
            return Self::from_i128(n, m).expect("den");
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128).expect("den");
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big(b) => Self::from_big(-(**b).clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_int(n as i64)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self::from_big(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        self.to_big().cmp(&other.to_big())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                $body(self, rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                $body(&self, rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Rational, b: &Rational| a.add_ref(b));
binop!(Sub, sub, |a: &Rational, b: &Rational| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a: &Rational, b: &Rational| a.mul_ref(b));
binop!(Div, div, |a: &Rational, b: &Rational| a
    .checked_div(b)
    .expect("rational division by zero"));

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(&rhs.neg_ref());
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n`, `-n`, `n/m`; arbitrary size.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = |message: &str| Error::Parse {
            offset: 0,
            message: format!("{message}: `{s}`"),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err("invalid integer"))?;
        let d: BigInt = d.parse().map_err(|_| err("invalid integer"))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn reduces_and_normalises_sign() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(0, -7), Rational::zero());
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(-3, 9).to_string(), "-1/3");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let m = Rational::from_int(i64::MIN + 1) - Rational::one();
        assert_eq!(m.to_string(), i64::MIN.to_string());
        assert!(matches!(m.0, Repr::Big(_)));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) - q(1, 2), Rational::zero());
        assert_eq!(q(2, 3) * q(3, 4), q(1, 2));
        assert_eq!(q(2, 3) / q(4, 9), q(3, 2));
        assert!(q(1, 3) < q(1, 2));
        assert_eq!(Rational::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-5", "7/3", "123456789012345678901234567891/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rational>().unwrap(), q(2, 3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }
}
