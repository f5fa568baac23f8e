//! Exact arithmetic in the multiquadratic field Q(√2, √3, √5, √7).
//!
//! An element is a sparse sum `Σ q_m · √(m)` over square-free products `m`
//! of the primes 2, 3, 5, 7, each encoded as a 4-bit mask.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The primes adjoined, in mask bit order.
pub const PRIMES: [u32; 4] = [2, 3, 5, 7];

type Terms = SmallVec<[(u8, Rational); 2]>;

/// Element of Q(√2, √3, √5, √7) in canonical form (terms sorted by mask, no zeros).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Terms,
}

/// Square-free integer whose square root is represented by `mask`.
pub fn mask_value(mask: u8) -> u32 {
    PRIMES
        .iter()
        .enumerate()
        .filter(|(b, _)| mask & (1 << b) != 0)
        .map(|(_, p)| *p)
        .product()
}

/// Mask for `√n` if `n` is a square-free product of 2, 3, 5, 7.
pub fn mask_of(n: u32) -> Option<u8> {
    let mut m = n;
    let mut mask = 0u8;
    for (b, p) in PRIMES.iter().enumerate() {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return None;
            }
            mask |= 1 << b;
        }
    }
    (m == 1).then_some(mask)
}

fn push_term(terms: &mut Terms, mask: u8, c: Rational) {
    match terms.binary_search_by_key(&mask, |t| t.0) {
        Ok(i) => {
            terms[i].1 += &c;
            if terms[i].1.is_zero() {
                terms.remove(i);
            }
        }
        Err(i) => {
            if !c.is_zero() {
                terms.insert(i, (mask, c));
            }
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: SmallVec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = Terms::new();
        if !q.is_zero() {
            terms.push((0, q));
        }
        Scalar { terms }
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num, den).expect("nonzero denominator"))
    }

    /// `√n` for square-free `n` built from 2, 3, 5, 7.
    pub fn sqrt(n: u32) -> Result<Self> {
        let mask = mask_of(n).ok_or_else(|| Error::Parse {
            offset: 0,
            message: format!("√{n} is not in Q(√2, √3, √5, √7) as a basis element"),
        })?;
        Ok(Self::term(mask, Rational::one()))
    }

    /// `c · √(mask)`.
    pub fn term(mask: u8, c: Rational) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.push((mask & 0xF, c));
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|t| t.0 == 0)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &Rational)> {
        self.terms.iter().map(|(m, q)| (*m, q))
    }

    /// Union of masks present, used to find the smallest subfield containing the element.
    pub fn support_masks(&self) -> impl Iterator<Item = u8> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    pub fn coefficient(&self, mask: u8) -> Rational {
        self.terms
            .binary_search_by_key(&mask, |t| t.0)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    /// Image under the automorphism `√p ↦ -√p` for every prime bit set in `primes`.
    pub fn conjugate(&self, primes: u8) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    if (m & primes).count_ones() % 2 == 1 {
                        (*m, -c)
                    } else {
                        (*m, c.clone())
                    }
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(m, c)] => {
                // (c√m)^{-1} = √m / (c·m)
                let denom = c * &Rational::from_int(mask_value(*m) as i64);
                Ok(Self::term(*m, denom.recip()?))
            }
            _ => {
                // Multiply by Galois conjugates until the norm is rational.
                let mut norm = self.clone();
                let mut acc = Scalar::one();
                for b in 0..4u8 {
                    let p = 1u8 << b;
                    if norm.terms.iter().any(|t| t.0 & p != 0) {
                        let c = norm.conjugate(p);
                        acc = &acc * &c;
                        norm = &norm * &c;
                    }
                }
                let n = norm.as_rational().expect("norm is rational");
                Ok(acc.scale(&n.recip()?))
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numerical value, for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64() * (mask_value(*m) as f64).sqrt())
            .sum()
    }

    fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut out = Terms::with_capacity(self.terms.len().max(other.terms.len()));
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Scalar { terms: out }
    }

    fn neg_ref(&self) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let ([(0, q)], _) = (self.terms.as_slice(), ()) {
            return other.scale(q);
        }
        if let [(0, q)] = other.terms.as_slice() {
            return self.scale(q);
        }
        let mut out = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let shared = mask_value(ma & mb) as i64;
                let mut c = ca * cb;
                if shared != 1 {
                    c *= &Rational::from_int(shared);
                }
                push_term(&mut out, ma ^ mb, c);
            }
        }
        Scalar { terms: out }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_ref(b));
binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_ref(b));
binop!(Div, div, |a: &Scalar, b: &Scalar| a
    .checked_div(b)
    .expect("scalar division by zero"));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        for (m, c) in &rhs.terms {
            push_term(&mut self.terms, *m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            push_term(&mut self.terms, *m, -c);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    /// Format accepted back by [`Scalar::from_str`], e.g. `1/2 + 3/2*r6 - r7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if *m == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "r{}", mask_value(*m))?;
            } else {
                write!(f, "{a}*r{}", mask_value(*m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::literal::parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u32) -> Scalar {
        Scalar::sqrt(n).unwrap()
    }

    #[test]
    fn products_of_roots() {
        assert_eq!(&r(2) * &r(3), r(6));
        assert_eq!(&r(2) * &r(2), Scalar::from_int(2));
        assert_eq!(&r(6) * &r(10), &Scalar::from_int(2) * &r(15));
        assert_eq!(&r(210) * &r(210), Scalar::from_int(210));
    }

    #[test]
    fn inverses() {
        assert_eq!(r(2).inverse().unwrap(), Scalar::frac(1, 2) * r(2));
        let a = Scalar::one() + r(2);
        let b = Scalar::one() - r(2);
        assert_eq!(&a * &b, Scalar::from_int(-1));
        assert_eq!(a.inverse().unwrap(), -b);
        let x = Scalar::frac(1, 3) + r(5) - Scalar::frac(2, 7) * r(21) + r(70);
        assert!((&x * &x.inverse().unwrap()).is_one());
        assert_eq!(Scalar::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mask_round_trip() {
        for m in 0..16u8 {
            assert_eq!(mask_of(mask_value(m)), Some(m));
        }
        assert_eq!(mask_of(4), None);
        assert_eq!(mask_of(11), None);
    }

    #[test]
    fn display() {
        let x = Scalar::frac(1, 2) - Scalar::frac(3, 2) * r(6) + r(7);
        assert_eq!(x.to_string(), "1/2 - 3/2*r6 + r7");
        assert_eq!((-r(3)).to_string(), "-r3");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
