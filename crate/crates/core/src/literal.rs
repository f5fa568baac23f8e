//! Parser for scalar and form literals.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-') factor | INT | 'r' INT | 'e[' INT (',' INT)* ']' | '(' expr ')'
//! ```
//!
//! `rN` is `√N` for a square-free `N` dividing 210. Products of basis monomials
//! are wedge products; division is only allowed by a nonzero scalar.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::{mask_of, Scalar};

/// Sparse linear combination of monomials. Key: sorted labels (empty = scalar part).
pub type RawForm = BTreeMap<Vec<usize>, Scalar>;

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let v = parse_raw(s)?;
    if v.keys().any(|k| !k.is_empty()) {
        return Err(Error::Parse {
            offset: 0,
            message: "expected a scalar, found a form".into(),
        });
    }
    Ok(v.get(&Vec::new()).cloned().unwrap_or_default())
}

pub fn parse_raw(s: &str) -> Result<RawForm> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn add_into(acc: &mut RawForm, key: Vec<usize>, c: Scalar) {
    let e = acc.entry(key.clone()).or_default();
    *e += &c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

fn scalar_value(c: Scalar) -> RawForm {
    let mut m = RawForm::new();
    if !c.is_zero() {
        m.insert(Vec::new(), c);
    }
    m
}

/// Wedge of two sorted label lists: `None` if they overlap, else (merged, sign flipped).
fn merge_labels(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut flips = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            flips += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, flips % 2 == 1))
}

fn mul(a: &RawForm, b: &RawForm) -> RawForm {
    let mut out = RawForm::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            if let Some((k, neg)) = merge_labels(ka, kb) {
                let c = ca * cb;
                add_into(&mut out, k, if neg { -c } else { c });
            }
        }
    }
    out
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<RawForm> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    for (k, c) in self.term()? {
                        add_into(&mut acc, k, c);
                    }
                }
                Some(b'-') => {
                    self.pos += 1;
                    for (k, c) in self.term()? {
                        add_into(&mut acc, k, -c);
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RawForm> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = mul(&acc, &rhs);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.factor()?;
                    if rhs.keys().any(|k| !k.is_empty()) {
                        return Err(Error::Parse {
                            offset: at,
                            message: "cannot divide by a form".into(),
                        });
                    }
                    let d = rhs.get(&Vec::new()).cloned().unwrap_or_default();
                    let inv = d.inverse().map_err(|_| Error::Parse {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                    acc = mul(&acc, &scalar_value(inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RawForm> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.into_iter().map(|(k, c)| (k, -c)).collect())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: Rational = self.integer()?.parse()?;
                Ok(scalar_value(Scalar::from_rational(n)))
            }
            Some(b'r') => {
                self.pos += 1;
                let at = self.pos;
                let d: u32 = self
                    .integer()?
                    .parse()
                    .map_err(|_| self.err("radicand too large"))?;
                let mask = mask_of(d).ok_or_else(|| Error::Parse {
                    offset: at,
                    message: format!("r{d} is not a square-free divisor of 210"),
                })?;
                Ok(scalar_value(Scalar::term(mask, Rational::one())))
            }
            Some(b'e') => {
                self.pos += 1;
                self.expect(b'[')?;
                let mut labels = Vec::new();
                loop {
                    let at = self.pos;
                    let i: usize = self
                        .integer()?
                        .parse()
                        .map_err(|_| self.err("index too large"))?;
                    if i == 0 {
                        return Err(Error::Parse {
                            offset: at,
                            message: "basis labels start at 1".into(),
                        });
                    }
                    labels.push(i);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected `,` or `]`")),
                    }
                }
                let mut acc = scalar_value(Scalar::one());
                for l in labels {
                    let mut m = RawForm::new();
                    m.insert(vec![l], Scalar::one());
                    acc = mul(&acc, &m);
                }
                Ok(acc)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("7/8").unwrap(), Scalar::frac(7, 8));
        let x = parse_scalar("-1/4*r5").unwrap();
        assert_eq!(x, Scalar::frac(-1, 4) * Scalar::sqrt(5).unwrap());
        assert_eq!(parse_scalar("r5*r7").unwrap(), Scalar::sqrt(35).unwrap());
        assert_eq!(parse_scalar("(1 + r2)*(1 - r2)").unwrap(), Scalar::from_int(-1));
        assert_eq!(parse_scalar("1/(1+r2)").unwrap(), parse_scalar("r2 - 1").unwrap());
    }

    #[test]
    fn rejects() {
        assert!(parse_scalar("r11").is_err());
        assert!(parse_scalar("r4").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("2 +").is_err());
        assert!(parse_scalar("e[1]").is_err());
        assert!(parse_raw("e[1]/e[2]").is_err());
        assert!(parse_raw("e[0]").is_err());
    }

    #[test]
    fn forms() {
        let v = parse_raw("-1/4*r5*e[2,5,8,9] + e[2,1] + e[1,1]").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[&vec![1, 2]], Scalar::from_int(-1));
        assert_eq!(
            v[&vec![2, 5, 8, 9]],
            Scalar::frac(-1, 4) * Scalar::sqrt(5).unwrap()
        );
        let w = parse_raw("e[1]*e[2] - e[2]*e[1]").unwrap();
        assert_eq!(w[&vec![1, 2]], Scalar::from_int(2));
    }
}
