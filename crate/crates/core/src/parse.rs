//! Polynomial expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*  // adjacency multiplies
//! factor := '-' factor | atom ('^' uint)?
//! atom   := uint | variable | '(' expr ')'
//! ```
//!
//! A run of letters is split greedily into declared variable names, longest
//! name first, so `XY` reads as `X*Y` in `k[X,Y]`. Integer literals are
//! reduced into the coefficient field, and `/` divides by a nonzero
//! constant, so `1/2*X^2` is read the way it is printed.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(f)
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if !rhs.is_constant() || rhs.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "can only divide by a nonzero constant".into() });
                    }
                    acc = acc.scale(&rhs.field().inv(&rhs.terms()[0].1));
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::Parse { pos: start, msg: "expected a non-negative exponent".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits();
                let v: BigInt = s.parse().map_err(|_| self.err("bad integer literal"))?;
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
        }
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        let mut end = start;
        while end < self.src.len() && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_') {
            end += 1;
        }
        let run = std::str::from_utf8(&self.src[start..end]).expect("ascii");
        let best = self
            .ring
            .names()
            .iter()
            .enumerate()
            .filter(|(_, n)| run.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((i, n)) => {
                self.pos += n.len();
                Ok(Polynomial::var(self.ring, i))
            }
            None => {
                let name: String = run.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
                Err(Error::UnknownVariable { name, pos: start })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::Monomial;

    fn ring() -> Arc<PolyRing> {
        PolyRing::default_field(&["X", "Y", "Z"]).unwrap()
    }

    #[test]
    fn adjacency_is_multiplication() {
        let r = ring();
        let f = parse_poly("XY", &r).unwrap();
        assert_eq!(f, Polynomial::monomial(&r, Monomial::new(&[1, 1, 0])));
    }

    #[test]
    fn linear_form() {
        let r = ring();
        let f = parse_poly("X+Y+Z", &r).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.is_homogeneous());
        assert_eq!(f.degree(), Some(1));
    }

    #[test]
    fn rational_coefficients() {
        let q = PolyRing::new(&["X", "Y"], Field::Rational).unwrap();
        let f = parse_poly("1/2*X^2 - 3/4XY", &q).unwrap();
        assert_eq!(f.to_string(), "1/2*X^2 - 3/4*X*Y");
        assert_eq!(parse_poly(&f.to_string(), &q).unwrap(), f);
        let half = parse_poly("1/2", &ring()).unwrap();
        assert_eq!(&half * &parse_poly("2", &ring()).unwrap(), Polynomial::one(&ring()));
        assert!(parse_poly("X/0", &q).is_err());
        assert!(parse_poly("X/Y", &q).is_err());
        assert!(parse_poly("X/32003", &ring()).is_err());
    }

    #[test]
    fn cancellation_gives_zero() {
        assert!(parse_poly("X - X", &ring()).unwrap().is_zero());
    }

    #[test]
    fn precedence_and_parentheses() {
        let r = ring();
        assert_eq!(parse_poly("-X^2", &r).unwrap(), -&parse_poly("X*X", &r).unwrap());
        assert_eq!(parse_poly("2(X+Y)Z", &r).unwrap(), parse_poly("2XZ + 2YZ", &r).unwrap());
        assert_eq!(parse_poly("(X+Y)^2", &r).unwrap(), parse_poly("X^2 + 2XY + Y^2", &r).unwrap());
    }

    #[test]
    fn coefficients_reduce_into_field() {
        let r = PolyRing::new(&["X"], Field::Prime(5)).unwrap();
        assert_eq!(parse_poly("7X", &r).unwrap(), parse_poly("2X", &r).unwrap());
        assert!(parse_poly("5X", &r).unwrap().is_zero());
    }

    #[test]
    fn longest_name_wins() {
        let r = PolyRing::default_field(&["x", "xy", "y"]).unwrap();
        let f = parse_poly("xyx", &r).unwrap();
        assert_eq!(f, Polynomial::monomial(&r, Monomial::new(&[1, 1, 0])));
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(parse_poly("X + W", &r), Err(Error::UnknownVariable { name: "W".into(), pos: 4 }));
        assert!(matches!(parse_poly("X + ", &r), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("(X", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("X^", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("X ) ", &r), Err(Error::Parse { pos: 2, .. })));
    }
}
