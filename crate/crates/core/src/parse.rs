//! Text form of polynomials.
//!
//! ```text
//! polynomial ::= [sign] term {('+'|'-') term}
//! term       ::= [coeff '*'] factor {'*' factor} | coeff
//! factor     ::= var ['^' uint]
//! coeff      ::= int | int '/' uint
//! ```
//! Whitespace is insignificant.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;

pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        ring,
    };
    let poly = p.polynomial()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => break,
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, FieldElement)> {
        let field = self.ring.field();
        let mut exps = vec![0u32; self.ring.nvars()];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.eat(b'/') { self.uint()? } else { BigInt::from(1) };
                let c = field.from_fraction(&num, &den)?;
                if !self.eat(b'*') {
                    return Ok((Monomial::new(exps), c));
                }
                c
            }
            _ => field.one(),
        };
        loop {
            let (var, e) = self.factor()?;
            exps[var] = exps[var]
                .checked_add(e)
                .ok_or_else(|| self.error("exponent overflow"))?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if name.is_empty() || name.as_bytes()[0].is_ascii_digit() {
            self.pos = start;
            return Err(self.error("expected a variable"));
        }
        let var = self
            .ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let e = if self.eat(b'^') {
            let n = self.uint()?;
            u32::try_from(n).map_err(|_| self.error("malformed exponent"))?
        } else {
            1
        };
        Ok((var, e))
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::ring::Ring;
    use proptest::prelude::*;

    fn xy() -> RingRef {
        Ring::new(&["x", "y"], Field::Rational, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn basic_terms() {
        let p = parse_polynomial("x^2 + 3*x*y", &xy()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "x^2 + 3*x*y");
    }

    #[test]
    fn cancellation() {
        assert!(parse_polynomial("1/2*x - 1/2*x", &xy()).unwrap().is_zero());
    }

    #[test]
    fn unknown_variable() {
        assert_eq!(
            parse_polynomial("x*z^2", &xy()).unwrap_err(),
            Error::UnknownVariable("z".into())
        );
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_polynomial("x^", &xy()), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x^-1", &xy()), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x + ", &xy()), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x y", &xy()), Err(Error::Parse { .. })));
    }

    #[test]
    fn division_by_p() {
        let r = Ring::new(&["x"], Field::Prime(7), MonomialOrder::Grevlex).unwrap();
        assert!(matches!(parse_polynomial("1/14*x", &r), Err(Error::DivisionByZero(_))));
        assert_eq!(parse_polynomial("1/2*x", &r).unwrap().to_string(), "4*x");
    }

    #[test]
    fn constants_and_signs() {
        let r = xy();
        assert_eq!(parse_polynomial("-x + 2", &r).unwrap().to_string(), "-x + 2");
        assert_eq!(parse_polynomial(" - 3/4 * y ^ 2 ", &r).unwrap().to_string(), "-3/4*y^2");
    }

    fn poly_text() -> impl Strategy<Value = String> {
        let term = (-5i64..6, 1u32..4, 0u32..3, 0u32..3)
            .prop_map(|(n, d, a, b)| format!("{n}/{d}*x^{a}*y^{b}").replacen("-", "", 1));
        proptest::collection::vec((any::<bool>(), term), 1..5).prop_map(|ts| {
            ts.into_iter()
                .map(|(neg, t)| format!("{} {t}", if neg { "-" } else { "+" }))
                .collect::<Vec<_>>()
                .join(" ")
        })
    }

    proptest! {
        #[test]
        fn print_parse_fixed_point(text in poly_text()) {
            let r = xy();
            let p = parse_polynomial(&text, &r).unwrap();
            let printed = p.to_string();
            let q = parse_polynomial(&printed, &r).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert_eq!(printed, q.to_string());
        }
    }
}
