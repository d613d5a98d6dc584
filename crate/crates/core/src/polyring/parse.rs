//! Text and structured forms of polynomials.
//!
//! The text grammar accepts everything the printer emits, including the
//! factored form: `+ - *`, `^` with a nonnegative integer exponent,
//! parentheses, integer and `a/b` rational literals, and juxtaposition as
//! multiplication (`3 x1^2 y3 t`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::{Coeff, Rational};
use super::poly::{Poly, QPoly};
use super::var::{Monomial, Var};
use crate::error::{Error, Result};

pub const POLY_SCHEMA: &str = "dunkl.poly/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub exponents: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub schema: String,
    pub terms: Vec<TermRecord>,
}

impl<C: Coeff> Poly<C> {
    pub fn parse(s: &str) -> Result<Self> {
        let q = Parser::new(s).parse_all()?;
        Poly::from_rational(&q).ok_or_else(|| Error::NotIntegral(q.to_string()))
    }

    pub fn to_record(&self) -> PolyRecord {
        PolyRecord {
            schema: POLY_SCHEMA.to_string(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermRecord {
                    coefficient: c.to_string(),
                    exponents: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &PolyRecord) -> Result<Self> {
        if rec.schema != POLY_SCHEMA {
            return Err(Error::Parse {
                offset: 0,
                message: format!("unknown schema {:?}", rec.schema),
            });
        }
        let mut out = QPoly::zero();
        for t in &rec.terms {
            let c = parse_rational(&t.coefficient).ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("bad coefficient {:?}", t.coefficient),
            })?;
            let mut pairs = Vec::new();
            for (name, &e) in &t.exponents {
                let v = Var::parse(name).ok_or_else(|| Error::Parse {
                    offset: 0,
                    message: format!("unknown variable {name:?}"),
                })?;
                pairs.push((v, e));
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Poly::from_rational(&out).ok_or_else(|| Error::NotIntegral(out.to_string()))
    }
}

impl<C: Coeff> std::str::FromStr for Poly<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Poly::parse(s)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Some(Rational::from_integer(s.parse::<BigInt>().ok()?)),
        Some((a, b)) => {
            let den: BigInt = b.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(a.trim().parse().ok()?, den))
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    fn parse_all(mut self) -> Result<QPoly> {
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                -self.term()?
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.bump();
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return self.err("division only by nonzero constants");
                    }
                    let inv = Rational::one() / d.constant_term();
                    acc = acc.scale(&inv);
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let e = self.digits()?;
            let e: u32 = e.parse().map_err(|_| Error::Parse {
                offset: self.pos,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(&self.src[start..self.pos])
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let p = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let v: BigInt = d.parse().expect("digits");
                Ok(QPoly::constant(Rational::from_integer(v)))
            }
            Some('-') => {
                self.bump();
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.bump();
                }
                let name = &self.src[start..self.pos];
                match Var::parse(name) {
                    Some(v) => Ok(QPoly::var(v)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable {name:?}"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}
