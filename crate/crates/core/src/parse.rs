//! One expression grammar for every text form in the crate.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | unary)*     juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ['^' integer]
//! atom   := integer | 'u' | 't' | 'X' | '(' expr ')'
//! ```
//!
//! Everything evaluates in F_q(t)[X]; callers then project down to the ring
//! they need. Division is only allowed by expressions free of `X`.

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::poly::FqPoly;
use crate::ratfunc::RatFunc;
use crate::xpoly::XPoly;

const MAX_EXPONENT: u64 = 1 << 16;

/// A parsed expression, held as an element of F_q(t)[X].
#[derive(Debug, Clone)]
pub struct Parsed(XPoly);

impl Parsed {
    pub fn into_xpoly(self) -> XPoly {
        self.0
    }

    pub fn into_ratfunc(self) -> Result<RatFunc> {
        match self.0.coeffs().len() {
            0 => Ok(RatFunc::zero(self.0.field())),
            1 => Ok(self.0.coeffs()[0].clone()),
            _ => Err(Error::Parse {
                pos: 0,
                msg: "expected an expression free of X".into(),
            }),
        }
    }

    pub fn into_fq_poly(self) -> Result<FqPoly> {
        let r = self.into_ratfunc()?;
        r.as_polynomial().cloned().map_err(|_| Error::Parse {
            pos: 0,
            msg: "expected a polynomial in t".into(),
        })
    }

    pub fn into_elem(self) -> Result<FqElem> {
        let p = self.into_fq_poly()?;
        if p.is_constant() {
            Ok(p.coeff(0))
        } else {
            Err(Error::Parse {
                pos: 0,
                msg: "expected a field element".into(),
            })
        }
    }
}

pub fn parse_expr(field: &Field, src: &str) -> Result<Parsed> {
    let mut p = Parser {
        field,
        src: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(Parsed(v))
}

impl FqElem {
    pub fn parse(field: &Field, s: &str) -> Result<FqElem> {
        parse_expr(field, s)?.into_elem()
    }
}

struct Parser<'a> {
    field: &'a Field,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = self.divide(acc, d, at)?;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, b'u' | b't' | b'X' | b'(') => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(&self, n: XPoly, d: XPoly, at: usize) -> Result<XPoly> {
        let d = match d.coeffs().len() {
            0 => return Err(Error::DivisionByZero),
            1 => d.coeffs()[0].inv()?,
            _ => {
                return Err(Error::Parse {
                    pos: at,
                    msg: "cannot divide by an expression involving X".into(),
                })
            }
        };
        n.scale(&d)
    }

    fn unary(&mut self) -> Result<XPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<XPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            if e > MAX_EXPONENT {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn atom(&mut self) -> Result<XPoly> {
        let f = self.field;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let c = f.elem(v % f.p());
                Ok(XPoly::constant(RatFunc::from_elem(&c)))
            }
            Some(b'u') => {
                let g = f
                    .generator()
                    .ok_or_else(|| self.err("`u` is only defined in extension fields"))?;
                self.pos += 1;
                Ok(XPoly::constant(RatFunc::from_elem(&g)))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(XPoly::constant(RatFunc::from_poly(FqPoly::t(f))))
            }
            Some(b'X') => {
                self.pos += 1;
                Ok(XPoly::x(f))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
