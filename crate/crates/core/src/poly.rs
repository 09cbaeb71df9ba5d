//! The polynomial ring F_q[t].

use std::cmp::Reverse;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};

/// An integer extended by the two infinities.
///
/// Variant order gives the ordering `NegInf < Finite(_) < PosInf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PosInf => f.write_str("+inf"),
        }
    }
}

/// A polynomial in `t` over F_q.
///
/// `coeffs[i]` is the code of the coefficient of `t^i`; trailing zeros are
/// always stripped so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    field: Field,
    coeffs: Vec<u64>,
}

impl FqPoly {
    fn normalized(field: Field, mut coeffs: Vec<u64>) -> FqPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { field, coeffs }
    }

    pub fn zero(field: &Field) -> FqPoly {
        FqPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> FqPoly {
        FqPoly::constant(&field.one())
    }

    /// The indeterminate `t`.
    pub fn t(field: &Field) -> FqPoly {
        FqPoly::monomial(&field.one(), 1)
    }

    pub fn constant(c: &FqElem) -> FqPoly {
        FqPoly::normalized(c.field().clone(), vec![c.code()])
    }

    /// `c * t^e`.
    pub fn monomial(c: &FqElem, e: usize) -> FqPoly {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c.code();
        FqPoly::normalized(c.field().clone(), coeffs)
    }

    /// Builds a polynomial from coefficient codes, constant term first.
    pub fn from_codes(field: &Field, coeffs: Vec<u64>) -> FqPoly {
        assert!(
            coeffs.iter().all(|&c| c < field.q()),
            "coefficient code out of range"
        );
        FqPoly::normalized(field.clone(), coeffs)
    }

    pub fn from_elems(field: &Field, coeffs: &[FqElem]) -> Result<FqPoly> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(FqPoly::normalized(
            field.clone(),
            coeffs.iter().map(FqElem::code).collect(),
        ))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficient codes, constant term first.
    pub fn codes(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FqElem {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree in `t`; `-inf` for the zero polynomial.
    pub fn degree(&self) -> ExtInt {
        match self.coeffs.len() {
            0 => ExtInt::NegInf,
            n => ExtInt::Finite(n as i64 - 1),
        }
    }

    /// t-adic valuation: exponent of the lowest nonzero term, `+inf` for zero.
    pub fn valuation(&self) -> ExtInt {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(i) => ExtInt::Finite(i as i64),
            None => ExtInt::PosInf,
        }
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().map(|&c| self.field.elem(c))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> FqPoly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale_code(inv)
            }
        }
    }

    pub(crate) fn scale_code(&self, c: u64) -> FqPoly {
        if c == 0 {
            return FqPoly::zero(&self.field);
        }
        let f = &self.field;
        FqPoly::normalized(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn scale(&self, c: &FqElem) -> Result<FqPoly> {
        if c.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.scale_code(c.code()))
    }

    fn check(&self, other: &FqPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check(other)?;
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = f.add(*o, s);
        }
        Ok(FqPoly::normalized(f.clone(), out))
    }

    pub fn checked_sub(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FqPoly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        if f.n() == 1 {
            // p < 2^31 keeps acc + a*b below 2^63
            let p = f.p();
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    out[i + j] = (out[i + j] + a * b) % p;
                }
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coeffs.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Ok(FqPoly::normalized(f.clone(), out))
    }

    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut base = self.clone();
        let mut acc = FqPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = quot * divisor + rem`, `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        self.check(divisor)?;
        let Some(&lead) = divisor.coeffs.last() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(lead)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[top - dd] = factor;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(factor, dk));
            }
        }
        rem.truncate(dd);
        Ok((
            FqPoly::normalized(f.clone(), quot),
            FqPoly::normalized(f.clone(), rem),
        ))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Evaluates at a field element by Horner's rule.
    pub fn eval(&self, x: &FqElem) -> Result<FqElem> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x.code()), c));
        Ok(f.elem(v))
    }

    /// Lowest-degree term degree for nonzero polynomials.
    pub(crate) fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn parse(field: &Field, s: &str) -> Result<FqPoly> {
        crate::parse::parse_expr(field, s)?.into_fq_poly()
    }

    /// Canonical text form; `wrap` parenthesizes multi-term output.
    pub(crate) fn render(&self, wrap: bool) -> String {
        let f = &self.field;
        let mut terms = Vec::new();
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if f.code_is_atomic(c) {
                f.render_code(c)
            } else {
                format!("({})", f.render_code(c))
            };
            terms.push(match (c, e) {
                (_, 0) => coef,
                (1, 1) => "t".to_string(),
                (1, e) => format!("t^{e}"),
                (_, 1) => format!("{coef}*t"),
                (_, e) => format!("{coef}*t^{e}"),
            });
        }
        match terms.len() {
            0 => "0".into(),
            1 => terms.pop().unwrap(),
            _ if wrap => format!("({})", terms.join(" + ")),
            _ => terms.join(" + "),
        }
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &FqPoly {
            type Output = FqPoly;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &FqPoly) -> FqPoly {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr for FqPoly {
            type Output = FqPoly;
            fn $method(self, rhs: FqPoly) -> FqPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        let f = &self.field;
        FqPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Neg for FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        -&self
    }
}

/// All `q^s` polynomials of degree `< s`, in the ordering used to index the
/// valuation matrix.
///
/// Zero comes first. The rest are grouped by the degree `d` of their lowest
/// nonzero term, `d` running from `s - 1` down to `0`. Inside a group the
/// polynomials are sorted by their coefficient sequence read from `t^{s-1}`
/// down to `t^0`, comparing coefficients by enumeration index.
pub fn enumerate_deg_below(field: &Field, s: usize) -> Vec<FqPoly> {
    let q = field.q();
    let count = q.checked_pow(s as u32).expect("q^s overflows u64");
    let mut all: Vec<Vec<u64>> = (0..count)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(s);
            for _ in 0..s {
                coeffs.push(idx % q);
                idx /= q;
            }
            coeffs
        })
        .collect();
    all.sort_by_key(|c| {
        let lowest = c.iter().position(|&x| x != 0);
        let high_first: Vec<u64> = c.iter().rev().copied().collect();
        (lowest.is_some(), Reverse(lowest), high_first)
    });
    all.into_iter()
        .map(|c| FqPoly::normalized(field.clone(), c))
        .collect()
}
