//! Polynomials in `X` over F_q(t), the ambient ring of Int(F_q[t]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{ExtInt, FqPoly};
use crate::ratfunc::RatFunc;

/// `coeffs[e]` is the coefficient of `X^e`; the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    field: Field,
    coeffs: Vec<RatFunc>,
}

impl XPoly {
    fn normalized(field: Field, mut coeffs: Vec<RatFunc>) -> XPoly {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        XPoly { field, coeffs }
    }

    pub fn zero(field: &Field) -> XPoly {
        XPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> XPoly {
        XPoly::constant(RatFunc::one(field))
    }

    /// The indeterminate `X`.
    pub fn x(field: &Field) -> XPoly {
        XPoly::normalized(field.clone(), vec![RatFunc::zero(field), RatFunc::one(field)])
    }

    pub fn constant(c: RatFunc) -> XPoly {
        let field = c.field().clone();
        XPoly::normalized(field, vec![c])
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<RatFunc>) -> Result<XPoly> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(XPoly::normalized(field.clone(), coeffs))
    }

    /// Builds from F_q[t] coefficients, lowest power of `X` first.
    pub fn from_poly_coeffs(field: &Field, coeffs: Vec<FqPoly>) -> Result<XPoly> {
        XPoly::from_coeffs(field, coeffs.into_iter().map(RatFunc::from_poly).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of `X^e` (zero beyond the degree).
    pub fn coeff(&self, e: usize) -> RatFunc {
        self.coeffs
            .get(e)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `X`; `-inf` for zero.
    pub fn degree(&self) -> ExtInt {
        match self.coeffs.len() {
            0 => ExtInt::NegInf,
            n => ExtInt::Finite(n as i64 - 1),
        }
    }

    pub fn leading(&self) -> Result<&RatFunc> {
        self.coeffs.last().ok_or(Error::ZeroPolynomial)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(RatFunc::is_one)
    }

    /// True iff every coefficient lies in F_q[t].
    pub fn has_polynomial_coeffs(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_polynomial)
    }

    fn check(&self, other: &XPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &XPoly) -> Result<XPoly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|e| match (self.coeffs.get(e), other.coeffs.get(e)) {
                (Some(a), Some(b)) => a.checked_add(b),
                (Some(a), None) => Ok(a.clone()),
                (None, Some(b)) => Ok(b.clone()),
                (None, None) => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(XPoly::normalized(self.field.clone(), coeffs))
    }

    pub fn checked_sub(&self, other: &XPoly) -> Result<XPoly> {
        self.check(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &XPoly) -> Result<XPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(XPoly::zero(&self.field));
        }
        let mut out = vec![RatFunc::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(XPoly::normalized(self.field.clone(), out))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &RatFunc) -> Result<XPoly> {
        if c.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(XPoly::normalized(self.field.clone(), coeffs))
    }

    /// `self^m` by repeated squaring; `self^0 = 1`.
    pub fn pow(&self, mut m: u64) -> XPoly {
        let mut base = self.clone();
        let mut acc = XPoly::one(&self.field);
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at an element of F_q(t).
    pub fn eval(&self, at: &RatFunc) -> Result<RatFunc> {
        if at.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        self.coeffs
            .iter()
            .rev()
            .try_fold(RatFunc::zero(&self.field), |acc, c| {
                acc.checked_mul(at)?.checked_add(c)
            })
    }

    /// Division by a monic divisor of positive degree:
    /// `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn divmod_monic(&self, divisor: &XPoly) -> Result<(XPoly, XPoly)> {
        self.check(divisor)?;
        if !divisor.is_monic() || divisor.coeffs.len() < 2 {
            return Err(Error::NotMonic);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((XPoly::zero(&self.field), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFunc::zero(&self.field); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top].clone();
            if c.is_zero() {
                continue;
            }
            for (k, dk) in divisor.coeffs.iter().enumerate() {
                if dk.is_zero() {
                    continue;
                }
                let idx = top - dd + k;
                rem[idx] = rem[idx].checked_sub(&c.checked_mul(dk)?)?;
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        Ok((
            XPoly::normalized(self.field.clone(), quot),
            XPoly::normalized(self.field.clone(), rem),
        ))
    }

    pub fn parse(field: &Field, s: &str) -> Result<XPoly> {
        Ok(crate::parse::parse_expr(field, s)?.into_xpoly())
    }

    /// Monic least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> FqPoly {
        let mut lcm = FqPoly::one(&self.field);
        for c in &self.coeffs {
            if c.den().is_one() {
                continue;
            }
            let g = lcm.gcd(c.den()).expect("same field");
            lcm = &lcm.divmod(&g).expect("nonzero gcd").0 * c.den();
        }
        lcm
    }
}

fn render_poly_coeffs(coeffs: &[FqPoly]) -> (String, usize) {
    let mut terms = Vec::new();
    for (e, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let power = match e {
            0 => String::new(),
            1 => "X".to_string(),
            e => format!("X^{e}"),
        };
        terms.push(match (c.is_one(), e) {
            (_, 0) => c.render(true),
            (true, _) => power,
            (false, _) => format!("{}*{power}", c.render(true)),
        });
    }
    let n = terms.len();
    if terms.is_empty() {
        ("0".into(), 0)
    } else {
        (terms.join(" + "), n)
    }
}

/// Rendered as `N/(D)` over the common denominator `D` when any coefficient
/// is not a polynomial, e.g. `(X^2 + X)/(t^2 + t)`.
impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.common_denominator();
        let scaled: Vec<FqPoly> = self
            .coeffs
            .iter()
            .map(|c| {
                c.mul_poly(&den)
                    .and_then(|r| r.as_polynomial().cloned())
                    .expect("common denominator clears every coefficient")
            })
            .collect();
        let (num, terms) = render_poly_coeffs(&scaled);
        if den.is_one() {
            f.write_str(&num)
        } else if terms > 1 {
            write!(f, "({num})/{}", den.render(true))
        } else {
            write!(f, "{num}/{}", den.render(true))
        }
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &XPoly {
            type Output = XPoly;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &XPoly) -> XPoly {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr for XPoly {
            type Output = XPoly;
            fn $method(self, rhs: XPoly) -> XPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(field: &Field, s: &str) -> XPoly {
        XPoly::parse(field, s).unwrap()
    }

    #[test]
    fn ring_examples() {
        let f2 = Field::prime(2).unwrap();
        let x = XPoly::x(&f2);
        assert_eq!(&x * &x, xp(&f2, "X^2"));
        assert_eq!(xp(&f2, "X+1").pow(2), xp(&f2, "X^2+1"));
        assert_eq!(xp(&f2, "t*X^3+X/(t+1)").pow(0), XPoly::one(&f2));
    }

    #[test]
    fn degree_and_leading() {
        let f2 = Field::prime(2).unwrap();
        let x = XPoly::x(&f2);
        assert_eq!(x.degree(), ExtInt::Finite(1));
        assert!(x.leading().unwrap().is_one());
        assert_eq!(XPoly::zero(&f2).degree(), ExtInt::NegInf);
        assert_eq!(XPoly::zero(&f2).leading().unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn evaluation() {
        let f2 = Field::prime(2).unwrap();
        let a = RatFunc::parse(&f2, "t+1").unwrap();
        assert_eq!(XPoly::x(&f2).eval(&a).unwrap(), a);
        let g = xp(&f2, "t*X^3 + X/(t+1) + 1/t");
        assert_eq!(g.eval(&RatFunc::zero(&f2)).unwrap(), g.coeff(0));
    }

    #[test]
    fn monic_division() {
        let f2 = Field::prime(2).unwrap();
        let (q, r) = xp(&f2, "X^2").divmod_monic(&xp(&f2, "X^2+X")).unwrap();
        assert_eq!(q, XPoly::one(&f2));
        assert_eq!(r, xp(&f2, "X"));
        let (q, r) = xp(&f2, "X").divmod_monic(&xp(&f2, "X")).unwrap();
        assert!(q == XPoly::one(&f2) && r.is_zero());
        assert_eq!(
            xp(&f2, "X").divmod_monic(&XPoly::one(&f2)).unwrap_err(),
            Error::NotMonic
        );
        assert_eq!(
            xp(&f2, "X^3").divmod_monic(&xp(&f2, "t*X+1")).unwrap_err(),
            Error::NotMonic
        );
    }

    #[test]
    fn rendering() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(xp(&f2, "(X^2+X)/(t^2+t)").to_string(), "(X^2 + X)/(t^2 + t)");
        assert_eq!(xp(&f2, "X^2/(t^2+t)").to_string(), "X^2/(t^2 + t)");
        assert_eq!(xp(&f2, "(t+1)*X + t + 1").to_string(), "(t + 1)*X + (t + 1)");
        assert_eq!(XPoly::zero(&f2).to_string(), "0");
        let f4 = Field::with_order(4, None).unwrap();
        assert_eq!(xp(&f4, "u*X^2/t").to_string(), "u*X^2/t");
    }
}
