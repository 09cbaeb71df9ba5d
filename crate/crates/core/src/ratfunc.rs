//! The rational function field F_q(t).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::poly::{ExtInt, FqPoly};

/// A reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
///
/// The canonical form makes structural equality coincide with equality in
/// F_q(t). Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl RatFunc {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: FqPoly, den: FqPoly) -> Result<RatFunc> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den)?;
            if g.is_one() {
                (num, den)
            } else {
                (num.divmod(&g)?.0, den.divmod(&g)?.0)
            }
        };
        let lead = den.leading().expect("nonzero denominator");
        if lead.is_one() {
            return Ok(RatFunc { num, den });
        }
        let inv = lead.inv()?;
        Ok(RatFunc {
            num: num.scale(&inv)?,
            den: den.scale(&inv)?,
        })
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc {
            num: FqPoly::zero(field),
            den: FqPoly::one(field),
        }
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(FqPoly::one(field))
    }

    pub fn from_poly(p: FqPoly) -> RatFunc {
        let den = FqPoly::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn from_elem(c: &FqElem) -> RatFunc {
        RatFunc::from_poly(FqPoly::constant(c))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True iff the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Result<&FqPoly> {
        if self.is_polynomial() {
            Ok(&self.num)
        } else {
            Err(Error::NotPolynomial)
        }
    }

    /// True iff the value is a nonzero element of F_q.
    pub fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.num.is_constant() && self.den.is_one()
    }

    /// t-adic valuation `v(num) - v(den)`, `+inf` for zero.
    pub fn valuation(&self) -> ExtInt {
        match (self.num.valuation(), self.den.valuation()) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a - b),
            _ => ExtInt::PosInf,
        }
    }

    fn check(&self, other: &RatFunc) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check(other)?;
        if self.den == other.den {
            return RatFunc::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFunc::new(num, &self.den * &other.den)
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::zero(self.field()));
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(RatFunc::from_poly(&self.num * &other.num));
        }
        // cross-cancel first so the final gcd works on smaller operands
        let g1 = self.num.gcd(&other.den)?;
        let g2 = other.num.gcd(&self.den)?;
        let n1 = self.num.divmod(&g1)?.0;
        let d2 = other.den.divmod(&g1)?.0;
        let n2 = other.num.divmod(&g2)?.0;
        let d1 = self.den.divmod(&g2)?.0;
        RatFunc::new(&n1 * &n2, &d1 * &d2)
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Multiplies by a polynomial.
    pub fn mul_poly(&self, p: &FqPoly) -> Result<RatFunc> {
        self.checked_mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn parse(field: &Field, s: &str) -> Result<RatFunc> {
        crate::parse::parse_expr(field, s)?.into_ratfunc()
    }

    /// Text form. With `wrap`, anything that is not a single factor is
    /// parenthesized so it can sit in a product.
    pub(crate) fn render(&self, wrap: bool) -> String {
        if self.den.is_one() {
            return self.num.render(wrap);
        }
        let s = format!("{}/{}", self.num.render(true), self.den.render(true));
        if wrap {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &RatFunc {
            type Output = RatFunc;
            /// Panics on field mismatch (and on division by zero for `/`).
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs)
                    .expect("invalid rational function operation")
            }
        }
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(field: &Field, s: &str) -> RatFunc {
        RatFunc::parse(field, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert!((r(&f2, "t/(t+1)") * r(&f2, "(t+1)/t")).is_one());
        let x = r(&f2, "(t^2+t)/(t+1)");
        assert_eq!(x, r(&f2, "t"));
        assert!(x.is_polynomial());
        assert!((r(&f3, "1/t") + r(&f3, "2/t")).is_zero());
        assert_eq!(r(&f3, "1/t") + r(&f3, "2/t"), RatFunc::zero(&f3));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f3 = Field::prime(3).unwrap();
        let x = r(&f3, "1/(2*t+2)");
        assert!(x.den().is_monic());
        assert_eq!(x.to_string(), "2/(t + 1)");
        assert_eq!(
            RatFunc::new(FqPoly::one(&f3), FqPoly::zero(&f3)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn valuations() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(r(&f2, "1/t").valuation(), ExtInt::Finite(-1));
        assert_eq!(r(&f2, "(t^2+t)/(t+1)").valuation(), ExtInt::Finite(1));
        assert_eq!(r(&f2, "1").valuation(), ExtInt::Finite(0));
        assert_eq!(RatFunc::zero(&f2).valuation(), ExtInt::PosInf);
    }

    #[test]
    fn polynomial_projection() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            r(&f2, "(t^2+t)/t").as_polynomial().unwrap(),
            &FqPoly::parse(&f2, "t+1").unwrap()
        );
        assert!(!r(&f2, "1/(t+1)").is_polynomial());
        assert_eq!(
            r(&f2, "1/(t+1)").as_polynomial().unwrap_err(),
            Error::NotPolynomial
        );
        assert!(RatFunc::zero(&f2).as_polynomial().unwrap().is_zero());
    }

    #[test]
    fn division_by_zero() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            r(&f5, "t").checked_div(&RatFunc::zero(&f5)).unwrap_err(),
            Error::DivisionByZero
        );
    }
}
