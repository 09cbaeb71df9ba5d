//! Finite fields F_q, q = p^n.
//!
//! Elements are stored as integer codes `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! where `c_i` are the coordinates in the power basis of the generator `u`.
//! The code order is the enumeration order: least-significant coordinate
//! fastest, starting at zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Fields up to this order get precomputed operation tables.
const TABLE_LIMIT: u64 = 256;

/// Largest supported prime.
pub const MAX_PRIME: u64 = 1 << 31;

/// Built-in irreducible moduli, coefficients listed from the constant term up.
const BUILTIN_MODULI: &[(u64, u64, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (7, 2, &[1, 0, 1]),
];

/// Defining data of a finite field.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Monic modulus, constant term first; `[0, 1]` (the polynomial `u`) for prime fields.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Shared handle to a [`FieldSpec`]. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl std::ops::Deref for Field {
    type Target = FieldSpec;
    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p == other.p && self.n == other.n && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}[u]/({})", self.p, self.render_modulus())
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^n` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut n = 0u32;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

impl Field {
    /// Builds F_{p^n}. For `n > 1` without an explicit modulus the built-in
    /// table is consulted. A supplied modulus is checked for irreducibility.
    pub fn new(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::OutOfRange("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, n })?;

        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            let m = match modulus {
                Some(m) => {
                    if m.len() != n as usize + 1 || m[n as usize] % p != 1 {
                        return Err(Error::BadModulus(format!(
                            "expected a monic polynomial of degree {n}"
                        )));
                    }
                    m.iter().map(|c| c % p).collect::<Vec<_>>()
                }
                None => BUILTIN_MODULI
                    .iter()
                    .find(|(bp, bn, _)| *bp == p && *bn == n as u64)
                    .map(|(_, _, m)| m.to_vec())
                    .ok_or(Error::NoBuiltinModulus(q))?,
            };
            if !modulus_is_irreducible(p, &m) {
                return Err(Error::ReducibleModulus { p });
            }
            m
        };

        let mut spec = FieldSpec {
            p,
            n,
            q,
            modulus,
            tables: None,
        };
        if n > 1 && q <= TABLE_LIMIT {
            spec.tables = Some(spec.build_tables());
        }
        Ok(Field(Arc::new(spec)))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64, modulus: Option<&[u64]>) -> Result<Field> {
        match prime_power(q) {
            Some((p, n)) => Field::new(p, n, modulus),
            None => Err(Error::NotPrime(q)),
        }
    }

    pub fn elem(&self, code: u64) -> FqElem {
        debug_assert!(code < self.q);
        FqElem {
            field: self.clone(),
            code,
        }
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    /// The image of an integer under Z -> F_q.
    pub fn from_int(&self, v: i64) -> FqElem {
        self.elem(self.int_code(v))
    }

    /// The generator `u` of the power basis; `None` for prime fields.
    pub fn generator(&self) -> Option<FqElem> {
        (self.n > 1).then(|| self.elem(self.p))
    }

    /// All q elements in code order.
    pub fn elements(&self) -> Vec<FqElem> {
        (0..self.q).map(|c| self.elem(c)).collect()
    }
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The defining modulus (constant term first); `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        (self.n > 1).then_some(&self.modulus[..])
    }

    pub fn render_modulus(&self) -> String {
        render_coords(&self.modulus, self.p)
    }

    pub(crate) fn int_code(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if let Some(t) = &self.tables {
            return t.add[(a * self.q + b) as usize] as u64;
        }
        self.encode(
            &self
                .decode(a)
                .iter()
                .zip(self.decode(b))
                .map(|(x, y)| (x + y) % self.p)
                .collect::<Vec<_>>(),
        )
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if self.n == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if let Some(t) = &self.tables {
            return t.neg[a as usize] as u64;
        }
        self.encode(
            &self
                .decode(a)
                .iter()
                .map(|&x| (self.p - x) % self.p)
                .collect::<Vec<_>>(),
        )
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            return a * b % self.p;
        }
        if let Some(t) = &self.tables {
            return t.mul[(a * self.q + b) as usize] as u64;
        }
        self.mul_slow(a, b)
    }

    /// Multiplicative inverse of a nonzero code.
    pub(crate) fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            return Ok(t.inv[a as usize] as u64);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub(crate) fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    fn encode(&self, coords: &[u64]) -> u64 {
        coords.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.decode(a), self.decode(b));
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        // modulus is monic: u^n = -(m_0 + ... + m_{n-1} u^{n-1})
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for k in 0..n {
                let sub = c * self.modulus[k] % self.p;
                let idx = top - n + k;
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        self.encode(&prod[..n])
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q {
            let da = self.decode(a as u64);
            for b in 0..q {
                let db = self.decode(b as u64);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
                add[a * q + b] = self.encode(&s) as u32;
                let m = self.mul_slow(a as u64, b as u64);
                mul[a * q + b] = m as u32;
                if m == 1 {
                    inv[a] = b as u32;
                }
                if s.iter().all(|&c| c == 0) {
                    neg[a] = b as u32;
                }
            }
        }
        Tables { add, mul, neg, inv }
    }

    /// Renders a code in the `u` grammar (decimal for prime fields).
    pub(crate) fn render_code(&self, code: u64) -> String {
        if self.n == 1 {
            code.to_string()
        } else {
            render_coords(&self.decode(code), self.p)
        }
    }

    /// True if the rendering of `code` is a single token (no `+`).
    pub(crate) fn code_is_atomic(&self, code: u64) -> bool {
        self.n == 1 || self.decode(code).iter().filter(|&&c| c != 0).count() <= 1
    }
}

fn render_coords(coords: &[u64], _p: u64) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coords.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (c, e) {
            (c, 0) => c.to_string(),
            (1, 1) => "u".to_string(),
            (c, 1) => format!("{c}*u"),
            (1, e) => format!("u^{e}"),
            (c, e) => format!("{c}*u^{e}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Trial division of a monic polynomial over F_p by every monic polynomial
/// of degree 1..=deg/2.
fn modulus_is_irreducible(p: u64, m: &[u64]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                divisor.push(rest % p);
                rest /= p;
            }
            divisor.push(1);
            if divides_mod_p(p, &divisor, m) {
                return false;
            }
        }
    }
    true
}

fn divides_mod_p(p: u64, monic_divisor: &[u64], dividend: &[u64]) -> bool {
    let mut r = dividend.to_vec();
    let dd = monic_divisor.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (k, &dk) in monic_divisor.iter().enumerate() {
            let idx = top - dd + k;
            r[idx] = (r[idx] + p - c * dk % p) % p;
        }
    }
    r[..dd].iter().all(|&c| c == 0)
}

/// An element of F_q bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElem {
    field: Field,
    code: u64,
}

impl FqElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Position of this element in [`Field::elements`].
    pub fn code(&self) -> u64 {
        self.code
    }

    /// Power-basis coordinates, constant coordinate first.
    pub fn coords(&self) -> Vec<u64> {
        self.field.decode(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn check(&self, other: &FqElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &FqElem) -> Result<FqElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.add(self.code, other.code)))
    }

    pub fn checked_sub(&self, other: &FqElem) -> Result<FqElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.sub(self.code, other.code)))
    }

    pub fn checked_mul(&self, other: &FqElem) -> Result<FqElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.mul(self.code, other.code)))
    }

    pub fn inv(&self) -> Result<FqElem> {
        Ok(self.field.elem(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> FqElem {
        self.field.elem(self.field.pow(self.code, e))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render_code(self.code))
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &FqElem {
            type Output = FqElem;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &FqElem) -> FqElem {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: FqElem) -> FqElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        self.field.elem(self.field.neg(self.code))
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}
