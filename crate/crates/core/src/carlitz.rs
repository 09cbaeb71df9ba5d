//! Carlitz's polynomials `psi_m`, factorials `F_m`, `G_k`, `g_k` and the
//! binomial polynomials `beta_k = G_k / g_k`, together with expansions in the
//! `G`- and `beta`-bases and the integer-valuedness criterion built on them.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{enumerate_deg_below, ExtInt, FqPoly};
use crate::ratfunc::RatFunc;
use crate::xpoly::XPoly;

/// Default bound on `q^m` for every constructor exponential in `m`.
pub const DEFAULT_SIZE_LIMIT: u64 = 4096;

/// Base-`q` digits of a non-negative integer, least significant first.
///
/// The top digit is nonzero; zero has no digits at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitVector {
    q: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn base(&self) -> u64 {
        self.q
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at position `i`, zero past the top.
    pub fn get(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * self.q as u128 + d as u128)
    }
}

pub fn digits(k: u64, q: u64) -> Result<DigitVector> {
    if q < 2 {
        return Err(Error::BadBase(q));
    }
    let mut out = Vec::new();
    let mut rest = k;
    while rest > 0 {
        out.push(rest % q);
        rest /= q;
    }
    Ok(DigitVector { q, digits: out })
}

/// True iff the base-`q` digits of `k` and `n - k` add up to those of `n`
/// position by position (no carries).
pub fn digit_additivity(q: u64, n: u64, k: u64) -> Result<bool> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let (a, g, d) = (digits(n, q)?, digits(k, q)?, digits(n - k, q)?);
    Ok((0..a.len()).all(|i| a.get(i) == g.get(i) + d.get(i)))
}

/// Both sides of the digit inequality `sum_i (gamma_i + delta_i) i q^i <= s q^s`
/// for `k` and `q^s - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitInequality {
    pub lhs: u128,
    pub rhs: u128,
    pub strict: bool,
}

pub fn lemma_digit_inequality(q: u64, s: u32, k: u64) -> Result<DigitInequality> {
    if q < 2 {
        return Err(Error::BadBase(q));
    }
    let overflow = || Error::OutOfRange(format!("q^s overflows for q = {q}, s = {s}"));
    let n = q.checked_pow(s).ok_or_else(overflow)?;
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds q^s = {n}")));
    }
    let (gamma, delta) = (digits(k, q)?, digits(n - k, q)?);
    let mut lhs = 0u128;
    let mut qi = 1u128;
    for i in 0..=s as usize {
        let term = (gamma.get(i) + delta.get(i)) as u128 * i as u128 * qi;
        lhs = lhs.checked_add(term).ok_or_else(overflow)?;
        if i < s as usize {
            qi *= q as u128;
        }
    }
    let rhs = s as u128 * n as u128;
    Ok(DigitInequality {
        lhs,
        rhs,
        strict: lhs < rhs,
    })
}

/// The factors of `beta_k = prod_i beta_{q^i}^{alpha_i}`, one `(q^i, alpha_i)`
/// pair per nonzero digit, including position 0 where `beta_1 = X`.
pub fn decompose_beta(q: u64, k: u64) -> Result<Vec<(u64, u64)>> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be positive".into()));
    }
    let dv = digits(k, q)?;
    Ok(dv
        .digits()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| (q.pow(i as u32), a))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    G,
    Beta,
}

/// Coefficients of a polynomial in the `G_k` or `beta_k` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarlitzExpansion {
    pub basis: Basis,
    /// `coeffs[k]` multiplies the `k`-th basis element.
    pub coeffs: Vec<RatFunc>,
}

impl CarlitzExpansion {
    /// Index of the first coefficient outside F_q[t], if any.
    pub fn first_non_polynomial(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_polynomial())
    }
}

/// Carlitz polynomials over a fixed field with memoized `psi_m`, `F_m` and
/// `g_k`. The caches only ever hold values equal to a fresh computation.
pub struct Carlitz {
    field: Field,
    size_limit: u64,
    psi_cache: Mutex<HashMap<u32, XPoly>>,
    fact_cache: Mutex<HashMap<u32, FqPoly>>,
    g_cache: Mutex<HashMap<u64, FqPoly>>,
}

impl Carlitz {
    pub fn new(field: &Field) -> Carlitz {
        Carlitz::with_size_limit(field, DEFAULT_SIZE_LIMIT)
    }

    pub fn with_size_limit(field: &Field, size_limit: u64) -> Carlitz {
        Carlitz {
            field: field.clone(),
            size_limit,
            psi_cache: Mutex::default(),
            fact_cache: Mutex::default(),
            g_cache: Mutex::default(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size_limit(&self) -> u64 {
        self.size_limit
    }

    /// Fails with `SizeLimit` unless `q^m` is within the configured limit.
    pub fn check_power(&self, what: &'static str, m: u32) -> Result<u64> {
        let needed = (self.field.q() as u128).checked_pow(m).unwrap_or(u128::MAX);
        if needed > self.size_limit as u128 {
            return Err(Error::SizeLimit {
                what,
                needed,
                limit: self.size_limit,
            });
        }
        Ok(needed as u64)
    }

    /// `psi_m(X) = prod_{deg f < m} (X - f)`, taken literally as a product.
    pub fn psi(&self, m: u32) -> Result<XPoly> {
        self.check_power("psi_m", m)?;
        if let Some(p) = self.psi_cache.lock().unwrap().get(&m) {
            return Ok(p.clone());
        }
        // coefficients in F_q[t], lowest power of X first
        let mut acc = vec![FqPoly::one(&self.field)];
        for f in enumerate_deg_below(&self.field, m as usize) {
            let mut next = vec![FqPoly::zero(&self.field); acc.len() + 1];
            for (e, c) in acc.iter().enumerate() {
                next[e + 1] = &next[e + 1] + c;
                if !f.is_zero() {
                    next[e] = &next[e] - &(c * &f);
                }
            }
            acc = next;
        }
        let psi = XPoly::from_poly_coeffs(&self.field, acc)?;
        self.psi_cache.lock().unwrap().insert(m, psi.clone());
        Ok(psi)
    }

    /// `F_m = prod_{i=1}^m (t^{q^i} - t)^{q^{m-i}}`, with `F_0 = 1`.
    pub fn factorial_factor(&self, m: u32) -> Result<FqPoly> {
        let qm = self.check_power("F_m", m)?;
        if let Some(p) = self.fact_cache.lock().unwrap().get(&m) {
            return Ok(p.clone());
        }
        let q = self.field.q();
        let t = FqPoly::t(&self.field);
        let mut acc = FqPoly::one(&self.field);
        for i in 1..=m {
            let qi = q.pow(i) as usize;
            let base = &FqPoly::monomial(&self.field.one(), qi) - &t;
            acc = &acc * &base.pow(qm / q.pow(i));
        }
        self.fact_cache.lock().unwrap().insert(m, acc.clone());
        Ok(acc)
    }

    fn digits_checked(&self, k: u64, what: &'static str) -> Result<DigitVector> {
        let dv = digits(k, self.field.q())?;
        if !dv.is_empty() {
            self.check_power(what, dv.len() as u32 - 1)?;
        }
        Ok(dv)
    }

    /// `g_k = prod_i F_i^{alpha_i}` over the base-`q` digits of `k`.
    pub fn g(&self, k: u64) -> Result<FqPoly> {
        let dv = self.digits_checked(k, "g_k")?;
        if let Some(p) = self.g_cache.lock().unwrap().get(&k) {
            return Ok(p.clone());
        }
        let mut acc = FqPoly::one(&self.field);
        for (i, &a) in dv.digits().iter().enumerate() {
            if a > 0 {
                acc = &acc * &self.factorial_factor(i as u32)?.pow(a);
            }
        }
        self.g_cache.lock().unwrap().insert(k, acc.clone());
        Ok(acc)
    }

    /// `G_k = prod_i psi_i^{alpha_i}`, monic of degree `k` in `X`.
    pub fn big_g(&self, k: u64) -> Result<XPoly> {
        let dv = self.digits_checked(k, "G_k")?;
        let mut acc = XPoly::one(&self.field);
        for (i, &a) in dv.digits().iter().enumerate() {
            if a > 0 {
                acc = &acc * &self.psi(i as u32)?.pow(a);
            }
        }
        Ok(acc)
    }

    /// The Carlitz binomial polynomial `beta_k = G_k / g_k`.
    pub fn beta(&self, k: u64) -> Result<XPoly> {
        let g = self.g(k)?;
        let inv = RatFunc::new(FqPoly::one(&self.field), g)?;
        self.big_g(k)?.scale(&inv)
    }

    fn check_field(&self, f: &XPoly) -> Result<()> {
        if f.field() == &self.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Coefficients `A_k` with `f = sum_k A_k G_k`, peeled off from the top
    /// degree down since every `G_n` is monic of degree `n`.
    pub fn expand_g_basis(&self, f: &XPoly) -> Result<CarlitzExpansion> {
        self.check_field(f)?;
        let n = match f.degree() {
            ExtInt::Finite(n) => n as usize,
            _ => {
                return Ok(CarlitzExpansion {
                    basis: Basis::G,
                    coeffs: Vec::new(),
                })
            }
        };
        let mut coeffs = vec![RatFunc::zero(&self.field); n + 1];
        let mut rest = f.clone();
        while let ExtInt::Finite(d) = rest.degree() {
            let d = d as usize;
            let a = rest.leading()?.clone();
            rest = &rest - &self.big_g(d as u64)?.scale(&a)?;
            coeffs[d] = a;
        }
        Ok(CarlitzExpansion {
            basis: Basis::G,
            coeffs,
        })
    }

    /// Coefficients `B_k = A_k g_k` with `f = sum_k B_k beta_k`.
    pub fn expand_beta_basis(&self, f: &XPoly) -> Result<CarlitzExpansion> {
        let g_exp = self.expand_g_basis(f)?;
        let coeffs = g_exp
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.mul_poly(&self.g(k as u64)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(CarlitzExpansion {
            basis: Basis::Beta,
            coeffs,
        })
    }

    /// `sum_k c_k b_k` for the basis named by the expansion.
    pub fn reconstruct(&self, e: &CarlitzExpansion) -> Result<XPoly> {
        let mut acc = XPoly::zero(&self.field);
        for (k, c) in e.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = match e.basis {
                Basis::G => self.big_g(k as u64)?,
                Basis::Beta => self.beta(k as u64)?,
            };
            acc = acc.checked_add(&b.scale(c)?)?;
        }
        Ok(acc)
    }

    /// Integer-valuedness on F_q[t]: every `beta`-basis coefficient of `f`
    /// must be a polynomial.
    pub fn is_integer_valued(&self, f: &XPoly) -> Result<bool> {
        Ok(self.expand_beta_basis(f)?.first_non_polynomial().is_none())
    }

    /// The Carlitz binomial coefficient `g_n / (g_k g_{n-k})`.
    pub fn binomial(&self, n: u64, k: u64) -> Result<RatFunc> {
        if k > n {
            return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
        }
        let num = self.g(n)?;
        let den = &self.g(k)? * &self.g(n - k)?;
        RatFunc::new(num, den)
    }

    /// True iff the binomial coefficient equals 1.
    pub fn binom_is_one(&self, n: u64, k: u64) -> Result<bool> {
        Ok(self.binomial(n, k)?.is_one())
    }

    /// True iff the binomial coefficient is a nonzero constant.
    pub fn binom_is_unit(&self, n: u64, k: u64) -> Result<bool> {
        Ok(self.binomial(n, k)?.is_nonzero_constant())
    }

    /// Multiplies out `prod beta_{q^i}^{alpha_i}` and compares with `beta_k`.
    pub fn verify_decomposition(&self, k: u64) -> Result<bool> {
        let mut prod = XPoly::one(&self.field);
        for (power, exp) in decompose_beta(self.field.q(), k)? {
            prod = &prod * &self.beta(power)?.pow(exp);
        }
        Ok(prod == self.beta(k)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64) -> Carlitz {
        Carlitz::new(&Field::with_order(q, None).unwrap())
    }

    fn xp(c: &Carlitz, s: &str) -> XPoly {
        XPoly::parse(c.field(), s).unwrap()
    }

    fn tp(c: &Carlitz, s: &str) -> FqPoly {
        FqPoly::parse(c.field(), s).unwrap()
    }

    #[test]
    fn digit_vectors() {
        assert_eq!(digits(7, 2).unwrap().digits(), [1, 1, 1]);
        assert_eq!(digits(9, 3).unwrap().digits(), [0, 0, 1]);
        assert!(digits(0, 5).unwrap().is_empty());
        assert_eq!(digits(3, 1).unwrap_err(), Error::BadBase(1));
        assert_eq!(digits(1234, 7).unwrap().value(), 1234);
    }

    #[test]
    fn psi_small_cases() {
        let c2 = ctx(2);
        assert_eq!(c2.psi(0).unwrap(), xp(&c2, "X"));
        assert_eq!(c2.psi(1).unwrap(), xp(&c2, "X^2+X"));
    }

    #[test]
    fn psi_one_is_x_to_q_minus_x() {
        // brute force: multiply (X - c) over all constants by hand
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let c = ctx(q);
            let mut brute = XPoly::one(c.field());
            for e in c.field().elements() {
                let lin = &XPoly::x(c.field()) - &XPoly::constant(RatFunc::from_elem(&e));
                brute = &brute * &lin;
            }
            let expect = &XPoly::x(c.field()).pow(q) - &XPoly::x(c.field());
            assert_eq!(brute, expect);
            assert_eq!(c.psi(1).unwrap(), expect, "q = {q}");
        }
    }

    #[test]
    fn factorial_factors() {
        let c2 = ctx(2);
        assert!(c2.factorial_factor(0).unwrap().is_one());
        assert_eq!(c2.factorial_factor(1).unwrap(), tp(&c2, "t^2+t"));
        for q in [2, 3] {
            let c = ctx(q);
            for m in 0..=3u32 {
                let fm = c.factorial_factor(m).unwrap();
                assert!(fm.is_monic());
                assert_eq!(fm.degree(), ExtInt::Finite((m as u64 * q.pow(m)) as i64));
            }
        }
    }

    #[test]
    fn g_and_beta_examples() {
        let c2 = ctx(2);
        assert_eq!(c2.beta(1).unwrap(), xp(&c2, "X"));
        assert_eq!(ctx(3).beta(1).unwrap(), XPoly::x(ctx(3).field()));
        assert_eq!(c2.beta(2).unwrap(), xp(&c2, "(X^2+X)/(t^2+t)"));
        assert_eq!(c2.g(5).unwrap(), tp(&c2, "(t^4+t)*(t^2+t)^2"));
        assert!(c2.beta(0).unwrap() == XPoly::one(c2.field()));
    }

    #[test]
    fn beta_degree_and_leading_coefficient() {
        for q in [2, 3] {
            let c = ctx(q);
            for k in 0..=10u64 {
                let b = c.beta(k).unwrap();
                assert_eq!(b.degree(), ExtInt::Finite(k as i64));
                let lead = b.leading().unwrap();
                assert_eq!(lead.inv().unwrap(), RatFunc::from_poly(c.g(k).unwrap()));
            }
        }
        let c2 = ctx(2);
        assert_eq!(
            c2.beta(2).unwrap().leading().unwrap(),
            &RatFunc::parse(c2.field(), "1/(t^2+t)").unwrap()
        );
    }

    #[test]
    fn beta4_times_g4_divided_by_big_g4() {
        let c2 = ctx(2);
        let g4 = RatFunc::from_poly(c2.g(4).unwrap());
        let lhs = c2.beta(4).unwrap().scale(&g4).unwrap();
        let (q, r) = lhs.divmod_monic(&c2.big_g(4).unwrap()).unwrap();
        assert_eq!(q, XPoly::one(c2.field()));
        assert!(r.is_zero());
    }

    #[test]
    fn expansions() {
        let c2 = ctx(2);
        let e = c2.expand_g_basis(&xp(&c2, "X^2")).unwrap();
        let one = RatFunc::one(c2.field());
        let zero = RatFunc::zero(c2.field());
        assert_eq!(e.coeffs, vec![zero.clone(), one.clone(), one.clone()]);
        let b = c2.expand_beta_basis(&xp(&c2, "X^2")).unwrap();
        assert_eq!(
            b.coeffs,
            vec![
                zero.clone(),
                one.clone(),
                RatFunc::parse(c2.field(), "t^2+t").unwrap()
            ]
        );
        for k in 0..6 {
            let e = c2.expand_g_basis(&c2.big_g(k).unwrap()).unwrap();
            assert!(e.coeffs[k as usize].is_one());
            assert!(e.coeffs[..k as usize].iter().all(RatFunc::is_zero));
            let e = c2.expand_beta_basis(&c2.beta(k).unwrap()).unwrap();
            assert!(e.coeffs[k as usize].is_one());
            assert!(e.coeffs[..k as usize].iter().all(RatFunc::is_zero));
        }
        assert!(c2
            .expand_g_basis(&XPoly::zero(c2.field()))
            .unwrap()
            .coeffs
            .is_empty());
    }

    #[test]
    fn integer_valued_criterion() {
        let c2 = ctx(2);
        assert!(c2.is_integer_valued(&c2.beta(2).unwrap().pow(2)).unwrap());
        let bad = xp(&c2, "X^2/(t^2+t)");
        assert!(!c2.is_integer_valued(&bad).unwrap());
        assert_eq!(
            c2.expand_beta_basis(&bad).unwrap().first_non_polynomial(),
            Some(1)
        );
        // the criterion agrees with evaluation at 1
        let v = bad.eval(&RatFunc::one(c2.field())).unwrap();
        assert!(!v.is_polynomial());
        assert!(c2.is_integer_valued(&xp(&c2, "t*X^3 + (t+1)*X + 1")).unwrap());
    }

    #[test]
    fn binomials() {
        for q in [2, 3, 4] {
            let c = ctx(q);
            assert!(c.binomial(7, 0).unwrap().is_one());
            let expect = &FqPoly::monomial(&c.field().one(), q as usize) - &FqPoly::t(c.field());
            assert_eq!(c.binomial(q, 1).unwrap(), RatFunc::from_poly(expect));
            for s in 1..=2u32 {
                let n = q.pow(s);
                for k in 1..n {
                    assert!(!c.binom_is_unit(n, k).unwrap());
                }
                assert!(c.binom_is_unit(n, n).unwrap());
            }
        }
        assert!(matches!(ctx(2).binomial(2, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn lemma_examples() {
        let r = lemma_digit_inequality(2, 2, 1).unwrap();
        assert_eq!(
            r,
            DigitInequality {
                lhs: 2,
                rhs: 8,
                strict: true
            }
        );
        for (q, s) in [(2u64, 3), (3, 2), (5, 1)] {
            let n = q.pow(s);
            for k in [0, n] {
                let r = lemma_digit_inequality(q, s, k).unwrap();
                assert_eq!(r.lhs, r.rhs);
                assert!(!r.strict);
            }
        }
        assert!(matches!(
            lemma_digit_inequality(2, 2, 5),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose_beta(2, 8).unwrap(), [(8, 1)]);
        assert_eq!(decompose_beta(2, 3).unwrap(), [(1, 1), (2, 1)]);
        assert_eq!(decompose_beta(3, 5).unwrap(), [(1, 2), (3, 1)]);
        let c2 = ctx(2);
        assert_eq!(c2.beta(3).unwrap(), &c2.beta(1).unwrap() * &c2.beta(2).unwrap());
        let c3 = ctx(3);
        assert_eq!(
            c3.beta(5).unwrap(),
            &c3.beta(1).unwrap().pow(2) * &c3.beta(3).unwrap()
        );
        assert!(c3.verify_decomposition(5).unwrap());
    }

    #[test]
    fn size_limit_is_enforced() {
        let c = Carlitz::with_size_limit(&Field::prime(2).unwrap(), 8);
        assert!(c.psi(3).is_ok());
        assert!(matches!(c.psi(4), Err(Error::SizeLimit { needed: 16, .. })));
        assert!(matches!(c.beta(16), Err(Error::SizeLimit { .. })));
        assert!(c.beta(15).is_ok());
    }

    #[test]
    fn caches_are_transparent() {
        let c = ctx(3);
        let first = c.psi(2).unwrap();
        let fresh = ctx(3).psi(2).unwrap();
        assert_eq!(first, c.psi(2).unwrap());
        assert_eq!(first, fresh);
    }
}
