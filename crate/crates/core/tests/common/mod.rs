//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use carlitz_core::{Field, FqPoly, IntMatrix, RatFunc, XPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][c]) * cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Rank by ordinary Gaussian elimination over Q.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot_row = a[rank].clone();
        for row in &mut a[rank + 1..rows] {
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x -= p * &f;
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_poly(rng: &mut StdRng, field: &Field, max_deg: usize) -> FqPoly {
    let deg = rng.gen_range(0..=max_deg);
    FqPoly::from_codes(field, (0..=deg).map(|_| rng.gen_range(0..field.q())).collect())
}

pub fn random_nonzero_poly(rng: &mut StdRng, field: &Field, max_deg: usize) -> FqPoly {
    loop {
        let p = random_poly(rng, field, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ratfunc(rng: &mut StdRng, field: &Field, max_deg: usize) -> RatFunc {
    RatFunc::new(
        random_poly(rng, field, max_deg),
        random_nonzero_poly(rng, field, max_deg),
    )
    .unwrap()
}

pub fn random_xpoly(rng: &mut StdRng, field: &Field, max_x_deg: usize, max_t_deg: usize) -> XPoly {
    let deg = rng.gen_range(0..=max_x_deg);
    let coeffs = (0..=deg).map(|_| random_ratfunc(rng, field, max_t_deg)).collect();
    XPoly::from_coeffs(field, coeffs).unwrap()
}

/// Every polynomial over F_q of degree `< s`, in no particular order.
pub fn all_polys_below(field: &Field, s: usize) -> Vec<FqPoly> {
    let q = field.q();
    (0..q.pow(s as u32))
        .map(|mut idx| {
            let mut c = Vec::new();
            for _ in 0..s {
                c.push(idx % q);
                idx /= q;
            }
            FqPoly::from_codes(field, c)
        })
        .collect()
}
