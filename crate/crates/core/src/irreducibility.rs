//! Certificates for (absolute) irreducibility of `beta_{q^s}` and witnesses of
//! reducibility for every other `beta_k`.
//!
//! The valuation matrix `A` has one row per point `t^s + f_i` (`i >= 2`) and
//! one column per factor `(X - f_j)/(t^s - f_j)` of `beta_{q^s}`; its entries
//! are t-adic valuations of the factor values. Zero row sums together with
//! rank `q^s - 1` certify absolute irreducibility.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::carlitz::{decompose_beta, Carlitz};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::poly::{enumerate_deg_below, ExtInt, FqPoly};
use crate::xpoly::XPoly;

/// The level-`i` matrix of the recursive family: `q^i x q^i`, `q` copies of
/// the level `i - 1` matrix on the block diagonal and `k - i` elsewhere; level
/// 1 has `k` on the diagonal and `k - 1` off it.
pub fn build_m_matrix(q: u64, k: u32, level: u32, size_limit: u64) -> Result<IntMatrix> {
    if q < 2 {
        return Err(Error::BadBase(q));
    }
    if k == 0 || level == 0 || level > k {
        return Err(Error::OutOfRange(format!(
            "need 1 <= level <= k, got level = {level}, k = {k}"
        )));
    }
    let needed = (q as u128).checked_pow(level).unwrap_or(u128::MAX);
    if needed > size_limit as u128 {
        return Err(Error::SizeLimit {
            what: "M matrix",
            needed,
            limit: size_limit,
        });
    }
    let dim = needed as usize;
    Ok(IntMatrix::from_fn(dim, dim, |a, b| {
        // the innermost level whose blocks contain both indices
        let mut l = 0u32;
        let (mut x, mut y) = (a, b);
        while x != y {
            x /= q as usize;
            y /= q as usize;
            l += 1;
        }
        BigInt::from(k as i64 - l as i64)
    }))
}

/// `det M_k` for `M_k` the top-level matrix, and whether it is nonzero.
pub fn m_matrix_nonsingular(q: u64, k: u32, size_limit: u64) -> Result<(BigInt, bool)> {
    let det = build_m_matrix(q, k, k, size_limit)?.det()?;
    let nonzero = !det.is_zero();
    Ok((det, nonzero))
}

/// The valuation matrix for `beta_{q^s}` with its row/column labels.
#[derive(Debug, Clone)]
pub struct ValuationMatrix {
    pub q: u64,
    pub s: u32,
    /// `f_1, ..., f_{q^s}`; `f_1 = 0`.
    pub reps: Vec<FqPoly>,
    /// `(q^s - 1) x q^s`; row `r` belongs to `f_{r+2}`, column `c` to `f_{c+1}`.
    pub matrix: IntMatrix,
}

impl ValuationMatrix {
    /// The evaluation points `t^s + f_i`, `i = 2..q^s`.
    pub fn points(&self) -> Vec<FqPoly> {
        let field = self.reps[0].field();
        let ts = FqPoly::monomial(&field.one(), self.s as usize);
        self.reps[1..].iter().map(|f| &ts + f).collect()
    }

    /// Block index (1-based) of `f_i` for `i >= 2`: block `k` holds the
    /// polynomials whose lowest term has degree `s - k`.
    fn block_of(&self, rep: &FqPoly) -> usize {
        self.s as usize - rep.lowest_degree().expect("nonzero representative")
    }
}

fn valuation(p: &FqPoly) -> i64 {
    match p.valuation() {
        ExtInt::Finite(v) => v,
        // both arguments are nonzero: deg f < s = deg t^s
        _ => unreachable!("valuation of zero in the valuation matrix"),
    }
}

/// Builds `A_{q^s}` over the standard ordering of the `f_i`.
pub fn build_a_matrix(ctx: &Carlitz, s: u32) -> Result<ValuationMatrix> {
    if s == 0 {
        return Err(Error::OutOfRange("s must be at least 1".into()));
    }
    ctx.check_power("valuation matrix", s)?;
    build_a_matrix_with_order(ctx, s, enumerate_deg_below(ctx.field(), s as usize))
}

/// Builds `A_{q^s}` over a caller-supplied ordering of all polynomials of
/// degree `< s`, which must start with zero.
pub fn build_a_matrix_with_order(ctx: &Carlitz, s: u32, reps: Vec<FqPoly>) -> Result<ValuationMatrix> {
    let n = ctx.check_power("valuation matrix", s)? as usize;
    let field = ctx.field();
    let distinct: BTreeSet<Vec<u64>> = reps.iter().map(|f| f.codes().to_vec()).collect();
    if reps.len() != n
        || distinct.len() != n
        || !reps[0].is_zero()
        || reps
            .iter()
            .any(|f| f.field() != field || f.degree() >= ExtInt::Finite(s as i64))
    {
        return Err(Error::OutOfRange(
            "ordering must list every polynomial of degree < s once, starting with 0".into(),
        ));
    }
    let ts = FqPoly::monomial(&field.one(), s as usize);
    let col_base: Vec<i64> = reps.iter().map(|fj| valuation(&(&ts - fj))).collect();
    let matrix = IntMatrix::from_fn(n - 1, n, |r, c| {
        let fi = &reps[r + 1];
        let fj = &reps[c];
        BigInt::from(valuation(&(&(&ts + fi) - fj)) - col_base[c])
    });
    for (row, sum) in matrix.row_sums().iter().enumerate() {
        if !sum.is_zero() {
            return Err(Error::RowSumViolation {
                row: row + 2,
                sum: sum.to_string(),
            });
        }
    }
    Ok(ValuationMatrix {
        q: field.q(),
        s,
        reps,
        matrix,
    })
}

/// `B_{q^s}`: `A_{q^s}` without its first column.
pub fn build_b_matrix(a: &ValuationMatrix) -> IntMatrix {
    let rows: Vec<usize> = (0..a.matrix.rows()).collect();
    let cols: Vec<usize> = (1..a.matrix.cols()).collect();
    a.matrix.select(&rows, &cols)
}

/// Expected multiplicities of each value in any row or column of diagonal
/// block `k`, as `(value, count)` pairs with value descending from `k`.
///
/// The value `k` sits once on the diagonal and `k - r` occurs `(q-1) q^{r-1}`
/// times for `1 <= r < k`. The remaining `(q-2) q^{k-1}` entries are zero,
/// which keeps the total equal to the block dimension `(q-1) q^{k-1}`.
pub fn expected_block_profile(q: u64, k: u32) -> Vec<(i64, u64)> {
    let mut out = vec![(k as i64, 1)];
    for r in 1..k {
        out.push(((k - r) as i64, (q - 1) * q.pow(r - 1)));
    }
    out.push((0, (q - 2) * q.pow(k - 1)));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockCheck {
    pub block: u32,
    /// Offset of the block's first row/column inside `B`.
    pub offset: usize,
    pub dim: usize,
    pub expected_dim: usize,
    /// Distinct values occurring in the block, ascending.
    pub values: Vec<i64>,
    pub nonnegative: bool,
    pub rows_match_profile: bool,
    pub cols_match_profile: bool,
    /// Threshold sets `{j : entry >= a}` of any two rows (resp. columns) are
    /// equal or disjoint and have a common size.
    pub nested_partition: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub q: u64,
    pub s: u32,
    pub lower_block_triangular: bool,
    pub blocks: Vec<BlockCheck>,
    pub passed: bool,
}

fn profile(values: impl Iterator<Item = i64>) -> BTreeMap<i64, u64> {
    let mut m = BTreeMap::new();
    for v in values {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

fn nested_partition(lines: &[Vec<i64>], max: i64) -> bool {
    (0..=max).all(|a| {
        let sets: Vec<BTreeSet<usize>> = lines
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .filter(|(_, &v)| v >= a)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let same_size = sets.windows(2).all(|w| w[0].len() == w[1].len());
        let equal_or_disjoint = sets
            .iter()
            .enumerate()
            .all(|(i, x)| sets[i + 1..].iter().all(|y| x == y || x.is_disjoint(y)));
        same_size && equal_or_disjoint
    })
}

/// Checks the lower block triangular shape of `B` and the entry profile of
/// each diagonal block.
pub fn block_profile_check(a: &ValuationMatrix) -> BlockReport {
    let b = build_b_matrix(a);
    let labels: Vec<usize> = a.reps[1..].iter().map(|f| a.block_of(f)).collect();
    let n = labels.len();

    let mut lower = true;
    for i in 0..n {
        for j in 0..n {
            if labels[i] < labels[j] && !b.get(i, j).is_zero() {
                lower = false;
            }
        }
    }

    let mut blocks = Vec::new();
    let q = a.q;
    for k in 1..=a.s {
        let idx: Vec<usize> = (0..n).filter(|&i| labels[i] == k as usize).collect();
        let offset = idx.first().copied().unwrap_or(n);
        let contiguous = idx.iter().enumerate().all(|(o, &i)| i == offset + o);
        let expected_dim = ((q - 1) * q.pow(k - 1)) as usize;
        let block = b.select(&idx, &idx);
        let entries: Vec<Vec<i64>> = block
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|e| e.to_i64().expect("small entry")).collect())
            .collect();
        let columns: Vec<Vec<i64>> = (0..idx.len())
            .map(|j| entries.iter().map(|r| r[j]).collect())
            .collect();

        let expected: BTreeMap<i64, u64> = expected_block_profile(q, k)
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .collect();
        let rows_ok = entries.iter().all(|r| profile(r.iter().copied()) == expected);
        let cols_ok = columns.iter().all(|c| profile(c.iter().copied()) == expected);
        let values: Vec<i64> = entries
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let nonnegative = values.first().is_none_or(|&v| v >= 0);
        let nested = nested_partition(&entries, k as i64) && nested_partition(&columns, k as i64);
        let dims_ok = contiguous && idx.len() == expected_dim;
        blocks.push(BlockCheck {
            block: k,
            offset,
            dim: idx.len(),
            expected_dim,
            values,
            nonnegative,
            rows_match_profile: rows_ok,
            cols_match_profile: cols_ok,
            nested_partition: nested,
            passed: dims_ok && nonnegative && rows_ok && cols_ok && nested,
        });
    }
    let passed = lower && blocks.iter().all(|b| b.passed);
    BlockReport {
        q,
        s: a.s,
        lower_block_triangular: lower,
        blocks,
        passed,
    }
}

/// Evidence that `beta_{q^s}` is absolutely irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub q: u64,
    pub s: u32,
    pub matrix_shape: [usize; 2],
    pub row_sums_zero: bool,
    pub rank: usize,
    pub expected_rank: u64,
    pub certified: bool,
    pub ordering: Vec<String>,
}

pub fn certify_absolute_irreducibility(ctx: &Carlitz, s: u32) -> Result<Certificate> {
    let q = ctx.field().q();
    if s == 0 {
        // beta_1 = X; A is empty
        return Ok(Certificate {
            q,
            s,
            matrix_shape: [0, 1],
            row_sums_zero: true,
            rank: 0,
            expected_rank: 0,
            certified: true,
            ordering: vec!["0".into()],
        });
    }
    let a = build_a_matrix(ctx, s)?;
    let rank = a.matrix.rank();
    let expected_rank = q.pow(s) - 1;
    Ok(Certificate {
        q,
        s,
        matrix_shape: [a.matrix.rows(), a.matrix.cols()],
        row_sums_zero: true,
        rank,
        expected_rank,
        certified: rank as u64 == expected_rank,
        ordering: a.reps.iter().map(|f| f.to_string()).collect(),
    })
}

/// Whether `g_c g_{k-c} / g_k` lies in F_q[t], the condition a factorization
/// of `beta_k` into factors of degrees `c` and `k - c` must satisfy.
pub fn degree_split_admissible(ctx: &Carlitz, k: u64, c: u64) -> Result<bool> {
    Ok(ctx.binomial(k, c)?.inv()?.is_polynomial())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reducibility {
    /// `k = q^s`.
    Irreducible { k: u64, s: u32 },
    Witness {
        k: u64,
        /// `(q^i, alpha_i)` pairs: `beta_k = prod beta_{q^i}^{alpha_i}`.
        factors: Vec<(u64, u64)>,
        product_verified: bool,
        factors_nonunit_integer_valued: bool,
    },
}

/// For `k` a power of `q` returns `Irreducible`; otherwise the digit
/// factorization of `beta_k`, verified by exact multiplication.
pub fn reducibility_witness(ctx: &Carlitz, k: u64) -> Result<Reducibility> {
    let q = ctx.field().q();
    let factors = decompose_beta(q, k)?;
    if let [(power, 1)] = factors[..] {
        if power == k {
            return Ok(Reducibility::Irreducible { k, s: power.ilog(q) });
        }
    }
    let mut product = XPoly::one(ctx.field());
    let mut nonunit = true;
    for &(power, exp) in &factors {
        let b = ctx.beta(power)?;
        nonunit &= b.degree() >= ExtInt::Finite(1) && ctx.is_integer_valued(&b)?;
        product = &product * &b.pow(exp);
    }
    Ok(Reducibility::Witness {
        k,
        factors,
        product_verified: product == ctx.beta(k)?,
        factors_nonunit_integer_valued: nonunit,
    })
}
