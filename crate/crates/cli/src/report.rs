//! Report objects. Each command builds one of these; the text and JSON forms
//! are both rendered from it.

use std::fmt::Write as _;

use carlitz_core::{BlockReport, Certificate, IntMatrix, Reducibility};
use serde::Serialize;

pub trait Report: Serialize {
    fn text(&self) -> String;

    /// False when a property that should always hold failed to verify.
    fn verified(&self) -> bool {
        true
    }
}

fn list(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

fn beta(k: u64) -> String {
    format!("β_{k}")
}

#[derive(Serialize)]
pub struct BetaReport {
    pub q: u64,
    pub k: u64,
    pub beta: String,
    #[serde(rename = "G_k")]
    pub big_g: String,
    pub g_k: String,
    pub degree: u64,
    pub leading_coefficient: String,
}

impl Report for BetaReport {
    fn text(&self) -> String {
        self.beta.clone()
    }
}

#[derive(Serialize)]
pub struct CheckIntReport {
    pub poly: String,
    pub integer_valued: bool,
    /// First `k` whose `beta_k`-coefficient is not in F_q[t].
    pub offending_k: Option<usize>,
    pub offending_coefficient: Option<String>,
}

impl Report for CheckIntReport {
    fn text(&self) -> String {
        match (self.offending_k, &self.offending_coefficient) {
            (Some(k), Some(c)) => format!("false\noffending k = {k}: B_{k} = {c}"),
            _ => self.integer_valued.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct ExpandReport {
    pub poly: String,
    /// Coefficients in the `G_k` basis.
    #[serde(rename = "A")]
    pub a: Vec<String>,
    /// Coefficients in the `beta_k` basis.
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

impl Report for ExpandReport {
    fn text(&self) -> String {
        format!("A = {}\nB = {}", list(&self.a), list(&self.b))
    }
}

#[derive(Serialize)]
pub struct CertReport(pub Certificate);

impl Report for CertReport {
    fn text(&self) -> String {
        let c = &self.0;
        let mut out = String::new();
        writeln!(out, "{} (q = {}, s = {})", beta(c.q.pow(c.s)), c.q, c.s).unwrap();
        writeln!(out, "matrix A: {} x {}", c.matrix_shape[0], c.matrix_shape[1]).unwrap();
        writeln!(out, "row sums zero: {}", c.row_sums_zero).unwrap();
        writeln!(out, "rank: {} (expected {})", c.rank, c.expected_rank).unwrap();
        writeln!(out, "ordering: {}", list(&c.ordering)).unwrap();
        write!(out, "certified: {}", c.certified).unwrap();
        out
    }

    fn verified(&self) -> bool {
        self.0.certified
    }
}

#[derive(Serialize)]
pub struct MatrixAReport {
    pub q: u64,
    pub s: u32,
    pub ordering: Vec<String>,
    pub matrix: IntMatrix,
    pub row_sums_zero: bool,
    pub rank: usize,
    pub expected_rank: u64,
    pub blocks: BlockReport,
}

impl Report for MatrixAReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "ordering: {}", list(&self.ordering)).unwrap();
        writeln!(out, "{}", self.matrix.to_string().trim_end()).unwrap();
        writeln!(out, "row sums zero: {}", self.row_sums_zero).unwrap();
        writeln!(out, "rank: {} (expected {})", self.rank, self.expected_rank).unwrap();
        writeln!(
            out,
            "B lower block triangular: {}",
            self.blocks.lower_block_triangular
        )
        .unwrap();
        for b in &self.blocks.blocks {
            let values: Vec<String> = b.values.iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                "block {}: dim {} (expected {}), values {}, profile {}",
                b.block,
                b.dim,
                b.expected_dim,
                list(&values),
                if b.passed { "ok" } else { "MISMATCH" }
            )
            .unwrap();
        }
        write!(out, "block check passed: {}", self.blocks.passed).unwrap();
        out
    }

    fn verified(&self) -> bool {
        self.row_sums_zero && self.rank as u64 == self.expected_rank && self.blocks.passed
    }
}

#[derive(Serialize)]
pub struct MatrixMReport {
    pub q: u64,
    pub k: u32,
    pub matrix: IntMatrix,
    pub det: String,
    pub nonsingular: bool,
}

impl Report for MatrixMReport {
    fn text(&self) -> String {
        format!(
            "{}\ndet = {}\nnonsingular: {}",
            self.matrix.to_string().trim_end(),
            self.det,
            self.nonsingular
        )
    }

    fn verified(&self) -> bool {
        self.nonsingular
    }
}

#[derive(Serialize)]
pub struct BinomReport {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub value: String,
    pub is_one: bool,
    pub is_unit: bool,
    pub digits_add_without_carry: bool,
}

impl Report for BinomReport {
    fn text(&self) -> String {
        format!(
            "[{} choose {}] = {}\nequals 1: {}\nunit in F_q[t]: {}\ndigits add without carry: {}",
            self.n, self.k, self.value, self.is_one, self.is_unit, self.digits_add_without_carry
        )
    }

    fn verified(&self) -> bool {
        self.is_one == self.is_unit && (!self.digits_add_without_carry || self.is_one)
    }
}

#[derive(Serialize)]
pub struct LemmaReport {
    pub q: u64,
    pub s: u32,
    pub checked: u64,
    pub violations: Vec<u64>,
    pub equality_at: Vec<u64>,
}

impl Report for LemmaReport {
    fn text(&self) -> String {
        let eq: Vec<String> = self.equality_at.iter().map(|k| k.to_string()).collect();
        let mut out = format!(
            "{} values checked, {} violations\nequality only at k ∈ {{{}}}",
            self.checked,
            self.violations.len(),
            eq.join(", ")
        );
        if !self.violations.is_empty() {
            let v: Vec<String> = self.violations.iter().map(|k| k.to_string()).collect();
            write!(out, "\nviolations at k = {}", list(&v)).unwrap();
        }
        out
    }

    fn verified(&self) -> bool {
        let n = self.q.pow(self.s);
        self.violations.is_empty() && self.equality_at == [0, n]
    }
}

#[derive(Serialize)]
pub struct DecomposeReport {
    pub q: u64,
    #[serde(flatten)]
    pub result: Reducibility,
}

impl Report for DecomposeReport {
    fn text(&self) -> String {
        match &self.result {
            Reducibility::Irreducible { k, s } => {
                format!("{} is irreducible (k = {}^{s})", beta(*k), self.q)
            }
            Reducibility::Witness {
                k,
                factors,
                product_verified,
                factors_nonunit_integer_valued,
            } => {
                let terms: Vec<String> = factors
                    .iter()
                    .map(|&(j, e)| {
                        if e == 1 {
                            beta(j)
                        } else {
                            format!("{}^{e}", beta(j))
                        }
                    })
                    .collect();
                let mut out = format!("{} = {}", beta(*k), terms.join(" · "));
                out.push_str(if *product_verified {
                    ", verified"
                } else {
                    ", NOT verified"
                });
                if !factors_nonunit_integer_valued {
                    out.push_str("\nsome factor is a unit or not integer-valued");
                }
                out
            }
        }
    }

    fn verified(&self) -> bool {
        match &self.result {
            Reducibility::Irreducible { .. } => true,
            Reducibility::Witness {
                product_verified,
                factors_nonunit_integer_valued,
                ..
            } => *product_verified && *factors_nonunit_integer_valued,
        }
    }
}

#[derive(Serialize)]
pub struct PowerReport {
    pub q: u64,
    pub k: u64,
    pub m: u64,
    pub power: String,
    /// Coefficients of `beta_k^m` in the `beta_j` basis.
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub integer_valued: bool,
}

impl Report for PowerReport {
    fn text(&self) -> String {
        format!(
            "{}^{} = {}\nB = {}\ninteger-valued: {}",
            beta(self.k),
            self.m,
            self.power,
            list(&self.b),
            self.integer_valued
        )
    }

    fn verified(&self) -> bool {
        self.integer_valued
    }
}
