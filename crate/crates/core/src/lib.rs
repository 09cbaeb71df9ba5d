//! Exact arithmetic for Carlitz binomial polynomials `beta_k` over F_q(t).
//!
//! The crate builds the tower F_q -> F_q[t] -> F_q(t) -> F_q(t)[X], the
//! Carlitz polynomials on top of it, and the integer matrices used to certify
//! that `beta_{q^s}` is absolutely irreducible in Int(F_q[t]).

pub mod carlitz;
pub mod error;
pub mod field;
pub mod irreducibility;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod xpoly;

pub use carlitz::{
    decompose_beta, digit_additivity, digits, lemma_digit_inequality, Basis, Carlitz, CarlitzExpansion,
    DigitInequality, DigitVector, DEFAULT_SIZE_LIMIT,
};
pub use error::{Error, Result};
pub use field::{prime_power, Field, FieldSpec, FqElem};
pub use irreducibility::{
    block_profile_check, build_a_matrix, build_a_matrix_with_order, build_b_matrix, build_m_matrix,
    certify_absolute_irreducibility, degree_split_admissible, expected_block_profile, m_matrix_nonsingular,
    reducibility_witness, BlockCheck, BlockReport, Certificate, Reducibility, ValuationMatrix,
};
pub use linalg::IntMatrix;
pub use poly::{enumerate_deg_below, ExtInt, FqPoly};
pub use ratfunc::RatFunc;
pub use xpoly::XPoly;
