//! Exact symbolic certificates for word maps: trace polynomials over
//! SL_2 and the metabelian (Magnus-style) evaluation that detects
//! membership in the second derived subgroup.

pub mod laurent;
mod magnus;
mod mat2;
mod trace;

pub use laurent::{ExactScalar, LaurentPolynomial, VarSpec};
pub use magnus::{
    derived_class, magnus_evaluate, unipotent_certificate, DerivedClass, MagnusResult,
    UnipotentCertificate, MAGNUS_RANK_CAP,
};
pub use mat2::{PolyMatrix2, RationalMatrix2};
pub use trace::{evaluate_word_rational, trace_polynomial, TraceResult};

use thiserror::Error;

/// Abort symbolic evaluation once any matrix entry holds this many terms.
pub const TERM_GUARD: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum SymbolicError {
    #[error("polynomial exceeded {cap} terms during evaluation")]
    TermLimit { cap: usize },
    #[error("metabelian evaluation caps at {cap} variables, word has rank {rank}")]
    RankCap { rank: u32, cap: u32 },
    #[error("a rank-{rank} word needs {expected} constant matrices, got {got}")]
    ConstantCount { rank: u32, expected: usize, got: usize },
    #[error("constant matrix {index} must have determinant 1, found {det}")]
    ConstantDet { index: usize, det: String },
    #[error("matrix determinant is {det}, not 1")]
    NotDetOne { det: String },
    #[error("singular matrix in word evaluation")]
    Singular,
    #[error("evaluation substitutes 0 for inverted variable {var}")]
    ZeroAtInvertedVariable { var: String },
}
