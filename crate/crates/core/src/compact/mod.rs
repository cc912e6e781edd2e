//! Floating-point experiments on compact groups, mostly SU(n), plus the
//! SL(2) root certificates. Everything randomized takes an explicit seed
//! and draws each sample from its own counter-derived stream, so results
//! do not depend on thread count.

pub mod cmatrix;
pub mod density;
pub mod haar;
pub mod roots;
pub mod solve;
pub mod thom;

pub use cmatrix::{
    comm, det_error, evaluate_word_unitary, expm, identity, length, op_norm, reunitarize,
    reunitarize_special, unitarity_error, CMat, LengthNorm, REORTHO_INTERVAL,
};
pub use density::{numeric_rank, rank_distance, rank_metric_density, DensityConfig, DensityReport};
pub use haar::{haar_su, stream_rng};
pub use nalgebra::Complex;
pub use roots::{decode_c, root_sl2c, sqrt_sl2r, RMat2, RootSl2Report, SqrtSl2Report, ZMat2};
pub use solve::{decode_tuple, solve_word_equation, SolveConfig, SolveReport};
pub use thom::{thom_decay, ThomDecayConfig, ThomDecayReport, ThomRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompactError {
    #[error("dimension {dim} is out of range (need n >= 2)")]
    BadDimension { dim: usize },
    #[error("matrix size {got} does not match configured dimension {expected}")]
    DimMismatch { expected: usize, got: usize },
    #[error("matrix is not special unitary (defect {err:.3e})")]
    NotSpecialUnitary { err: f64 },
    #[error("determinant is not 1 (defect {err:.3e})")]
    NotDetOne { err: f64 },
    #[error("root index must be at least 1")]
    BadRootIndex,
    #[error("tower step {k} exceeds the cap {cap}")]
    StepCapExceeded { k: u32, cap: u32 },
    #[error("sample count must be positive")]
    NoSamples,
}
