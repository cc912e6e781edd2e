//! Stochastic search for solutions of w(X_1, ..., X_d) = T in SU(n).
//!
//! This is a (1+1)-style evolution strategy: perturb one slot at a time
//! by right-multiplying with exp(sigma * A) for a random traceless
//! skew-Hermitian direction A, keep the move if the Frobenius residual
//! drops, and adapt sigma from the acceptance history. Random restarts
//! escape local minima; the budget counts word evaluations so runs are
//! comparable across words of different lengths.

use super::cmatrix::{
    det_error, evaluate_word_unitary, expm, identity, reunitarize_special, unitarity_error, CMat,
    REORTHO_INTERVAL,
};
use super::haar::{haar_su, stream_rng};
use super::CompactError;
use crate::words::Word;
use nalgebra::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveConfig {
    pub dim: usize,
    pub seed: u64,
    /// Budget in word evaluations across all restarts.
    pub budget: u64,
    /// Accept as solved when the Frobenius residual drops below this.
    pub tol: f64,
}

impl SolveConfig {
    pub fn new(dim: usize) -> Self {
        SolveConfig { dim, seed: 1, budget: 200_000, tol: 1e-7 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub word: String,
    pub dim: usize,
    pub seed: u64,
    pub budget: u64,
    pub tol: f64,
    pub converged: bool,
    /// Frobenius norm of w(X) - T for the best tuple found.
    pub residual: f64,
    pub evaluations: u64,
    pub restarts: u32,
    /// Row-major [re, im] entries, one matrix per generator.
    pub solution: Vec<Vec<Vec<[f64; 2]>>>,
}

fn encode_tuple(mats: &[CMat]) -> Vec<Vec<Vec<[f64; 2]>>> {
    mats.iter()
        .map(|m| {
            (0..m.nrows())
                .map(|i| {
                    (0..m.ncols())
                        .map(|j| {
                            let z = m[(i, j)];
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn decode_tuple(enc: &[Vec<Vec<[f64; 2]>>]) -> Vec<CMat> {
    enc.iter()
        .map(|rows| {
            let n = rows.len();
            CMat::from_fn(n, n, |i, j| Complex::new(rows[i][j][0], rows[i][j][1]))
        })
        .collect()
}

fn random_direction(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    use rand_distr::StandardNormal;
    let g = CMat::from_fn(n, n, |_, _| {
        Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    // skew-Hermitian part, projected to trace zero
    let mut a = (&g - g.adjoint()).map(|z| z * Complex::new(0.5, 0.0));
    let shift = a.trace() / Complex::new(n as f64, 0.0);
    a -= identity(n).map(|z| z * shift);
    let nrm = a.norm();
    if nrm < 1e-12 {
        return random_direction(n, rng);
    }
    a.map(|z| z / Complex::new(nrm, 0.0))
}

fn residual(w: &Word, mats: &[CMat], target: &CMat) -> f64 {
    (evaluate_word_unitary(w, mats) - target).norm()
}

pub fn solve_word_equation(
    w: &Word,
    target: &CMat,
    cfg: &SolveConfig,
) -> Result<SolveReport, CompactError> {
    if cfg.dim < 2 {
        return Err(CompactError::BadDimension { dim: cfg.dim });
    }
    if target.nrows() != cfg.dim || target.ncols() != cfg.dim {
        return Err(CompactError::DimMismatch { expected: cfg.dim, got: target.nrows() });
    }
    let uerr = unitarity_error(target).max(det_error(target));
    if uerr > 1e-8 {
        return Err(CompactError::NotSpecialUnitary { err: uerr });
    }
    let d = w.rank().max(1) as usize;
    let mut report = SolveReport {
        word: w.render(),
        dim: cfg.dim,
        seed: cfg.seed,
        budget: cfg.budget,
        tol: cfg.tol,
        converged: false,
        residual: f64::INFINITY,
        evaluations: 0,
        restarts: 0,
        solution: Vec::new(),
    };

    // w = x_j^{+-1} is solved by direct assignment
    if w.letters().len() == 1 {
        let l = w.letters()[0];
        let mut mats = vec![identity(cfg.dim); d];
        mats[(l.generator() - 1) as usize] =
            if l.sign() > 0 { target.clone() } else { target.adjoint() };
        report.residual = residual(w, &mats, target);
        report.evaluations = 1;
        report.converged = report.residual <= cfg.tol;
        report.solution = encode_tuple(&mats);
        return Ok(report);
    }
    if w.is_identity() {
        let mats = vec![identity(cfg.dim); d];
        report.residual = residual(w, &mats, target);
        report.evaluations = 1;
        report.converged = report.residual <= cfg.tol;
        report.solution = encode_tuple(&mats);
        return Ok(report);
    }

    let mut rng = stream_rng(cfg.seed, 0);
    let mut best: Option<(f64, Vec<CMat>)> = None;
    let mut evals = 0u64;
    let mut first_start = true;
    'restarts: while evals < cfg.budget {
        if !first_start {
            report.restarts += 1;
        }
        first_start = false;
        let mut mats: Vec<CMat> = (0..d).map(|_| haar_su(cfg.dim, &mut rng)).collect();
        let mut r = residual(w, &mats, target);
        evals += 1;
        let mut sigma = 0.3f64;
        let mut stale = 0u32;
        let mut accepted_since_fix = 0usize;
        while evals < cfg.budget {
            let j = rng.random_range(0..d);
            let step = expm(&random_direction(cfg.dim, &mut rng).map(|z| z * sigma));
            let candidate = &mats[j] * step;
            let saved = std::mem::replace(&mut mats[j], candidate);
            let r2 = residual(w, &mats, target);
            evals += 1;
            if r2 < r {
                r = r2;
                sigma = (sigma * 1.6).min(1.5);
                stale = 0;
                accepted_since_fix += 1;
                if accepted_since_fix >= REORTHO_INTERVAL {
                    for m in &mut mats {
                        reunitarize_special(m);
                    }
                    r = residual(w, &mats, target);
                    evals += 1;
                    accepted_since_fix = 0;
                }
                if r <= cfg.tol {
                    best = Some((r, mats));
                    break 'restarts;
                }
            } else {
                mats[j] = saved;
                sigma *= 0.9;
                stale += 1;
                if sigma < 1e-12 || stale > 600 {
                    break;
                }
            }
        }
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, mats));
        }
    }
    let (r, mats) = best.expect("budget admits at least one start");
    report.residual = r;
    report.evaluations = evals;
    report.converged = r <= cfg.tol;
    report.solution = encode_tuple(&mats);
    Ok(report)
}
