//! How well finite samples of a word image cover SU(n) in the
//! normalized rank metric d_rk(g, h) = rank(g - h) / n.
//!
//! The metric is coarse for small n (it only takes values k/n), which is
//! exactly what makes it interesting: two independent Haar unitaries are
//! at distance 1 almost surely, so any nontrivial coverage at radius
//! epsilon < 1 reflects genuine structure rather than volume.

use super::cmatrix::{evaluate_word_unitary, CMat};
use super::haar::{haar_su, stream_rng};
use super::CompactError;
use crate::par;
use crate::words::Word;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityConfig {
    pub dim: usize,
    /// Image points to draw: w evaluated on Haar tuples.
    pub samples: usize,
    /// Haar targets to test against the sampled image.
    pub targets: usize,
    pub epsilon: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityReport {
    pub word: String,
    pub dim: usize,
    pub samples: usize,
    pub targets: usize,
    pub epsilon: f64,
    pub seed: u64,
    /// Fraction of targets whose nearest sampled image point is within
    /// epsilon in the normalized rank metric.
    pub covered_fraction: f64,
    pub min_distance: f64,
    pub mean_nearest_distance: f64,
}

/// Numerical rank: singular values above 1e-8 * n.
pub fn numeric_rank(m: &CMat) -> usize {
    let tol = 1e-8 * m.nrows() as f64;
    let sv = m.clone().svd(false, false).singular_values;
    sv.iter().filter(|&&s| s > tol).count()
}

pub fn rank_distance(g: &CMat, h: &CMat) -> f64 {
    numeric_rank(&(g - h)) as f64 / g.nrows() as f64
}

pub fn rank_metric_density(w: &Word, cfg: &DensityConfig) -> Result<DensityReport, CompactError> {
    if cfg.dim < 2 {
        return Err(CompactError::BadDimension { dim: cfg.dim });
    }
    if cfg.samples == 0 || cfg.targets == 0 {
        return Err(CompactError::NoSamples);
    }
    let d = w.rank().max(1) as usize;
    let points: Vec<CMat> = par::map_range(cfg.samples, |s| {
        let mut rng = stream_rng(cfg.seed, s as u64);
        let mats: Vec<CMat> = (0..d).map(|_| haar_su(cfg.dim, &mut rng)).collect();
        evaluate_word_unitary(w, &mats)
    });
    // target streams start after the sample streams
    let base = cfg.samples as u64;
    let nearest: Vec<f64> = par::map_range(cfg.targets, |t| {
        let mut rng = stream_rng(cfg.seed, base + t as u64);
        let g = haar_su(cfg.dim, &mut rng);
        points.iter().map(|p| rank_distance(&g, p)).fold(f64::INFINITY, f64::min)
    });
    let covered = nearest.iter().filter(|&&x| x <= cfg.epsilon + 1e-12).count();
    Ok(DensityReport {
        word: w.render(),
        dim: cfg.dim,
        samples: cfg.samples,
        targets: cfg.targets,
        epsilon: cfg.epsilon,
        seed: cfg.seed,
        covered_fraction: covered as f64 / cfg.targets as f64,
        min_distance: nearest.iter().cloned().fold(f64::INFINITY, f64::min),
        mean_nearest_distance: nearest.iter().sum::<f64>() / cfg.targets as f64,
    })
}
