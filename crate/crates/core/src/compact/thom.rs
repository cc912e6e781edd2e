//! Decay of the self-commutator tower on SU(n).
//!
//! The tower starts at w_0 = [x,y] and alternates
//!   w_{2i-1} = [w_{2i-2}, x^i],   w_{2i} = [w_{2i-1}, y w_{2i-1} y^-1].
//! Evaluating it on Haar random pairs shows the distance to the identity
//! collapsing super-exponentially once it drops under 1/2, because
//! l([u, v]) <= 2 l(u) l(v) for any unitaries (submultiplicative norms).
//! Instead of expanding the words (length grows like 4^k) each sample
//! runs the same recursion on matrices.

use super::cmatrix::{comm, length, reunitarize, CMat, LengthNorm, REORTHO_INTERVAL};
use super::haar::{haar_su, stream_rng};
use super::CompactError;
use crate::par;
use crate::words::THOM_CAP;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThomDecayConfig {
    pub dim: usize,
    pub kmax: u32,
    pub samples: usize,
    pub seed: u64,
    pub norm: LengthNorm,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThomRow {
    pub k: u32,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThomDecayReport {
    pub dim: usize,
    pub kmax: u32,
    pub samples: usize,
    pub seed: u64,
    pub norm: LengthNorm,
    pub rows: Vec<ThomRow>,
    /// Every commutator formed along the way satisfied
    /// l([u,v]) <= 2 l(u) l(v) + 1e-9.
    pub shrink_bound_ok: bool,
    /// Largest observed ratio l([u,v]) / (2 l(u) l(v)), taken over steps
    /// where both lengths clear the floating-point floor.
    pub shrink_bound_ratio: f64,
}

struct SampleTrace {
    lengths: Vec<f64>,
    bound_ok: bool,
    worst_ratio: f64,
}

fn commutator_step(v: &CMat, other: &CMat, norm: LengthNorm, trace: &mut SampleTrace) -> CMat {
    let lv = length(v, norm);
    let lo = length(other, norm);
    let next = comm(v, other);
    let ln = length(&next, norm);
    if ln > 2.0 * lv * lo + 1e-9 {
        trace.bound_ok = false;
    }
    if lv > 1e-3 && lo > 1e-3 {
        trace.worst_ratio = trace.worst_ratio.max(ln / (2.0 * lv * lo));
    }
    next
}

fn run_sample(dim: usize, kmax: u32, norm: LengthNorm, seed: u64, stream: u64) -> SampleTrace {
    let mut rng = stream_rng(seed, stream);
    let a = haar_su(dim, &mut rng);
    let b = haar_su(dim, &mut rng);
    let mut trace = SampleTrace {
        lengths: Vec::with_capacity(kmax as usize + 1),
        bound_ok: true,
        worst_ratio: 0.0,
    };
    let mut v = comm(&a, &b);
    trace.lengths.push(length(&v, norm));
    let mut muls = 3usize;
    let mut housekeeping = |v: &mut CMat, cost: usize| {
        muls += cost;
        if muls >= REORTHO_INTERVAL {
            reunitarize(v);
            muls = 0;
        }
    };
    let mut idx = 0u32;
    // apow tracks a^i across iterations
    let mut apow = a.clone();
    while idx < kmax {
        v = commutator_step(&v, &apow, norm, &mut trace);
        housekeeping(&mut v, 3);
        trace.lengths.push(length(&v, norm));
        idx += 1;
        if idx == kmax {
            break;
        }
        let conj = &b * &v * b.adjoint();
        v = commutator_step(&v, &conj, norm, &mut trace);
        housekeeping(&mut v, 5);
        trace.lengths.push(length(&v, norm));
        idx += 1;
        apow = &apow * &a;
    }
    trace
}

fn median_of(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

pub fn thom_decay(cfg: &ThomDecayConfig) -> Result<ThomDecayReport, CompactError> {
    if cfg.dim < 2 {
        return Err(CompactError::BadDimension { dim: cfg.dim });
    }
    if cfg.kmax > THOM_CAP {
        return Err(CompactError::StepCapExceeded { k: cfg.kmax, cap: THOM_CAP });
    }
    if cfg.samples == 0 {
        return Err(CompactError::NoSamples);
    }
    let traces = par::map_range(cfg.samples, |s| {
        run_sample(cfg.dim, cfg.kmax, cfg.norm, cfg.seed, s as u64)
    });
    let mut rows = Vec::with_capacity(cfg.kmax as usize + 1);
    for k in 0..=cfg.kmax {
        let mut vals: Vec<f64> = traces.iter().map(|t| t.lengths[k as usize]).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("lengths are finite"));
        rows.push(ThomRow {
            k,
            min: vals[0],
            median: median_of(&vals),
            max: *vals.last().expect("at least one sample"),
        });
    }
    Ok(ThomDecayReport {
        dim: cfg.dim,
        kmax: cfg.kmax,
        samples: cfg.samples,
        seed: cfg.seed,
        norm: cfg.norm,
        rows,
        shrink_bound_ok: traces.iter().all(|t| t.bound_ok),
        shrink_bound_ratio: traces.iter().fold(0.0, |m, t| m.max(t.worst_ratio)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact::cmatrix::evaluate_word_unitary;
    use crate::words::thom_word;

    #[test]
    fn matrix_recursion_matches_word_evaluation() {
        // the recursion must produce exactly w_k(a, b)
        for k in 0..=4u32 {
            let w = thom_word(k).unwrap();
            let mut rng = stream_rng(17, 60 + k as u64);
            let a = haar_su(2, &mut rng);
            let b = haar_su(2, &mut rng);
            let direct = evaluate_word_unitary(&w, &[a.clone(), b.clone()]);
            let trace = run_sample_with(&a, &b, k, LengthNorm::Operator);
            let diff = (length(&direct, LengthNorm::Operator) - trace.lengths[k as usize]).abs();
            assert!(diff < 1e-9, "k={k} disagreement {diff}");
        }
    }

    fn run_sample_with(a: &CMat, b: &CMat, kmax: u32, norm: LengthNorm) -> SampleTrace {
        let mut trace = SampleTrace { lengths: Vec::new(), bound_ok: true, worst_ratio: 0.0 };
        let mut v = comm(a, b);
        trace.lengths.push(length(&v, norm));
        let mut idx = 0;
        let mut apow = a.clone();
        while idx < kmax {
            v = commutator_step(&v, &apow, norm, &mut trace);
            trace.lengths.push(length(&v, norm));
            idx += 1;
            if idx == kmax {
                break;
            }
            let conj = b * &v * b.adjoint();
            v = commutator_step(&v, &conj, norm, &mut trace);
            trace.lengths.push(length(&v, norm));
            idx += 1;
            apow = &apow * a;
        }
        trace
    }

    #[test]
    fn decay_sets_in_and_bound_holds() {
        let cfg = ThomDecayConfig {
            dim: 2,
            kmax: 10,
            samples: 12,
            seed: 2024,
            norm: LengthNorm::Operator,
        };
        let rep = thom_decay(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 11);
        assert!(rep.shrink_bound_ok);
        assert!(rep.shrink_bound_ratio <= 1.0 + 1e-6);
        let first = rep.rows[0].median;
        let last = rep.rows[10].median;
        assert!(last < first * 1e-3, "no decay: {first} -> {last}");
        // once under 1/2 the sequence cannot climb back over it
        let mut below = false;
        for row in &rep.rows {
            if below {
                assert!(row.max < 0.5 + 1e-9);
            }
            if row.max < 0.5 {
                below = true;
            }
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let cfg =
            ThomDecayConfig { dim: 3, kmax: 6, samples: 6, seed: 7, norm: LengthNorm::Frobenius };
        let a = thom_decay(&cfg).unwrap();
        let b = thom_decay(&cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&a.rows).unwrap(),
            serde_json::to_string(&b.rows).unwrap()
        );
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg =
            ThomDecayConfig { dim: 1, kmax: 2, samples: 1, seed: 0, norm: LengthNorm::Operator };
        assert!(matches!(thom_decay(&cfg), Err(CompactError::BadDimension { .. })));
        cfg.dim = 2;
        cfg.kmax = THOM_CAP + 1;
        assert!(matches!(thom_decay(&cfg), Err(CompactError::StepCapExceeded { .. })));
        cfg.kmax = 2;
        cfg.samples = 0;
        assert!(matches!(thom_decay(&cfg), Err(CompactError::NoSamples)));
    }
}
