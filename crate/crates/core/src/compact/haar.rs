//! Haar-distributed samples from SU(n).
//!
//! SU(2) comes from a normalized Gaussian quaternion (uniform on S^3).
//! For n >= 3 we orthonormalize a complex Gaussian matrix; Gram-Schmidt
//! leaves real positive diagonal factors, so the result is Haar on U(n),
//! and dividing by an n-th root of the determinant pushes it onto SU(n)
//! without breaking translation invariance.

use super::cmatrix::{reunitarize, CMat};
use nalgebra::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Independent generator for one sample of a batch. Streams keep batch
/// results identical no matter how samples are split across threads.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn gaussian_complex(rng: &mut impl Rng) -> Complex<f64> {
    Complex::new(gaussian(rng), gaussian(rng))
}

pub fn haar_su(n: usize, rng: &mut impl Rng) -> CMat {
    assert!(n >= 2, "SU(n) needs n >= 2");
    if n == 2 {
        return haar_su2(rng);
    }
    let mut m = CMat::from_fn(n, n, |_, _| gaussian_complex(rng));
    reunitarize(&mut m);
    let det = m.determinant();
    let fix = Complex::from_polar(1.0, -det.arg() / n as f64);
    m.map(|z| z * fix)
}

fn haar_su2(rng: &mut impl Rng) -> CMat {
    loop {
        let (a, b, c, d) = (gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng));
        let r = (a * a + b * b + c * c + d * d).sqrt();
        if r < 1e-6 {
            continue;
        }
        let (a, b, c, d) = (a / r, b / r, c / r, d / r);
        return CMat::from_row_slice(
            2,
            2,
            &[Complex::new(a, b), Complex::new(c, d), Complex::new(-c, d), Complex::new(a, -b)],
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact::cmatrix::{det_error, unitarity_error};

    #[test]
    fn samples_live_in_su_n() {
        for n in 2..=4 {
            let mut rng = stream_rng(42, n as u64);
            for _ in 0..20 {
                let u = haar_su(n, &mut rng);
                assert_eq!(u.nrows(), n);
                assert!(unitarity_error(&u) < 1e-12, "not unitary for n={n}");
                assert!(det_error(&u) < 1e-12, "det != 1 for n={n}");
            }
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = haar_su(2, &mut stream_rng(9, 5));
        let b = haar_su(2, &mut stream_rng(9, 5));
        let c = haar_su(2, &mut stream_rng(9, 6));
        assert_eq!(a, b);
        assert!((a - c).norm() > 1e-3);
    }

    #[test]
    fn trace_statistics_look_haar() {
        // On SU(2) the trace is 2*cos(theta) with density proportional to
        // sin^2(theta); its mean is 0 and the mean of tr^2 is 1. A loose
        // window around those moments catches gross sampling bugs.
        let mut rng = stream_rng(123, 0);
        let samples = 4000;
        let (mut s1, mut s2) = (0.0f64, 0.0f64);
        for _ in 0..samples {
            let t = haar_su(2, &mut rng).trace().re;
            s1 += t;
            s2 += t * t;
        }
        let mean = s1 / samples as f64;
        let mean_sq = s2 / samples as f64;
        assert!(mean.abs() < 0.08, "mean trace {mean}");
        assert!((mean_sq - 1.0).abs() < 0.12, "mean squared trace {mean_sq}");
    }

    #[test]
    fn su3_trace_mean_is_near_zero() {
        let mut rng = stream_rng(321, 0);
        let samples = 2000;
        let mut s = Complex::new(0.0, 0.0);
        for _ in 0..samples {
            s += haar_su(3, &mut rng).trace();
        }
        let mean = s / Complex::new(samples as f64, 0.0);
        assert!(mean.norm() < 0.1, "mean trace {mean}");
    }
}
