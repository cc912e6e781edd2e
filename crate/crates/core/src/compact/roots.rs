//! Square roots in SL(2,R) and k-th roots in SL(2,C), with witnesses.
//!
//! Both run on Cayley-Hamilton identities rather than general matrix
//! functions. For g in SL(2) with tr g != -2 the matrix
//!   h = (g + I) / sqrt(tr g + 2)
//! squares to g and has determinant 1, so existence over the reals is
//! decided by the sign of tr g + 2 (with -I as the lone exception on the
//! boundary). Over C every element has k-th roots except the parabolics
//! with trace -2, which resist exactly the even k.

use super::CompactError;
use nalgebra::{Complex, Matrix2};
use serde::{Deserialize, Serialize};

pub type RMat2 = Matrix2<f64>;
pub type ZMat2 = Matrix2<Complex<f64>>;

const DET_TOL: f64 = 1e-9;
const CLASS_TOL: f64 = 1e-9;
const VERIFY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SqrtSl2Report {
    pub trace: f64,
    pub exists: bool,
    /// True when tr g is within 1e-9 of -2 but g != -I; existence flips
    /// right there, so numeric verdicts this close are not trustworthy.
    pub boundary: bool,
    pub witness: Option<[[f64; 2]; 2]>,
    /// Witness checked: ||h^2 - g|| <= 1e-8 and det h = 1.
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSl2Report {
    pub k: u32,
    pub trace: [f64; 2],
    pub exists: bool,
    pub witness: Option<[[[f64; 2]; 2]; 2]>,
    pub verified: bool,
}

fn check_det_r(g: &RMat2) -> Result<(), CompactError> {
    let err = (g.determinant() - 1.0).abs();
    if err > DET_TOL {
        return Err(CompactError::NotDetOne { err });
    }
    Ok(())
}

fn check_det_c(g: &ZMat2) -> Result<(), CompactError> {
    let err = (g.determinant() - Complex::new(1.0, 0.0)).norm();
    if err > DET_TOL {
        return Err(CompactError::NotDetOne { err });
    }
    Ok(())
}

fn encode_r(m: &RMat2) -> [[f64; 2]; 2] {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

fn encode_c(m: &ZMat2) -> [[[f64; 2]; 2]; 2] {
    let e = |z: Complex<f64>| [z.re, z.im];
    [[e(m[(0, 0)]), e(m[(0, 1)])], [e(m[(1, 0)]), e(m[(1, 1)])]]
}

/// Does g in SL(2,R) have a square root in SL(2,R)?
pub fn sqrt_sl2r(g: &RMat2) -> Result<SqrtSl2Report, CompactError> {
    check_det_r(g)?;
    let tr = g.trace();
    let is_minus_i = (g + RMat2::identity()).norm() < CLASS_TOL;
    let boundary = (tr + 2.0).abs() < CLASS_TOL && !is_minus_i;
    let witness = if is_minus_i {
        // a quarter turn squares to -I
        Some(RMat2::new(0.0, -1.0, 1.0, 0.0))
    } else if tr + 2.0 > CLASS_TOL {
        Some((g + RMat2::identity()) / (tr + 2.0).sqrt())
    } else {
        None
    };
    let (exists, verified, witness) = match witness {
        Some(h) => {
            let ok =
                (h * h - g).norm() <= VERIFY_TOL && (h.determinant() - 1.0).abs() <= VERIFY_TOL;
            (true, ok, Some(encode_r(&h)))
        }
        None => (false, false, None),
    };
    Ok(SqrtSl2Report { trace: tr, exists, boundary, witness, verified })
}

fn cpow(m: &ZMat2, k: u32) -> ZMat2 {
    let mut acc = ZMat2::identity();
    for _ in 0..k {
        acc *= m;
    }
    acc
}

/// Principal k-th root of a nonzero complex number.
fn root_scalar(z: Complex<f64>, k: u32) -> Complex<f64> {
    Complex::from_polar(z.norm().powf(1.0 / k as f64), z.arg() / k as f64)
}

/// Does g in SL(2,C) have a k-th root in SL(2,C)? The only obstructed
/// case is k even with tr g = -2 and g != -I.
pub fn root_sl2c(g: &ZMat2, k: u32) -> Result<RootSl2Report, CompactError> {
    if k == 0 {
        return Err(CompactError::BadRootIndex);
    }
    check_det_c(g)?;
    let one = Complex::new(1.0, 0.0);
    let id = ZMat2::identity();
    let tr = g.trace();
    let near = |a: Complex<f64>, b: f64| (a - Complex::new(b, 0.0)).norm() < CLASS_TOL;
    let is_i = (g - id).norm() < CLASS_TOL;
    let is_minus_i = (g + id).norm() < CLASS_TOL;

    let witness: Option<ZMat2> = if is_i {
        Some(id)
    } else if is_minus_i {
        let phase = std::f64::consts::PI / k as f64;
        Some(ZMat2::new(
            Complex::from_polar(1.0, phase),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::from_polar(1.0, -phase),
        ))
    } else if near(tr, 2.0) {
        // unipotent: (I + N/k)^k = I + N when N^2 = 0
        Some(id + (g - id) / Complex::new(k as f64, 0.0))
    } else if near(tr, -2.0) {
        if k.is_multiple_of(2) {
            // a root h would force g into the unipotent class of trace +2
            None
        } else {
            let u = id + (-g - id) / Complex::new(k as f64, 0.0);
            Some(-u)
        }
    } else {
        // semisimple: diagonalize and take principal roots of eigenvalues
        let disc = (tr * tr - Complex::new(4.0, 0.0)).sqrt();
        let lambda = (tr + disc) / Complex::new(2.0, 0.0);
        let mu = root_scalar(lambda, k);
        // eigenvectors for lambda and 1/lambda
        let col = |lam: Complex<f64>| {
            if g[(0, 1)].norm() > CLASS_TOL {
                (g[(0, 1)], lam - g[(0, 0)])
            } else if g[(1, 0)].norm() > CLASS_TOL {
                (lam - g[(1, 1)], g[(1, 0)])
            } else {
                // already diagonal
                if (g[(0, 0)] - lam).norm() < (g[(1, 1)] - lam).norm() {
                    (one, Complex::new(0.0, 0.0))
                } else {
                    (Complex::new(0.0, 0.0), one)
                }
            }
        };
        let (p00, p10) = col(lambda);
        let (p01, p11) = col(one / lambda);
        let p = ZMat2::new(p00, p01, p10, p11);
        let pinv = p.try_inverse().expect("distinct eigenvalues give independent eigenvectors");
        let droot = ZMat2::new(mu, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), one / mu);
        Some(p * droot * pinv)
    };

    let (exists, verified, witness) = match witness {
        Some(h) => {
            let back = cpow(&h, k);
            let scale = g.norm().max(1.0);
            let ok = (back - g).norm() <= VERIFY_TOL * scale
                && (h.determinant() - one).norm() <= VERIFY_TOL;
            (true, ok, Some(encode_c(&h)))
        }
        None => (false, false, None),
    };
    Ok(RootSl2Report { k, trace: [tr.re, tr.im], exists, witness, verified })
}

pub fn decode_c(w: &[[[f64; 2]; 2]; 2]) -> ZMat2 {
    ZMat2::new(
        Complex::new(w[0][0][0], w[0][0][1]),
        Complex::new(w[0][1][0], w[0][1][1]),
        Complex::new(w[1][0][0], w[1][0][1]),
        Complex::new(w[1][1][0], w[1][1][1]),
    )
}
