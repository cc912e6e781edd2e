//! Dense complex matrices for the numeric compact-group experiments,
//! plus the drift policy: long unitary products are re-orthonormalized
//! every 64 multiplications.

use crate::words::Word;
use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

pub type CMat = DMatrix<Complex<f64>>;

/// Multiplications between re-orthonormalizations in long products.
pub const REORTHO_INTERVAL: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthNorm {
    /// Largest singular value.
    Operator,
    Frobenius,
}

impl std::fmt::Display for LengthNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LengthNorm::Operator => "operator",
            LengthNorm::Frobenius => "frobenius",
        })
    }
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn op_norm(m: &CMat) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    sv.iter().cloned().fold(0.0, f64::max)
}

pub fn norm(m: &CMat, which: LengthNorm) -> f64 {
    match which {
        LengthNorm::Operator => op_norm(m),
        LengthNorm::Frobenius => m.norm(),
    }
}

/// Distance from the identity, l(g) = ||I - g||.
pub fn length(g: &CMat, which: LengthNorm) -> f64 {
    norm(&(identity(g.nrows()) - g), which)
}

/// Group commutator a b a^-1 b^-1; inverses are adjoints since the
/// arguments are unitary.
pub fn comm(a: &CMat, b: &CMat) -> CMat {
    a * b * a.adjoint() * b.adjoint()
}

/// || u^* u - I ||_F, zero for exactly unitary u.
pub fn unitarity_error(u: &CMat) -> f64 {
    (u.adjoint() * u - identity(u.nrows())).norm()
}

pub fn det_error(u: &CMat) -> f64 {
    (u.determinant() - Complex::new(1.0, 0.0)).norm()
}

/// Projects a slightly drifted unitary back onto the unitary group by
/// modified Gram-Schmidt on columns. Stays O(drift) from the input.
pub fn reunitarize(m: &mut CMat) {
    let n = m.ncols();
    let mut cols: Vec<DVector<Complex<f64>>> = (0..n).map(|j| m.column(j).into_owned()).collect();
    for j in 0..n {
        for i in 0..j {
            let proj = cols[i].dotc(&cols[j]);
            let qi = cols[i].clone();
            cols[j] -= qi * proj;
        }
        let nrm = cols[j].norm();
        assert!(nrm > 1e-12, "matrix too degenerate to re-orthonormalize");
        cols[j] /= Complex::new(nrm, 0.0);
    }
    for (j, col) in cols.iter().enumerate() {
        m.set_column(j, col);
    }
}

/// Re-orthonormalize and also rotate the determinant phase back to 1,
/// keeping the matrix in SU(n).
pub fn reunitarize_special(m: &mut CMat) {
    reunitarize(m);
    let n = m.nrows();
    let det = m.determinant();
    let phase = det.arg() / n as f64;
    let fix = Complex::from_polar(1.0, -phase);
    *m = m.map(|z| z * fix);
}

/// exp(a) by scaling-and-squaring with a Taylor core. Accurate for the
/// skew-Hermitian steps the solver takes.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let scale = a.norm();
    let k = if scale > 0.5 { (scale / 0.5).log2().ceil() as i32 } else { 0 };
    let factor = Complex::new(2f64.powi(-k), 0.0);
    let scaled = a.map(|z| z * factor);
    let mut sum = identity(n);
    let mut term = identity(n);
    for j in 1..=24 {
        term = &term * &scaled;
        term = term.map(|z| z / Complex::new(j as f64, 0.0));
        sum += &term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..k {
        sum = &sum * &sum;
    }
    sum
}

/// Word evaluation on unitary matrices; inverses are adjoints, and the
/// running product is re-orthonormalized on the usual interval.
pub fn evaluate_word_unitary(w: &Word, mats: &[CMat]) -> CMat {
    assert_eq!(mats.len(), w.rank() as usize, "one matrix per generator");
    let n = mats.first().map_or(1, |m| m.nrows());
    let mut acc = identity(n);
    let mut muls = 0usize;
    for l in w.letters() {
        let m = &mats[(l.generator() - 1) as usize];
        if l.sign() > 0 {
            acc = &acc * m;
        } else {
            acc *= m.adjoint();
        }
        muls += 1;
        if muls.is_multiple_of(REORTHO_INTERVAL) {
            reunitarize(&mut acc);
        }
    }
    acc
}
