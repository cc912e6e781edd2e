//! Trace polynomials of word maps on SL_2.
//!
//! The first generator is replaced by the generic determinant-1 matrix
//!
//!   g(x, y) = [[1, y], [x, 1 + x*y]]
//!
//! and the remaining generators by caller-supplied exact constant
//! matrices of determinant 1. The trace of the resulting product is a
//! polynomial Phi(x, y); Phi is nonconstant exactly when the word map
//! moves the generic point, so a nonconstant Phi certifies that the word
//! is nontrivial on SL_2 over any field of characteristic 0.

use super::laurent::{ExactScalar, LaurentPolynomial, VarSpec};
use super::mat2::{PolyMatrix2, RationalMatrix2};
use super::{SymbolicError, TERM_GUARD};
use crate::words::Word;
use num_traits::{One, Zero};

pub struct TraceResult {
    pub phi: LaurentPolynomial,
    /// Phi(0, 0); always equals the trace of w(I, constants).
    pub origin_value: ExactScalar,
    pub nonconstant: bool,
}

/// Exact evaluation of a word on rational 2x2 matrices, one per
/// generator. The independent numeric route used to cross-check the
/// symbolic one.
pub fn evaluate_word_rational(
    w: &Word,
    mats: &[RationalMatrix2],
) -> Result<RationalMatrix2, SymbolicError> {
    if mats.len() != w.rank() as usize {
        return Err(SymbolicError::ConstantCount {
            rank: w.rank(),
            expected: w.rank() as usize,
            got: mats.len(),
        });
    }
    let inverses: Vec<RationalMatrix2> = mats
        .iter()
        .map(|m| m.inverse().ok_or(SymbolicError::Singular))
        .collect::<Result<_, _>>()?;
    let mut acc = RationalMatrix2::identity();
    for l in w.letters() {
        let i = (l.generator() - 1) as usize;
        let m = if l.sign() > 0 { &mats[i] } else { &inverses[i] };
        acc = acc.mul(m);
    }
    Ok(acc)
}

pub fn trace_polynomial(
    w: &Word,
    constants: &[RationalMatrix2],
) -> Result<TraceResult, SymbolicError> {
    let rank = w.rank().max(1);
    let expected = rank as usize - 1;
    if constants.len() != expected {
        return Err(SymbolicError::ConstantCount { rank, expected, got: constants.len() });
    }
    for (i, c) in constants.iter().enumerate() {
        if !c.det().is_one() {
            return Err(SymbolicError::ConstantDet { index: i, det: c.det().to_string() });
        }
    }

    let vars = VarSpec::polynomial(&["x", "y"]);
    let x = LaurentPolynomial::var(&vars, 0);
    let y = LaurentPolynomial::var(&vars, 1);
    let one = LaurentPolynomial::one(&vars);
    let generic = PolyMatrix2::new([one.clone(), y.clone(), x.clone(), &one + &(&x * &y)]);
    let generic_inv = generic.inverse_det_one().expect("det is 1 by construction");

    let lift = |m: &RationalMatrix2| {
        PolyMatrix2::new([
            LaurentPolynomial::constant(&vars, m.e[0].clone()),
            LaurentPolynomial::constant(&vars, m.e[1].clone()),
            LaurentPolynomial::constant(&vars, m.e[2].clone()),
            LaurentPolynomial::constant(&vars, m.e[3].clone()),
        ])
    };
    let mut gens = vec![(generic, generic_inv)];
    for c in constants {
        let m = lift(c);
        let minv = m.inverse_det_one().expect("determinant checked above");
        gens.push((m, minv));
    }

    let mut acc = PolyMatrix2::identity(&vars);
    for l in w.letters() {
        let (m, minv) = &gens[(l.generator() - 1) as usize];
        acc = acc.mul(if l.sign() > 0 { m } else { minv });
        if acc.max_term_count() > TERM_GUARD {
            return Err(SymbolicError::TermLimit { cap: TERM_GUARD });
        }
    }

    let phi = acc.trace();
    let origin_value =
        phi.eval(&[ExactScalar::zero(), ExactScalar::zero()]).expect("polynomial ring");

    // dual route: at the origin the generic matrix is the identity, so
    // Phi(0,0) must equal the trace of the exact rational product
    let mut numeric_gens = vec![RationalMatrix2::identity()];
    numeric_gens.extend_from_slice(constants);
    let numeric =
        evaluate_word_rational(&w.with_rank(rank).expect("rank only grows"), &numeric_gens)?;
    assert_eq!(
        origin_value,
        numeric.trace(),
        "symbolic trace at the origin disagrees with exact evaluation"
    );

    let nonconstant = !phi.is_constant();
    Ok(TraceResult { phi, origin_value, nonconstant })
}
