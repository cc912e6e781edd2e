//! 2x2 matrices over the exact scalar field and over Laurent polynomial
//! rings. Only determinant-1 matrices get inverses (the adjugate), which
//! is all the word engines need.

use super::laurent::{ExactScalar, LaurentPolynomial, VarSpec};
use super::SymbolicError;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Row-major [a, b, c, d] over a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix2 {
    pub e: [LaurentPolynomial; 4],
}

impl PolyMatrix2 {
    pub fn new(e: [LaurentPolynomial; 4]) -> PolyMatrix2 {
        PolyMatrix2 { e }
    }

    pub fn identity(vars: &Arc<VarSpec>) -> PolyMatrix2 {
        PolyMatrix2 {
            e: [
                LaurentPolynomial::one(vars),
                LaurentPolynomial::zero(vars),
                LaurentPolynomial::zero(vars),
                LaurentPolynomial::one(vars),
            ],
        }
    }

    pub fn mul(&self, o: &PolyMatrix2) -> PolyMatrix2 {
        let [a, b, c, d] = &self.e;
        let [e, f, g, h] = &o.e;
        PolyMatrix2 {
            e: [&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)],
        }
    }

    pub fn det(&self) -> LaurentPolynomial {
        let [a, b, c, d] = &self.e;
        &(a * d) - &(b * c)
    }

    pub fn trace(&self) -> LaurentPolynomial {
        &self.e[0] + &self.e[3]
    }

    pub fn is_identity(&self) -> bool {
        let vars = self.e[0].vars();
        self.e[0] == LaurentPolynomial::one(vars)
            && self.e[1].is_zero()
            && self.e[2].is_zero()
            && self.e[3] == LaurentPolynomial::one(vars)
    }

    /// Adjugate inverse; valid only when det = 1, checked.
    pub fn inverse_det_one(&self) -> Result<PolyMatrix2, SymbolicError> {
        let det = self.det();
        if det != LaurentPolynomial::one(self.e[0].vars()) {
            return Err(SymbolicError::NotDetOne { det: det.render() });
        }
        let [a, b, c, d] = &self.e;
        Ok(PolyMatrix2 { e: [d.clone(), -b, -c, a.clone()] })
    }

    pub fn max_term_count(&self) -> usize {
        self.e.iter().map(|p| p.term_count()).max().unwrap_or(0)
    }
}

/// Row-major [a, b, c, d] over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix2 {
    pub e: [ExactScalar; 4],
}

impl RationalMatrix2 {
    pub fn new(e: [ExactScalar; 4]) -> RationalMatrix2 {
        RationalMatrix2 { e }
    }

    pub fn from_i64(e: [i64; 4]) -> RationalMatrix2 {
        RationalMatrix2 { e: e.map(|n| ExactScalar::from_integer(n.into())) }
    }

    pub fn identity() -> RationalMatrix2 {
        RationalMatrix2::from_i64([1, 0, 0, 1])
    }

    pub fn mul(&self, o: &RationalMatrix2) -> RationalMatrix2 {
        let [a, b, c, d] = &self.e;
        let [e, f, g, h] = &o.e;
        RationalMatrix2 { e: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h] }
    }

    pub fn det(&self) -> ExactScalar {
        let [a, b, c, d] = &self.e;
        a * d - b * c
    }

    pub fn trace(&self) -> ExactScalar {
        &self.e[0] + &self.e[3]
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[1].is_zero() && self.e[2].is_zero() && self.e[3].is_one()
    }

    /// General exact inverse; None when singular.
    pub fn inverse(&self) -> Option<RationalMatrix2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let [a, b, c, d] = &self.e;
        Some(RationalMatrix2 { e: [d / &det, -b / &det, -c / &det, a / &det] })
    }
}
