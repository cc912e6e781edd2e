//! Metabelian evaluation of words. Generator x_i is sent to
//!
//!   [[t_i, s_i], [0, t_i^-1]]
//!
//! over the Laurent ring Q[t_i^+-1][s_i]. The target group of upper
//! triangular matrices is metabelian, and the representation is faithful
//! on the free metabelian group, so the product is the identity exactly
//! when the word lies in the second derived subgroup F''. For words in
//! the derived subgroup the top-right corner is the interesting part: it
//! is a nonzero certificate of nontriviality modulo F''.

use super::laurent::{LaurentPolynomial, VarSpec};
use super::mat2::PolyMatrix2;
use super::{SymbolicError, TERM_GUARD};
use crate::words::Word;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Evaluation cost grows quickly with the variable count; four is plenty
/// for every word family this crate ships.
pub const MAGNUS_RANK_CAP: u32 = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivedClass {
    /// Some exponent sum is nonzero: not even in [F, F].
    NotInDerived,
    /// In [F, F] but visibly nontrivial in the metabelian quotient.
    InDerivedNotSecond,
    /// In the second derived subgroup F''.
    InSecondDerived,
}

pub struct MagnusResult {
    pub exponent_sums: Vec<i64>,
    /// Top-right entry of the product.
    pub corner: LaurentPolynomial,
    /// Diagonal entries; always (t^e, t^-e) for the exponent vector e.
    pub diag: (LaurentPolynomial, LaurentPolynomial),
    pub class: DerivedClass,
}

pub fn magnus_evaluate(w: &Word) -> Result<MagnusResult, SymbolicError> {
    let d = w.rank();
    if d > MAGNUS_RANK_CAP {
        return Err(SymbolicError::RankCap { rank: d, cap: MAGNUS_RANK_CAP });
    }
    let d = d as usize;
    let mut names: Vec<String> = (1..=d).map(|i| format!("t{i}")).collect();
    names.extend((1..=d).map(|i| format!("s{i}")));
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut invertible = vec![true; d];
    invertible.extend(vec![false; d]);
    let vars = VarSpec::new(&name_refs, &invertible);

    let gens: Vec<(PolyMatrix2, PolyMatrix2)> = (0..d)
        .map(|i| {
            let t = LaurentPolynomial::var(&vars, i);
            let tinv = LaurentPolynomial::var_pow(&vars, i, -1);
            let s = LaurentPolynomial::var(&vars, d + i);
            let zero = LaurentPolynomial::zero(&vars);
            let m = PolyMatrix2::new([t.clone(), s.clone(), zero.clone(), tinv.clone()]);
            let minv = PolyMatrix2::new([tinv, -&s, zero, t]);
            (m, minv)
        })
        .collect();

    let mut acc = PolyMatrix2::identity(&vars);
    for l in w.letters() {
        let (m, minv) = &gens[(l.generator() - 1) as usize];
        acc = acc.mul(if l.sign() > 0 { m } else { minv });
        if acc.max_term_count() > TERM_GUARD {
            return Err(SymbolicError::TermLimit { cap: TERM_GUARD });
        }
    }

    let exponent_sums = w.exponent_sums();
    let expected_diag = diag_monomial(&vars, &exponent_sums, 1);
    assert_eq!(acc.e[0], expected_diag, "top-left diagonal must be t^e");
    assert_eq!(
        acc.e[3],
        diag_monomial(&vars, &exponent_sums, -1),
        "bottom-right diagonal must be t^-e"
    );
    assert!(acc.e[2].is_zero(), "the representation is upper triangular");

    let class = if exponent_sums.iter().any(|&e| e != 0) {
        DerivedClass::NotInDerived
    } else if acc.e[1].is_zero() {
        DerivedClass::InSecondDerived
    } else {
        DerivedClass::InDerivedNotSecond
    };

    Ok(MagnusResult {
        exponent_sums,
        corner: acc.e[1].clone(),
        diag: (acc.e[0].clone(), acc.e[3].clone()),
        class,
    })
}

fn diag_monomial(vars: &Arc<VarSpec>, exps: &[i64], sign: i32) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::one(vars);
    for (i, &e) in exps.iter().enumerate() {
        let e32: i32 = e.try_into().expect("exponent sum fits i32");
        acc = &acc * &LaurentPolynomial::var_pow(vars, i, sign * e32);
    }
    acc
}

pub fn derived_class(w: &Word) -> Result<DerivedClass, SymbolicError> {
    Ok(magnus_evaluate(w)?.class)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnipotentCertificate {
    pub word: String,
    pub class: DerivedClass,
    /// True when the word is provably nontrivial on the group of upper
    /// unitriangular matrices, i.e. it is not in F''.
    pub nontrivial: bool,
    /// Rendered corner polynomial; the witness when the word lies in
    /// [F, F] but not F''.
    pub corner: String,
    pub exponent_sums: Vec<i64>,
}

pub fn unipotent_certificate(w: &Word) -> Result<UnipotentCertificate, SymbolicError> {
    let r = magnus_evaluate(w)?;
    Ok(UnipotentCertificate {
        word: w.render(),
        class: r.class,
        nontrivial: r.class != DerivedClass::InSecondDerived,
        corner: r.corner.render(),
        exponent_sums: r.exponent_sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::laurent::ExactScalar;
    use crate::symbolic::mat2::RationalMatrix2;
    use crate::symbolic::trace::evaluate_word_rational;
    use crate::words::{commutator, engel_word, parse, Word};
    use num_traits::One;

    fn w(text: &str) -> Word {
        parse(text, None).unwrap()
    }

    #[test]
    fn commutator_corner() {
        let r = magnus_evaluate(&w("[x,y]")).unwrap();
        assert_eq!(r.class, DerivedClass::InDerivedNotSecond);
        assert_eq!(r.exponent_sums, vec![0, 0]);
        assert_eq!(r.corner.render(), "t1^2*t2*s2 - t1*t2^2*s1 + t1*s1 - t2*s2");
        assert_eq!(r.diag.0.render(), "1");
        assert_eq!(r.diag.1.render(), "1");
    }

    #[test]
    fn power_word_stays_diagonal_generic() {
        let r = magnus_evaluate(&w("x^2*y^3")).unwrap();
        assert_eq!(r.class, DerivedClass::NotInDerived);
        assert_eq!(r.exponent_sums, vec![2, 3]);
        assert_eq!(r.diag.0.render(), "t1^2*t2^3");
        assert_eq!(r.diag.1.render(), "t1^-2*t2^-3");
    }

    #[test]
    fn second_derived_words_vanish() {
        let c1 = commutator(&w("[x,y]"), &w("[y,x]"));
        // [c, c^g] of derived-subgroup elements lands in F''
        let r = magnus_evaluate(&c1).unwrap();
        assert_eq!(r.class, DerivedClass::InSecondDerived);
        assert!(r.corner.is_zero());

        let g = w("x*y");
        let conj = g.concat(&w("[x,y]")).concat(&g.inverse());
        let c2 = commutator(&w("[x,y]"), &conj);
        assert!(!c2.is_identity());
        assert_eq!(magnus_evaluate(&c2).unwrap().class, DerivedClass::InSecondDerived);
    }

    #[test]
    fn engel_words_survive_the_metabelian_quotient() {
        for k in 1..=5 {
            let e = engel_word(k).unwrap();
            let r = magnus_evaluate(&e).unwrap();
            assert_eq!(r.class, DerivedClass::InDerivedNotSecond, "engel {k}");
        }
    }

    #[test]
    fn certificate_flags() {
        let yes = unipotent_certificate(&w("[x,y]")).unwrap();
        assert!(yes.nontrivial);
        assert_ne!(yes.corner, "0");
        let no = unipotent_certificate(&commutator(&w("[x,y]"), &w("[y,x]"))).unwrap();
        assert!(!no.nontrivial);
        assert_eq!(no.corner, "0");
        assert_eq!(no.class, DerivedClass::InSecondDerived);
    }

    #[test]
    fn rank_cap() {
        assert!(matches!(
            magnus_evaluate(&w("x1*x2*x3*x4*x5")),
            Err(SymbolicError::RankCap { rank: 5, cap: MAGNUS_RANK_CAP })
        ));
        assert!(magnus_evaluate(&w("[x,[y,[z,u]]]")).is_ok());
    }

    #[test]
    fn matches_exact_numeric_evaluation() {
        // dual route: substitute small rationals for t, s and compare the
        // polynomial matrix with an exact numeric product
        let words = [w("[x,y]"), engel_word(3).unwrap(), w("[x^2,y^-1]*[y,x^3]")];
        let samples = [(2i64, 1i64, 3i64, 7i64), (3, -2, 5, 1), (-2, 4, -3, -5)];
        for word in &words {
            let r = magnus_evaluate(word).unwrap();
            for &(t1, s1, t2, s2) in &samples {
                let vals: Vec<ExactScalar> =
                    [t1, t2, s1, s2].iter().map(|&n| ExactScalar::from_integer(n.into())).collect();
                let m1 = RationalMatrix2::new([
                    vals[0].clone(),
                    vals[2].clone(),
                    ExactScalar::from_integer(0.into()),
                    ExactScalar::one() / vals[0].clone(),
                ]);
                let m2 = RationalMatrix2::new([
                    vals[1].clone(),
                    vals[3].clone(),
                    ExactScalar::from_integer(0.into()),
                    ExactScalar::one() / vals[1].clone(),
                ]);
                let numeric = evaluate_word_rational(word, &[m1, m2]).unwrap();
                assert_eq!(r.corner.eval(&vals).unwrap(), numeric.e[1]);
                assert_eq!(r.diag.0.eval(&vals).unwrap(), numeric.e[0]);
            }
        }
    }
}
