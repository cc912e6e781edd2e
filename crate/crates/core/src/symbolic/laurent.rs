//! Sparse multivariate Laurent polynomials with exact rational
//! coefficients. Negative exponents are only permitted on variables the
//! ring declares invertible, which keeps denominators out of the
//! coefficient arithmetic entirely.

use super::SymbolicError;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub type ExactScalar = BigRational;

/// Names and invertibility flags of the ring variables.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSpec {
    names: Vec<String>,
    invertible: Vec<bool>,
}

impl VarSpec {
    pub fn new(names: &[&str], invertible: &[bool]) -> Arc<VarSpec> {
        assert_eq!(names.len(), invertible.len());
        Arc::new(VarSpec {
            names: names.iter().map(|s| s.to_string()).collect(),
            invertible: invertible.to_vec(),
        })
    }

    /// Ordinary polynomial ring: nothing invertible.
    pub fn polynomial(names: &[&str]) -> Arc<VarSpec> {
        VarSpec::new(names, &vec![false; names.len()])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: Arc<VarSpec>,
    terms: BTreeMap<Vec<i32>, ExactScalar>,
}

impl LaurentPolynomial {
    pub fn zero(vars: &Arc<VarSpec>) -> LaurentPolynomial {
        LaurentPolynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VarSpec>, c: ExactScalar) -> LaurentPolynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        LaurentPolynomial { vars: vars.clone(), terms }
    }

    pub fn one(vars: &Arc<VarSpec>) -> LaurentPolynomial {
        LaurentPolynomial::constant(vars, ExactScalar::one())
    }

    pub fn from_i64(vars: &Arc<VarSpec>, n: i64) -> LaurentPolynomial {
        LaurentPolynomial::constant(vars, ExactScalar::from_integer(n.into()))
    }

    pub fn var(vars: &Arc<VarSpec>, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var_pow(vars, i, 1)
    }

    pub fn var_pow(vars: &Arc<VarSpec>, i: usize, e: i32) -> LaurentPolynomial {
        assert!(i < vars.len(), "variable index out of range");
        assert!(
            e >= 0 || vars.is_invertible(i),
            "negative power of non-invertible variable {}",
            vars.name(i)
        );
        if e == 0 {
            return LaurentPolynomial::one(vars);
        }
        let mut key = vec![0; vars.len()];
        key[i] = e;
        let mut terms = BTreeMap::new();
        terms.insert(key, ExactScalar::one());
        LaurentPolynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// Coefficient of the exponent-zero monomial.
    pub fn constant_term(&self) -> ExactScalar {
        self.terms.get(&vec![0; self.vars.len()][..]).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn pow(&self, e: u32) -> LaurentPolynomial {
        let mut acc = LaurentPolynomial::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation. Substituting 0 where a term takes a negative
    /// power is rejected.
    pub fn eval(&self, values: &[ExactScalar]) -> Result<ExactScalar, SymbolicError> {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut total = ExactScalar::zero();
        for (key, coef) in &self.terms {
            let mut term = coef.clone();
            for (i, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && values[i].is_zero() {
                    return Err(SymbolicError::ZeroAtInvertedVariable {
                        var: self.vars.name(i).to_string(),
                    });
                }
                term *= rat_pow(&values[i], e);
            }
            total += term;
        }
        Ok(total)
    }

    fn assert_same_ring(&self, other: &LaurentPolynomial) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials from different rings"
        );
    }

    fn normalized(mut self) -> LaurentPolynomial {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    /// Writes the terms in graded order: descending total degree, then
    /// descending lexicographic exponents. Monomial factors are joined
    /// with '*', e.g. "x*y + 2".
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<i32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: i64 = a.iter().map(|&e| e as i64).sum();
            let db: i64 = b.iter().map(|&e| e as i64).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, key) in keys.iter().enumerate() {
            let coef = &self.terms[*key];
            let neg = coef.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = coef.abs();
            let mono = self.monomial_string(key);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    fn monomial_string(&self, key: &[i32]) -> String {
        let parts: Vec<String> = key
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars.name(i).to_string()
                } else {
                    format!("{}^{}", self.vars.name(i), e)
                }
            })
            .collect();
        parts.join("*")
    }
}

fn rat_pow(r: &ExactScalar, e: i32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_same_ring(other);
        let mut terms = self.terms.clone();
        for (key, coef) in &other.terms {
            *terms.entry(key.clone()).or_insert_with(ExactScalar::zero) += coef;
        }
        LaurentPolynomial { vars: self.vars.clone(), terms }.normalized()
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-other)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_same_ring(other);
        let mut terms: BTreeMap<Vec<i32>, ExactScalar> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key: Vec<i32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                *terms.entry(key).or_insert_with(ExactScalar::zero) += ca * cb;
            }
        }
        LaurentPolynomial { vars: self.vars.clone(), terms }.normalized()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
