use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use super::poly::{Monomial, Polynomial};
use super::{scalar_from_i64, ArithError, Scalar};

/// A primitive integer linear form `Σ aᵢ uᵢ`: the gcd of the coefficients is 1
/// and the first nonzero coefficient is positive.
///
/// Every nonzero integer vector factors uniquely as `content · form`, which makes
/// forms usable as keys of a factored denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisionError {
    #[error("not divisible")]
    NotDivisible,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl LinearForm {
    /// Splits a nonzero integer vector into `(content, primitive form)`.
    pub fn primitive(coefficients: &[i64]) -> Result<(i64, LinearForm), ArithError> {
        let first = coefficients.iter().copied().find(|&a| a != 0).ok_or(ArithError::ZeroForm)?;
        let g = coefficients.iter().fold(0i64, |g, &a| g.gcd(&a));
        let content = if first < 0 { -g } else { g };
        let form = coefficients.iter().map(|&a| a / content).collect();
        Ok((content, LinearForm(form)))
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::linear(&self.0)
    }

    /// `⟨form, ξ⟩`, computed without overflow.
    pub fn pairing(&self, direction: &[i64]) -> i128 {
        self.0.iter().zip(direction).map(|(&a, &x)| i128::from(a) * i128::from(x)).sum()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_polynomial(), f)
    }
}

impl Polynomial {
    /// Exact division by a linear form.
    ///
    /// Let `u_k` be the first variable with a nonzero coefficient `a_k` in `f`.
    /// Long division in `u_k` (coefficients in the other variables, `a_k`
    /// invertible over ℚ) leaves a remainder free of `u_k`; `f` divides `self`
    /// exactly when that remainder is zero.
    pub fn divide_linear(&self, f: &LinearForm) -> Result<Polynomial, DivisionError> {
        super::check_rank(self.rank(), f.rank())?;
        let pivot = f.0.iter().position(|&a| a != 0).ok_or(ArithError::ZeroForm)?;
        let lead = scalar_from_i64(f.0[pivot]);
        let others: Vec<(usize, Scalar)> =
            f.0.iter()
                .enumerate()
                .filter(|&(i, &a)| i != pivot && a != 0)
                .map(|(i, &a)| (i, scalar_from_i64(a)))
                .collect();

        let rank = self.rank();
        let mut remainder = self.clone();
        let mut quotient: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let top = self.terms().map(|(m, _)| m.exponents()[pivot]).max().unwrap_or(0);

        for level in (1..=top).rev() {
            let at_level: Vec<Monomial> =
                remainder.terms().filter(|(m, _)| m.exponents()[pivot] == level).map(|(m, _)| m.clone()).collect();
            for m in at_level {
                let c = remainder.remove_term(&m).expect("term present");
                let mut qm = m;
                qm.exponents_mut()[pivot] -= 1;
                let qc = c / &lead;
                for (i, a) in &others {
                    let mut shifted = qm.clone();
                    shifted.exponents_mut()[*i] += 1;
                    remainder.add_term(shifted, -(&qc * a));
                }
                let slot = quotient.entry(qm).or_insert_with(Scalar::zero);
                *slot += qc;
            }
        }

        if !remainder.is_zero() {
            return Err(DivisionError::NotDivisible);
        }
        Ok(Polynomial::from_terms(rank, quotient))
    }
}
