use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::{check_rank, scalar_from_i64, ArithError, Scalar};

/// Exponent vector of a monomial `u₁^a₁ ⋯ u_ℓ^a_ℓ`.
///
/// Ordered graded-lexicographically with `u₁ > u₂ > … > u_ℓ`: higher total
/// degree first, ties broken by the exponent of `u₁`, then `u₂`, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    pub fn var(rank: usize, index: usize) -> Self {
        let mut e = vec![0; rank];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `u₁, …, u_ℓ` with exact rational coefficients.
///
/// Stored as a sparse map from exponent vectors to nonzero coefficients, so two
/// polynomials are equal exactly when their maps are equal. Each `uᵢ` has
/// cohomological degree 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        Polynomial { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Scalar::one())
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self::monomial(rank, Monomial::one(rank), c)
    }

    pub fn from_i64(rank: usize, c: i64) -> Self {
        Self::constant(rank, scalar_from_i64(c))
    }

    /// The variable `u_{index+1}`.
    pub fn var(rank: usize, index: usize) -> Self {
        assert!(index < rank, "variable index {index} out of range for rank {rank}");
        Self::monomial(rank, Monomial::var(rank, index), Scalar::one())
    }

    pub fn monomial(rank: usize, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.rank(), rank, "monomial rank does not match polynomial rank");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { rank, terms }
    }

    /// The linear form `Σ aᵢ uᵢ`.
    pub fn linear(coefficients: &[i64]) -> Self {
        let rank = coefficients.len();
        let mut p = Polynomial::zero(rank);
        for (i, &a) in coefficients.iter().enumerate() {
            p.add_term(Monomial::var(rank, i), scalar_from_i64(a));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms; repeated monomials are
    /// collected and zero coefficients dropped.
    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(rank);
        for (m, c) in terms {
            assert_eq!(m.rank(), rank, "monomial rank does not match polynomial rank");
            p.add_term(m, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree of a monomial, in the `uᵢ` (not cohomological).
    pub fn total_degree(&self) -> Option<u64> {
        self.leading_term().map(|(m, _)| m.total_degree())
    }

    /// Common total degree of all monomials; `None` for the zero polynomial or
    /// when monomials of different degrees are present.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Cohomological degree `2·(total degree)` of a nonzero homogeneous
    /// polynomial.
    pub fn cohomological_degree(&self) -> Option<u64> {
        self.homogeneous_degree().map(|d| 2 * d)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one(self.rank)).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.rank))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn remove_term(&mut self, m: &Monomial) -> Option<Scalar> {
        self.terms.remove(m)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        check_rank(self.rank, other.rank)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        check_rank(self.rank, other.rank)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        check_rank(self.rank, other.rank)?;
        let mut out = Polynomial::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        Polynomial { rank: self.rank, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.rank);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Specializes to a circle: `uᵢ ↦ ξᵢ·u`, giving a rank-1 polynomial.
    ///
    /// This is a ring homomorphism `ℚ[u₁, …, u_ℓ] → ℚ[u]`.
    pub fn substitute(&self, direction: &[i64]) -> Result<Polynomial, ArithError> {
        check_rank(self.rank, direction.len())?;
        let xi: Vec<BigInt> = direction.iter().map(|&x| BigInt::from(x)).collect();
        let mut out = Polynomial::zero(1);
        for (m, c) in &self.terms {
            let mut factor = BigInt::one();
            for (x, &e) in xi.iter().zip(m.exponents()) {
                if e > 0 {
                    factor *= Pow::pow(x, e);
                }
            }
            if factor.is_zero() {
                continue;
            }
            let degree = u32::try_from(m.total_degree()).expect("monomial degree exceeds u32");
            out.add_term(Monomial::new(vec![degree]), c * Scalar::from_integer(factor));
        }
        Ok(out)
    }

    /// Re-embeds into a larger rank, placing `u₁, …, u_ℓ` at positions
    /// `offset, …, offset + ℓ − 1`.
    pub fn embed(&self, rank: usize, offset: usize) -> Polynomial {
        assert!(offset + self.rank <= rank, "embedding does not fit");
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; rank];
            e[offset..offset + self.rank].copy_from_slice(m.exponents());
            (Monomial::new(e), c.clone())
        });
        Polynomial { rank, terms: terms.collect() }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on rank mismatch; use [`Polynomial::try_add`] to handle it.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { rank: self.rank, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}
