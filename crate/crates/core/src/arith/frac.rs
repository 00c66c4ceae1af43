use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::linear::{DivisionError, LinearForm};
use super::poly::Polynomial;
use super::{check_rank, scalar_from_i64, ArithError, Scalar};

/// A rational function `N / Π fᵢ^mᵢ` whose denominator is a product of
/// primitive linear forms.
///
/// Always fully cancelled: no denominator form divides the numerator. Since
/// distinct primitive forms are non-associate irreducibles and carry no scalar,
/// this representation is unique, so structural equality is equality of
/// rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    numerator: Polynomial,
    denominator: BTreeMap<LinearForm, u32>,
}

impl FactoredRational {
    pub fn from_polynomial(p: Polynomial) -> Self {
        FactoredRational { numerator: p, denominator: BTreeMap::new() }
    }

    /// `numerator / Π weights`, where each weight is an arbitrary nonzero
    /// integer vector of the numerator's rank.
    pub fn over_product<'a, I>(numerator: Polynomial, weights: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        let rank = numerator.rank();
        let mut content = BigInt::one();
        let mut denominator = BTreeMap::new();
        for w in weights {
            check_rank(rank, w.len())?;
            let (c, f) = LinearForm::primitive(w)?;
            content *= c;
            *denominator.entry(f).or_insert(0) += 1;
        }
        let numerator = numerator.scale(&Scalar::new(BigInt::one(), content));
        Ok(FactoredRational { numerator, denominator }.cancelled())
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Denominator factors with multiplicities, in a canonical order.
    pub fn denominator(&self) -> impl ExactSizeIterator<Item = (&LinearForm, u32)> {
        self.denominator.iter().map(|(f, &m)| (f, m))
    }

    pub fn denominator_polynomial(&self) -> Polynomial {
        self.denominator.iter().fold(Polynomial::one(self.rank()), |acc, (f, &m)| &acc * &f.to_polynomial().pow(m))
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The polynomial this rational function equals, if the denominator has
    /// cancelled completely.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.numerator)
    }

    pub fn into_polynomial(self) -> Result<Polynomial, FactoredRational> {
        if self.is_polynomial() {
            Ok(self.numerator)
        } else {
            Err(self)
        }
    }

    fn cancelled(mut self) -> Self {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return self;
        }
        let mut remaining = BTreeMap::new();
        for (f, mut m) in core::mem::take(&mut self.denominator) {
            while m > 0 {
                match self.numerator.divide_linear(&f) {
                    Ok(q) => {
                        self.numerator = q;
                        m -= 1;
                    }
                    Err(DivisionError::NotDivisible) => break,
                    Err(DivisionError::Arith(e)) => unreachable!("rank checked on construction: {e}"),
                }
            }
            if m > 0 {
                remaining.insert(f, m);
            }
        }
        self.denominator = remaining;
        self
    }

    /// Sum over the least common multiple of the two denominators, then
    /// cancelled.
    pub fn try_add(&self, other: &FactoredRational) -> Result<FactoredRational, ArithError> {
        check_rank(self.rank(), other.rank())?;
        let mut lcm = self.denominator.clone();
        for (f, &m) in &other.denominator {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(m);
        }
        let lift = |x: &FactoredRational| {
            lcm.iter().fold(x.numerator.clone(), |acc, (f, &m)| {
                let have = x.denominator.get(f).copied().unwrap_or(0);
                if m > have {
                    &acc * &f.to_polynomial().pow(m - have)
                } else {
                    acc
                }
            })
        };
        let numerator = &lift(self) + &lift(other);
        Ok(FactoredRational { numerator, denominator: lcm }.cancelled())
    }

    pub fn neg(&self) -> FactoredRational {
        FactoredRational { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    /// Specializes `uᵢ ↦ ξᵢ·u`. Fails if some denominator form vanishes.
    pub fn substitute(&self, direction: &[i64]) -> Result<FactoredRational, ArithError> {
        let numerator = self.numerator.substitute(direction)?;
        let mut content = Scalar::one();
        let mut power = 0u32;
        for (f, &m) in &self.denominator {
            let k = f.pairing(direction);
            if k == 0 {
                return Err(ArithError::DegenerateSubstitution { form: f.clone() });
            }
            content *= Scalar::from_integer(Pow::pow(BigInt::from(k), m));
            power += m;
        }
        let weights: Vec<[i64; 1]> = (0..power).map(|_| [1i64]).collect();
        let numerator = numerator.scale(&content.recip());
        Self::over_product(numerator, weights.iter().map(|w| &w[..]))
    }

    pub fn scale(&self, c: i64) -> FactoredRational {
        FactoredRational { numerator: self.numerator.scale(&scalar_from_i64(c)), denominator: self.denominator.clone() }
            .cancelled()
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.len() > 1 {
            write!(f, "({})", self.numerator)?;
        } else {
            write!(f, "{}", self.numerator)?;
        }
        f.write_str(" / ")?;
        let single = self.denominator.len() == 1 && self.denominator.values().all(|&m| m == 1);
        if !single {
            f.write_str("(")?;
        }
        for (i, (form, &m)) in self.denominator.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            let bare = form.coefficients().iter().filter(|&&a| a != 0).count() == 1;
            if bare {
                write!(f, "{form}")?;
            } else {
                write!(f, "({form})")?;
            }
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        if !single {
            f.write_str(")")?;
        }
        Ok(())
    }
}
