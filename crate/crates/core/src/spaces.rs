//! Fixed-point data of standard spaces.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{FixedPoint, LocalizationProblem, Sign, Weight};

/// The 2-sphere rotating about its axis, as `ℂP¹` with the circle acting by
/// `[z₀ : z₁] ↦ [z₀ : t·z₁]`. The tangent weight is `+1` at the north pole and
/// `−1` at the south pole, so the Euler classes are `u` and `−u`.
pub fn sphere_rotation() -> LocalizationProblem {
    LocalizationProblem::new(
        1,
        1,
        vec![
            FixedPoint::new("north", vec![Weight::new(vec![1])], Sign::Positive),
            FixedPoint::new("south", vec![Weight::new(vec![-1])], Sign::Positive),
        ],
    )
    .expect("sphere data is valid")
}

/// A single point: rank 1, dimension 0.
pub fn point() -> LocalizationProblem {
    LocalizationProblem::new(1, 0, vec![FixedPoint::new("pt", vec![], Sign::Positive)]).expect("point data is valid")
}

/// `ℂPⁿ` under the standard action of `(S¹)^{n+1}` scaling homogeneous
/// coordinates. The fixed points are the coordinate lines `p₀, …, p_n`, with
/// tangent weights `u_j − u_i` (`j ≠ i`) at `p_i`.
///
/// `n = 0` gives a point.
pub fn projective_space(n: usize) -> LocalizationProblem {
    let rank = n + 1;
    let points = (0..rank)
        .map(|i| {
            let weights = (0..rank)
                .filter(|&j| j != i)
                .map(|j| {
                    let mut w = vec![0i64; rank];
                    w[j] = 1;
                    w[i] = -1;
                    Weight::new(w)
                })
                .collect();
            FixedPoint::new(format!("p{i}"), weights, Sign::Positive)
        })
        .collect();
    LocalizationProblem::new(rank, n, points).expect("projective space data is valid")
}

/// Product action of `T_a × T_b` on `M_a × M_b`. Fixed points are pairs, the
/// tangent space is the direct sum, and the variables of `b` follow those of
/// `a`.
pub fn product(a: &LocalizationProblem, b: &LocalizationProblem) -> LocalizationProblem {
    let rank = a.rank() + b.rank();
    let pad = |w: &Weight, offset: usize| {
        let mut v = vec![0i64; rank];
        v[offset..offset + w.rank()].copy_from_slice(w.coefficients());
        Weight::new(v)
    };
    let mut points = Vec::with_capacity(a.points().len() * b.points().len());
    for p in a.points() {
        for q in b.points() {
            let weights =
                p.weights().iter().map(|w| pad(w, 0)).chain(q.weights().iter().map(|w| pad(w, a.rank()))).collect();
            points.push(FixedPoint::new(format!("({},{})", p.label(), q.label()), weights, p.sign() * q.sign()));
        }
    }
    LocalizationProblem::from_parts(rank, a.half_dim() + b.half_dim(), points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Polynomial, Scalar};
    use crate::class::ClassExpr;
    use crate::localize::{euler_characteristic, integrate_top};

    #[test]
    fn sphere_euler_classes() {
        let s = sphere_rotation();
        let e: Vec<_> = s.points().iter().map(|p| p.euler_class(1)).collect();
        assert_eq!(e, vec![Polynomial::var(1, 0), -Polynomial::var(1, 0)]);
    }

    #[test]
    fn projective_line_weights() {
        let cp1 = projective_space(1);
        assert_eq!(cp1.rank(), 2);
        assert_eq!(cp1.points()[0].weights(), &[Weight::new(vec![-1, 1])]);
        assert_eq!(cp1.points()[1].weights(), &[Weight::new(vec![1, -1])]);
        assert_eq!(integrate_top(&cp1, &ClassExpr::Chern(1)).unwrap(), Scalar::from_integer(2.into()));
    }

    #[test]
    fn projective_plane() {
        let cp2 = projective_space(2);
        assert_eq!(cp2.points().len(), 3);
        assert_eq!(integrate_top(&cp2, &ClassExpr::parse("c1^2").unwrap()).unwrap(), Scalar::from_integer(9.into()));
        assert_eq!(euler_characteristic(&cp2), Ok(3));
    }

    #[test]
    fn products() {
        let s = sphere_rotation();
        let ss = product(&s, &s);
        assert!(ss.validate().is_ok());
        assert_eq!(ss.points().len(), 4);
        assert_eq!(euler_characteristic(&ss), Ok(4));
        let cp1 = projective_space(1);
        assert_eq!(integrate_top(&product(&cp1, &cp1), &ClassExpr::Euler).unwrap(), Scalar::from_integer(4.into()));
        assert_eq!(ss.points()[1].label(), "(north,south)");
        assert_eq!(ss.points()[1].weights(), &[Weight::new(vec![1, 0]), Weight::new(vec![0, -1])]);
    }

    #[test]
    fn product_with_a_point() {
        let cp2 = projective_space(2);
        let x = product(&cp2, &point());
        assert!(x.validate().is_ok());
        assert_eq!((x.rank(), x.half_dim(), x.points().len()), (4, 2, 3));
        for (p, q) in cp2.points().iter().zip(x.points()) {
            assert_eq!(q.label(), format!("({},pt)", p.label()));
            assert_eq!(q.sign(), p.sign());
            for (w, v) in p.weights().iter().zip(q.weights()) {
                assert_eq!(&v.coefficients()[..3], w.coefficients());
                assert_eq!(v.coefficients()[3], 0);
            }
        }
        assert_eq!(integrate_top(&x, &ClassExpr::parse("c1^2").unwrap()).unwrap(), Scalar::from_integer(9.into()));
    }
}
