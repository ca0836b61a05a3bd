//! Property tests for the exact-arithmetic substrate: field axioms,
//! determinant identities, and root-isolation invariants.

use maxent_core::exact::{
    bareiss_det, cauchy_bound, count_real_roots_in, isolate_real_roots, rat, squarefree_part,
    BigRational, Conj, GaussianRational, Matrix, Ring, UniPoly,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (arb_rational(), arb_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms((a, b, c) in (arb_rational(), arb_rational(), arb_rational())) {
        prop_assert_eq!(
            (a.clone() + b.clone()) * c.clone(),
            a.clone() * c.clone() + b.clone() * c.clone()
        );
        if !b.is_zero() {
            prop_assert_eq!((a.clone() / b.clone()) * b.clone(), a);
        }
    }

    #[test]
    fn gaussian_field_axioms((a, b, c) in (arb_gaussian(), arb_gaussian(), arb_gaussian())) {
        prop_assert_eq!(
            (a.clone() + b.clone()) * c.clone(),
            a.clone() * c.clone() + b.clone() * c.clone()
        );
        if !b.is_zero() {
            prop_assert_eq!((a.clone() / b.clone()) * b.clone(), a.clone());
        }
        let n = a.clone() * a.conj();
        prop_assert!(n.is_real());
        prop_assert!(n.re >= rat(0));
    }
}

/// Independent determinant route: Laplace cofactor expansion along the first
/// row.
fn cofactor_det<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = T::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
            m[(r + 1, if c < j { c } else { c + 1 })].clone()
        });
        let term = m[(0, j)].clone() * cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn arb_int_matrix(n: usize) -> impl Strategy<Value = Matrix<BigRational>> {
    proptest::collection::vec(-9i64..=9, n * n)
        .prop_map(move |vals| Matrix::from_fn(n, n, |i, j| rat(vals[i * n + j])))
}

fn arb_rational_matrix(n: usize) -> impl Strategy<Value = Matrix<BigRational>> {
    proptest::collection::vec(arb_rational(), n * n)
        .prop_map(move |vals| Matrix::from_fn(n, n, |i, j| vals[i * n + j].clone()))
}

proptest! {
    #[test]
    fn bareiss_matches_cofactor_3x3(m in arb_int_matrix(3)) {
        prop_assert_eq!(bareiss_det(&m), cofactor_det(&m));
    }

    #[test]
    fn bareiss_matches_cofactor_4x4(m in arb_int_matrix(4)) {
        prop_assert_eq!(bareiss_det(&m), cofactor_det(&m));
    }

    #[test]
    fn det_is_multiplicative_4x4((a, b) in (arb_rational_matrix(4), arb_rational_matrix(4))) {
        prop_assert_eq!(bareiss_det(&a.mul(&b)), bareiss_det(&a) * bareiss_det(&b));
    }
}

fn poly_from_roots(roots: &[BigRational]) -> UniPoly<BigRational> {
    let mut f = UniPoly::constant(BigRational::one());
    for r in roots {
        f = f * UniPoly::new("x", vec![-r.clone(), BigRational::one()]);
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_roots_recovered_exactly(
        raw in proptest::collection::vec((-12i64..=12, 1i64..=6), 1..=4)
    ) {
        let mut roots: Vec<BigRational> = raw
            .into_iter()
            .map(|(n, d)| BigRational::new(n.into(), d.into()))
            .collect();
        roots.sort();
        roots.dedup();
        // Multiply in an irreducible quadratic so isolation also sees
        // non-real content.
        let f = poly_from_roots(&roots) * UniPoly::new("x", vec![rat(1), rat(0), rat(1)]);
        let isolated = isolate_real_roots(&f).unwrap();
        let exact: Vec<BigRational> =
            isolated.iter().filter_map(|iv| iv.exact_root.clone()).collect();
        prop_assert_eq!(exact, roots);
    }

    #[test]
    fn sturm_total_matches_interval_count(
        coeffs in proptest::collection::vec(-20i64..=20, 2..=7)
    ) {
        let f = UniPoly::new("x", coeffs.into_iter().map(rat).collect());
        prop_assume!(!f.is_zero());
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let sf = squarefree_part(&f);
        prop_assume!(sf.degree().unwrap_or(0) >= 1);
        let intervals = isolate_real_roots(&f).unwrap();
        let bound = cauchy_bound(&sf);
        let total = count_real_roots_in(&sf, &(-bound.clone()), &bound).unwrap();
        prop_assert_eq!(intervals.len(), total);
        // Intervals are pairwise disjoint and each contains its root.
        for w in intervals.windows(2) {
            prop_assert!(w[0].hi < w[1].lo);
        }
        for iv in &intervals {
            if let Some(r) = &iv.exact_root {
                prop_assert!(f.eval(r).is_zero());
            } else {
                prop_assert!(iv.lo < iv.hi);
                let n = count_real_roots_in(&sf, &iv.lo, &iv.hi).unwrap();
                prop_assert_eq!(n, 1);
            }
        }
    }
}
