use std::sync::Arc;

use aql_core::fk::*;
use aql_core::quiver::samples::*;
use aql_core::rep::{end_basis, is_indecomposable, iso_classes};
use aql_core::{AffineRootSystem, Budget, LatticeVector, PrimeField, Quiver};
use num_rational::BigRational;
use proptest::prelude::*;

fn naive_sign(q: &Quiver, a: &LatticeVector, b: &LatticeVector) -> i64 {
    let mut e: i64 = (0..a.len()).map(|i| a[i] * b[i]).sum();
    for arrow in q.arrows() {
        e -= a[arrow.source] * b[arrow.target];
    }
    if e % 2 == 0 { 1 } else { -1 }
}

/// dim End of the unique indecomposable of dimension `a` over F_2, found by brute force.
fn brute_end_dim(q: &Arc<Quiver>, a: &LatticeVector) -> i64 {
    let f = PrimeField::new(2).unwrap();
    let b = Budget::default();
    let table = iso_classes(q, a, f, &b).unwrap();
    let dims: Vec<i64> = table
        .representatives()
        .filter(|x| is_indecomposable(x, &b).unwrap())
        .map(|x| end_basis(&x).unwrap().len() as i64)
        .collect();
    assert_eq!(dims.len(), 1, "real root {a} should have one indecomposable class");
    dims[0]
}

#[test]
fn xi_matches_brute_force_endomorphisms() {
    for (q, bound) in [
        (kronecker(), LatticeVector::from([3, 3])),
        (a2_tilde(), LatticeVector::from([2, 2, 2])),
        (d4_tilde(), LatticeVector::from([2, 1, 1, 1, 1])),
    ] {
        let rs = AffineRootSystem::new(&q).unwrap();
        let q = Arc::new(q);
        let mut regular_deep = 0;
        for root in rs.enumerate_positive_roots(&bound, &Budget::default()).unwrap() {
            if !root.is_real {
                continue;
            }
            let end = brute_end_dim(&q, &root.vector);
            assert_eq!(rs.indecomposable_end_dim(&root.vector).unwrap(), Some(end), "{}", root.vector);
            let expect = if (1 + end) % 2 == 0 { 1 } else { -1 };
            assert_eq!(xi(&rs, &root.vector).unwrap(), expect);
            if end > 1 {
                regular_deep += 1;
            }
        }
        if q.vertex_count() == 3 {
            assert!(regular_deep > 0, "expected regular roots beyond the mouth of a tube");
        }
    }
}

#[test]
fn epsilon_matches_naive_sign() {
    for q in [kronecker(), a2_tilde(), d4_tilde()] {
        let n = q.vertex_count();
        let bound = LatticeVector::new(vec![2; n]);
        let pts: Vec<_> = bound.box_below().collect();
        for a in pts.iter().step_by(3) {
            for b in &pts {
                assert_eq!(epsilon(&q, a, b).unwrap(), naive_sign(&q, a, b));
            }
        }
    }
}

#[test]
fn grade_spans_match_graded_dimension() {
    for q in [kronecker(), a2_tilde(), d4_tilde()] {
        let rs = AffineRootSystem::new(&q).unwrap();
        let alg = FkAlgebra::new(&rs, FkConfig::new(&rs, 2)).unwrap();
        for g in (2 * rs.delta()).box_below() {
            assert_eq!(alg.basis_count_at(&g) as i64, graded_dimension(&rs, &g).unwrap());
        }
    }
}

#[test]
fn canonical_class_ignores_delta_shift() {
    let rs = AffineRootSystem::new(&d4_tilde()).unwrap();
    let alg = FkAlgebra::new(&rs, FkConfig::new(&rs, 2)).unwrap();
    let a = LatticeVector::from([1, 1, 0, 1, 0]);
    assert_eq!(
        alg.canonical_class(&a, 1).unwrap(),
        alg.canonical_class(&(&a + rs.delta()), 1).unwrap()
    );
    assert!(alg.canonical_class(rs.delta(), 2).unwrap().is_zero());
}

fn a2_algebra() -> FkAlgebra {
    let rs = AffineRootSystem::new(&a2_tilde()).unwrap();
    FkAlgebra::new(&rs, FkConfig::new(&rs, 2)).unwrap()
}

proptest! {
    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        i in 0usize..100, j in 0usize..100, k in 0usize..100, c in -3i64..=3
    ) {
        let alg = a2_algebra();
        let n = alg.basis().len();
        let (x, y) = (&alg.basis()[i % n], &alg.basis()[j % n]);
        let gy = alg.grade(y);
        let same: Vec<_> = alg.basis().iter().filter(|b| alg.grade(b) == gy).collect();
        let z = same[k % same.len()];
        prop_assume!(alg.within_cutoff(&(&alg.grade(x) + &gy)));
        let ex = FkElement::basis(x.clone());
        let mut comb = FkElement::basis(y.clone());
        comb.add_int(z.clone(), c);
        let lhs = alg.bracket(&ex, &comb).unwrap();
        let mut rhs = alg.bracket_keys(x, y).unwrap();
        rhs.add_scaled(&alg.bracket_keys(x, z).unwrap(), &BigRational::from_integer(c.into()));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.negated(), alg.bracket(&comb, &ex).unwrap());
    }

    #[test]
    fn twisted_cocycle_is_a_coboundary(a in proptest::collection::vec(0i64..=2, 5), b in proptest::collection::vec(0i64..=2, 5)) {
        let rs = AffineRootSystem::new(&d4_tilde()).unwrap();
        let (a, b) = (LatticeVector::new(a), LatticeVector::new(b));
        let ratio = epsilon_star(&rs, &a, &b).unwrap() * epsilon(rs.quiver(), &a, &b).unwrap();
        let cob = xi(&rs, &(&a + &b)).unwrap() * xi(&rs, &a).unwrap() * xi(&rs, &b).unwrap();
        prop_assert_eq!(ratio, cob);
    }
}
