use std::sync::Arc;

use aql_core::preprojective::*;
use aql_core::quiver::samples::*;
use aql_core::rep::{enumerate_subreps, hom_dim, iso_classes, stability_status, FFRep, StabilityVerdict, StabilityWeight};
use aql_core::{Budget, FpMatrix, LatticeVector, PrimeField, Quiver};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, f: &PrimeField, r: usize, c: usize) -> FpMatrix {
    FpMatrix::from_vec(r, c, (0..r * c).map(|_| rng.gen_range(0..f.p())).collect())
}

fn random_double(rng: &mut ChaCha8Rng, q: &Arc<Quiver>, f: PrimeField, dim: &LatticeVector) -> DoubleRep {
    let x: Vec<FpMatrix> = q
        .arrows()
        .iter()
        .map(|a| random_matrix(rng, &f, dim[a.target] as usize, dim[a.source] as usize))
        .collect();
    let y: Vec<FpMatrix> = q
        .arrows()
        .iter()
        .map(|a| random_matrix(rng, &f, dim[a.source] as usize, dim[a.target] as usize))
        .collect();
    DoubleRep::new(&FFRep::new(q.clone(), f, dim.clone(), x).unwrap(), y).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &PrimeField, n: usize) -> FpMatrix {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.is_invertible(f) {
            return m;
        }
    }
}

proptest! {
    #[test]
    fn trace_identity_and_equivariance(seed in any::<u64>(), which in 0usize..3, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let (q, dim) = match which {
            0 => (kronecker(), LatticeVector::from([2, 2])),
            1 => (a2_tilde(), LatticeVector::from([1, 2, 2])),
            _ => (d4_tilde(), LatticeVector::from([2, 1, 1, 1, 1])),
        };
        let q = Arc::new(q);
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_double(&mut rng, &q, f, &dim);
        // moment_map itself asserts the vanishing total trace
        let mu = moment_map(&x).unwrap();
        let g: Vec<FpMatrix> = dim.iter().map(|&d| random_invertible(&mut rng, &f, d as usize)).collect();
        let g_inv: Vec<FpMatrix> = g.iter().map(|m| m.inverse(&f).unwrap()).collect();
        let mu_g = moment_map(&x.act(&g, &g_inv)).unwrap();
        for i in 0..dim.len() {
            let conj = g[i].mul(&f, &mu.blocks[i]).mul(&f, &g_inv[i]);
            prop_assert_eq!(&mu_g.blocks[i], &conj);
        }
    }
}

#[test]
fn fiber_dimension_law() {
    let b = Budget::default();
    for (q, dims, primes) in [
        (kronecker(), vec![LatticeVector::from([1, 1]), LatticeVector::from([2, 2]), LatticeVector::from([2, 1])], vec![2, 3]),
        (a2_tilde(), vec![LatticeVector::from([1, 1, 1])], vec![2, 3]),
    ] {
        let q = Arc::new(q);
        for dim in &dims {
            for &p in &primes {
                let f = PrimeField::new(p).unwrap();
                for x in iso_classes(&q, dim, f, &b).unwrap().representatives() {
                    let lifts = lift_space(&x).unwrap().len() as i64;
                    let expect = hom_dim(&x, &x).unwrap() as i64 - q.tits_form(dim).unwrap();
                    assert_eq!(lifts, expect, "{dim} over F_{p}");
                }
            }
        }
    }
}

#[test]
fn stability_transports_to_the_double() {
    let q = Arc::new(kronecker());
    let b = Budget::default();
    let theta = StabilityWeight::new(LatticeVector::from([1, -1]));
    for p in [2, 3] {
        let f = PrimeField::new(p).unwrap();
        for dim in [LatticeVector::from([1, 1]), LatticeVector::from([2, 2])] {
            for x in iso_classes(&q, &dim, f, &b).unwrap().representatives() {
                let verdict = stability_status(&x, &theta, &b).unwrap();
                if !verdict.is_semistable() {
                    continue;
                }
                let lifted = DoubleRep::zero_lift(&x).unwrap();
                let double = stability_status(lifted.as_rep(), &theta, &b).unwrap();
                assert_eq!(
                    matches!(verdict, StabilityVerdict::Stable),
                    matches!(double, StabilityVerdict::Stable)
                );
                assert!(double.is_semistable());
            }
        }
    }
}

#[test]
fn subreps_of_rho_fixed_reps_stay_rho_fixed() {
    let q = Arc::new(a2_tilde());
    let f = PrimeField::new(2).unwrap();
    let b = Budget::default();
    for x in iso_classes(&q, &LatticeVector::from([1, 1, 1]), f, &b).unwrap().representatives() {
        let lift = DoubleRep::zero_lift(&x).unwrap();
        assert!(is_pi_rep(&lift, &LatticeVector::from([0, 0, 0])).unwrap());
        for beta in x.dim().box_below() {
            for w in enumerate_subreps(lift.as_rep(), &beta, &b).unwrap() {
                let sub = w.sub_rep(lift.as_rep());
                assert!(sub.maps()[3..].iter().all(FpMatrix::is_zero));
            }
        }
        assert_eq!(rho(&lift), x);
    }
}
