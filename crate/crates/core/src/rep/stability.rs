use crate::affine::classify_affine;
use crate::error::{Budget, Error, Result};
use crate::lattice::LatticeVector;
use crate::quiver::Quiver;

use super::subrep::{enumerate_subreps, Subrep};
use super::FFRep;

/// A weight `theta`, paired with dimension vectors by the dot product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilityWeight {
    pub theta: LatticeVector,
}

impl StabilityWeight {
    pub fn new(theta: LatticeVector) -> Self {
        StabilityWeight { theta }
    }

    pub fn pairing(&self, dim: &LatticeVector) -> i64 {
        self.theta.dot(dim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    /// Destabilised by `witness`, a subrep of maximal pairing.
    Unstable { witness: Subrep, pairing: i64 },
    Semistable,
    Stable,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable)
    }

    pub fn is_semistable(&self) -> bool {
        !matches!(self, StabilityVerdict::Unstable { .. })
    }
}

/// King's criterion over all proper nonzero subreps; requires `<theta, dim X> = 0`.
pub fn stability_status(x: &FFRep, theta: &StabilityWeight, budget: &Budget) -> Result<StabilityVerdict> {
    if theta.theta.len() != x.dim().len() {
        return Err(Error::IndexMismatch {
            expected: x.dim().len(),
            got: theta.theta.len(),
        });
    }
    let total = theta.pairing(x.dim());
    if total != 0 {
        return Err(Error::NonzeroTotalPairing(total));
    }
    budget.check("subdimension vectors", x.dim().box_volume())?;
    let mut worst: Option<(i64, Subrep)> = None;
    let mut zero_pairing = false;
    for beta in x.dim().box_below() {
        if beta.is_zero() || &beta == x.dim() {
            continue;
        }
        let pairing = theta.pairing(&beta);
        if pairing < 0 || (pairing == 0 && zero_pairing) {
            continue;
        }
        if worst.as_ref().is_some_and(|(w, _)| pairing <= *w) {
            continue;
        }
        let subs = enumerate_subreps(x, &beta, budget)?;
        let Some(first) = subs.into_iter().next() else {
            continue;
        };
        if pairing == 0 {
            zero_pairing = true;
        } else {
            worst = Some((pairing, first));
        }
    }
    Ok(match worst {
        Some((pairing, witness)) => StabilityVerdict::Unstable { witness, pairing },
        None if zero_pairing => StabilityVerdict::Semistable,
        None => StabilityVerdict::Stable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityKind {
    /// `dim V -> e(a, dim V) - e(dim V, a)`.
    Canonical(LatticeVector),
    /// `dim V -> e(delta, dim V)`.
    Regular,
}

pub fn standard_stability(q: &Quiver, kind: &StabilityKind) -> Result<StabilityWeight> {
    let e = q.euler_matrix();
    let row = |a: &LatticeVector, m: &crate::lattice::IntMatrix| -> LatticeVector {
        m.transpose().apply(a)
    };
    match kind {
        StabilityKind::Regular => {
            let affine = classify_affine(q)?;
            Ok(StabilityWeight::new(row(&affine.delta, &e)))
        }
        StabilityKind::Canonical(a) => {
            q.check(a)?;
            let left = row(a, &e);
            let right = e.apply(a);
            Ok(StabilityWeight::new(&left - &right))
        }
    }
}

/// `<l, a> = 0` and `<l, b> != 0` for every `0 < b < a`.
pub fn is_generic(q: &Quiver, lambda: &StabilityWeight, a: &LatticeVector, budget: &Budget) -> Result<bool> {
    q.check(a)?;
    q.check(&lambda.theta)?;
    if !a.is_nonnegative() {
        return Err(Error::ShapeMismatch(format!("{a} is not a dimension vector")));
    }
    if lambda.pairing(a) != 0 {
        return Ok(false);
    }
    budget.check("subdimension vectors", a.box_volume())?;
    Ok(a
        .box_below()
        .filter(|b| !b.is_zero() && b != a)
        .all(|b| lambda.pairing(&b) != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::quiver::samples::*;
    use std::sync::Arc;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVector {
        LatticeVector::from(x)
    }

    #[test]
    fn standard_weights() {
        let k = kronecker();
        assert_eq!(standard_stability(&k, &StabilityKind::Regular).unwrap().theta, v([1, -1]));
        let c = standard_stability(&k, &StabilityKind::Canonical(v([2, 1]))).unwrap();
        assert_eq!(c.theta, v([2, -4]));
        assert_eq!(c.pairing(&v([2, 1])), 0);
        assert!(matches!(
            standard_stability(&Quiver::from_arrows(2, &[(0, 1)]).unwrap(), &StabilityKind::Regular),
            Err(Error::NotAffine(_))
        ));
    }

    #[test]
    fn kronecker_verdicts() {
        let k = Arc::new(kronecker());
        let f = PrimeField::new(3).unwrap();
        let b = Budget::default();
        let lreg = StabilityWeight::new(v([1, -1]));
        let brick = FFRep::from_ints(k.clone(), f, v([1, 1]), &[vec![vec![1]], vec![vec![0]]]).unwrap();
        assert_eq!(stability_status(&brick, &lreg, &b).unwrap(), StabilityVerdict::Stable);
        let zero = FFRep::zero(k.clone(), f, v([1, 1])).unwrap();
        match stability_status(&zero, &lreg, &b).unwrap() {
            StabilityVerdict::Unstable { witness, pairing } => {
                assert_eq!(witness.dim, v([1, 0]));
                assert_eq!(pairing, 1);
            }
            other => panic!("expected unstable, got {other:?}"),
        }
        let s0 = FFRep::simple(k.clone(), f, 0).unwrap();
        assert_eq!(
            stability_status(&s0, &StabilityWeight::new(v([0, 5])), &b).unwrap(),
            StabilityVerdict::Stable
        );
        assert!(matches!(
            stability_status(&s0, &lreg, &b),
            Err(Error::NonzeroTotalPairing(1))
        ));
        let zz = brick.direct_sum(&brick).unwrap();
        assert_eq!(stability_status(&zz, &lreg, &b).unwrap(), StabilityVerdict::Semistable);
    }

    #[test]
    fn genericity() {
        let k = kronecker();
        let b = Budget::default();
        let l = StabilityWeight::new(v([1, -1]));
        assert!(is_generic(&k, &l, &v([1, 1]), &b).unwrap());
        assert!(!is_generic(&k, &l, &v([2, 2]), &b).unwrap());
        assert!(!is_generic(&k, &StabilityWeight::new(v([0, 0])), &v([1, 1]), &b).unwrap());
    }
}
