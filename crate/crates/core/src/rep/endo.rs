use crate::error::{Budget, Result};
use crate::field::{FpMatrix, PrimeField};

use super::hom::end_basis;
use super::FFRep;

/// Outcome of an element-by-element scan of `End(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndCensus {
    pub dim: usize,
    /// An idempotent other than 0 and 1 exists.
    pub nontrivial_idempotent: bool,
    /// Number of non-invertible endomorphisms; `None` if the scan stopped at an idempotent.
    pub non_units: Option<u128>,
}

fn scan(x: &FFRep, budget: &Budget) -> Result<EndCensus> {
    let f = x.field();
    let basis = end_basis(x)?;
    let d = basis.len();
    let p = f.p() as u128;
    if d == 1 {
        // End = F_p: idempotents 0, 1; non-units {0}
        return Ok(EndCensus {
            dim: 1,
            nontrivial_idempotent: false,
            non_units: Some(1),
        });
    }
    let total = p.checked_pow(d as u32).unwrap_or(u128::MAX);
    budget.end_check(total)?;

    let n = x.quiver().vertex_count();
    let mut elem: Vec<FpMatrix> = (0..n).map(|i| FpMatrix::zeros(x.dim_at(i), x.dim_at(i))).collect();
    let mut digits = vec![0u64; d];
    let mut non_units: u128 = 0;
    let step = |elem: &mut Vec<FpMatrix>, k: usize, f: &PrimeField| {
        for (m, b) in elem.iter_mut().zip(&basis[k]) {
            *m = m.add(f, b);
        }
    };
    for _ in 0..total {
        let unit = elem.iter().all(|m| m.is_invertible(&f));
        if !unit {
            non_units += 1;
            let zero = elem.iter().all(FpMatrix::is_zero);
            if !zero && elem.iter().all(|m| m.mul(&f, m) == *m) {
                return Ok(EndCensus {
                    dim: d,
                    nontrivial_idempotent: true,
                    non_units: None,
                });
            }
        }
        // odometer: adding b_k once per digit bump keeps elem = sum digits[k] b_k
        let mut k = 0;
        while k < d {
            step(&mut elem, k, &f);
            digits[k] += 1;
            if digits[k] < f.p() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
    Ok(EndCensus {
        dim: d,
        nontrivial_idempotent: false,
        non_units: Some(non_units),
    })
}

/// Full census of `End(X)`, scanning at most `budget.max_end_elements` elements.
pub fn end_census(x: &FFRep, budget: &Budget) -> Result<EndCensus> {
    scan(x, budget)
}

/// Nonzero and `End(X)` has no idempotents besides 0 and 1.
pub fn is_indecomposable(x: &FFRep, budget: &Budget) -> Result<bool> {
    if x.dim().is_zero() {
        return Ok(false);
    }
    Ok(!scan(x, budget)?.nontrivial_idempotent)
}

/// Indecomposable with `End(X)/rad = F_p`: the `p^(d-1)` count of non-units identifies a
/// residue field of degree one.
pub fn is_absolutely_indecomposable(x: &FFRep, budget: &Budget) -> Result<bool> {
    if x.dim().is_zero() {
        return Ok(false);
    }
    let c = scan(x, budget)?;
    if c.nontrivial_idempotent {
        return Ok(false);
    }
    let p = x.field().p() as u128;
    Ok(c.non_units == Some(p.pow(c.dim as u32 - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeVector;
    use crate::quiver::samples::*;
    use std::sync::Arc;

    #[test]
    fn kronecker_examples() {
        let k = Arc::new(kronecker());
        let f2 = PrimeField::new(2).unwrap();
        let b = Budget::default();
        let brick = FFRep::from_ints(k.clone(), f2, LatticeVector::from([1, 1]), &[vec![vec![1]], vec![vec![0]]])
            .unwrap();
        assert!(is_indecomposable(&brick, &b).unwrap());
        assert!(is_absolutely_indecomposable(&brick, &b).unwrap());
        let zero = FFRep::zero(k.clone(), f2, LatticeVector::from([1, 1])).unwrap();
        assert!(!is_indecomposable(&zero, &b).unwrap());
        let s0 = FFRep::simple(k.clone(), f2, 0).unwrap();
        assert!(is_absolutely_indecomposable(&s0, &b).unwrap());
    }

    #[test]
    fn indecomposable_but_not_absolutely() {
        // (identity, companion of x^2 + x + 1) over F_2: End = F_4
        let k = Arc::new(kronecker());
        let f2 = PrimeField::new(2).unwrap();
        let x = FFRep::from_ints(
            k,
            f2,
            LatticeVector::from([2, 2]),
            &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]],
        )
        .unwrap();
        let c = end_census(&x, &Budget::default()).unwrap();
        assert_eq!(c.dim, 2);
        assert_eq!(c.non_units, Some(1));
        assert!(is_indecomposable(&x, &Budget::default()).unwrap());
        assert!(!is_absolutely_indecomposable(&x, &Budget::default()).unwrap());
    }

    #[test]
    fn end_scan_respects_budget() {
        let k = Arc::new(kronecker());
        let f3 = PrimeField::new(3).unwrap();
        let zero = FFRep::zero(k, f3, LatticeVector::from([2, 2])).unwrap();
        let tight = Budget {
            max_end_elements: 100,
            ..Budget::default()
        };
        assert!(is_indecomposable(&zero, &tight).is_err());
    }
}
