use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Budget, Result};
use crate::field::PrimeField;
use crate::lattice::LatticeVector;
use crate::poly::{interpolate, IntPoly};
use crate::quiver::Quiver;

use super::classes::iso_classes;
use super::endo::is_absolutely_indecomposable;

/// `a_dim(q)` together with the counts it was recovered from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KacPolynomial {
    pub coefficients: IntPoly,
    pub primes: Vec<u64>,
    pub counts: Vec<u64>,
    pub degree_bound: usize,
}

/// Number of isomorphism classes of absolutely indecomposable representations over `F_p`.
pub fn count_absolutely_indecomposable(
    quiver: &Arc<Quiver>,
    dim: &LatticeVector,
    field: PrimeField,
    budget: &Budget,
) -> Result<u64> {
    let table = iso_classes(quiver, dim, field, budget)?;
    let verdicts: Vec<Result<bool>> = (0..table.len())
        .into_par_iter()
        .map(|c| is_absolutely_indecomposable(&table.representative(c), budget))
        .collect();
    let mut count = 0;
    for v in verdicts {
        count += v? as u64;
    }
    Ok(count)
}

/// Counts at each prime and interpolates with degree bound `max(0, 1 - q(dim))`.
///
/// The first `bound + 1` primes determine the polynomial; any further primes are held out
/// and must agree with it.
pub fn kac_polynomial(
    quiver: &Arc<Quiver>,
    dim: &LatticeVector,
    primes: &[u64],
    budget: &Budget,
) -> Result<KacPolynomial> {
    let degree_bound = (1 - quiver.tits_form(dim)?).max(0) as usize;
    let fields = primes
        .iter()
        .map(|&p| PrimeField::new(p))
        .collect::<Result<Vec<_>>>()?;
    if fields.len() < degree_bound + 1 {
        return Err(crate::error::Error::InsufficientPrimes {
            needed: degree_bound + 1,
            got: fields.len(),
        });
    }
    let counts = fields
        .par_iter()
        .map(|&f| count_absolutely_indecomposable(quiver, dim, f, budget))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(u64, i128)> = primes.iter().zip(&counts).map(|(&p, &c)| (p, c as i128)).collect();
    let coefficients = interpolate(&points, degree_bound)?;
    Ok(KacPolynomial {
        coefficients,
        primes: primes.to_vec(),
        counts,
        degree_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::quiver::samples::*;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVector {
        LatticeVector::from(x)
    }

    #[test]
    fn kronecker_kac_polynomials() {
        let k = Arc::new(kronecker());
        let b = Budget::default();
        let a = kac_polynomial(&k, &v([1, 1]), &[2, 3], &b).unwrap();
        assert_eq!(a.coefficients.coefficients(), &[1, 1]);
        assert_eq!(a.counts, vec![3, 4]);
        let a = kac_polynomial(&k, &v([2, 1]), &[2], &b).unwrap();
        assert_eq!(a.coefficients.coefficients(), &[1]);
        let a = kac_polynomial(&k, &v([2, 0]), &[2], &b).unwrap();
        assert_eq!(a.coefficients.degree(), None);
        assert!(matches!(
            kac_polynomial(&k, &v([1, 1]), &[2], &b),
            Err(Error::InsufficientPrimes { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn held_out_prime_agrees() {
        let k = Arc::new(kronecker());
        let a = kac_polynomial(&k, &v([1, 1]), &[2, 3, 5], &Budget::default()).unwrap();
        assert_eq!(a.coefficients.to_string(), "q + 1");
        assert_eq!(a.counts, vec![3, 4, 6]);
    }
}
