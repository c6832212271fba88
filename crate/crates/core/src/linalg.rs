//! Exact linear algebra over the rationals for small integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::{IntMatrix, LatticeVector};

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square integer matrix, if it exists and is integral.
pub fn integer_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut aug: Vec<Vec<BigRational>> = to_rational(m)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &aug[i][n + j];
            if !x.is_integer() {
                return None;
            }
            inv[(i, j)] = x.to_integer().to_i64()?;
        }
    }
    Some(inv)
}

/// Basis of the rational kernel of `m`, each vector scaled to a primitive integer vector.
pub fn integer_kernel(m: &IntMatrix) -> Vec<LatticeVector> {
    let cols = m.cols();
    let mut a = to_rational(m);
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

fn primitive(v: &[BigRational]) -> LatticeVector {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    LatticeVector::new(
        ints.iter()
            .map(|x| (x / &g).to_i64().expect("kernel entry fits in i64"))
            .collect(),
    )
}
