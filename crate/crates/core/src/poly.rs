//! Integer polynomials recovered from point counts by exact Lagrange interpolation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match d {
                0 => write!(f, "{mag}")?,
                _ if mag != 1 => write!(f, "{mag}*")?,
                _ => {}
            }
            match d {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Interpolates the first `degree_bound + 1` points and checks the rest against the result.
pub fn interpolate(points: &[(u64, i128)], degree_bound: usize) -> Result<IntPoly> {
    if points.len() < degree_bound + 1 {
        return Err(Error::InsufficientPrimes {
            needed: degree_bound + 1,
            got: points.len(),
        });
    }
    let fit = &points[..degree_bound + 1];
    let mut coeffs = vec![BigRational::zero(); fit.len()];
    for (i, &(xi, yi)) in fit.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - xj) / (xi - xj), expanded
        let mut basis = vec![BigRational::from_integer(BigInt::from(1))];
        let mut denom = BigInt::from(1);
        for (j, &(xj, _)) in fit.iter().enumerate() {
            if i == j {
                continue;
            }
            if xi == xj {
                return Err(Error::Interpolation(format!("repeated abscissa {xi}")));
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(BigInt::from(xj));
            }
            basis = next;
            denom *= BigInt::from(xi as i128 - xj as i128);
        }
        let scale = BigRational::new(BigInt::from(yi), denom);
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !c.is_integer() {
            return Err(Error::Interpolation(format!("non-integral coefficient {c}")));
        }
        let v = c
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Interpolation(format!("coefficient {c} out of range")))?;
        ints.push(v);
    }
    let poly = IntPoly::new(ints);
    for &(x, y) in points {
        let at = poly.eval(x as i64);
        if at != y {
            return Err(Error::Interpolation(format!(
                "polynomial {poly} gives {at} at {x}, count was {y}"
            )));
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_polynomials() {
        let p = interpolate(&[(2, 3), (3, 4)], 1).unwrap();
        assert_eq!(p.coefficients(), &[1, 1]);
        assert_eq!(p.to_string(), "q + 1");
        let p = interpolate(&[(2, 7), (3, 7), (5, 7)], 0).unwrap();
        assert_eq!(p.coefficients(), &[7]);
        let p = interpolate(&[(2, 4 - 2 + 1), (3, 9 - 3 + 1), (5, 25 - 5 + 1)], 2).unwrap();
        assert_eq!(p.to_string(), "q^2 - q + 1");
        assert_eq!(IntPoly::default().to_string(), "0");
    }

    #[test]
    fn rejects_inconsistent_or_short_data() {
        assert!(matches!(interpolate(&[(2, 1)], 1), Err(Error::InsufficientPrimes { .. })));
        assert!(matches!(interpolate(&[(2, 3), (3, 4), (5, 7)], 1), Err(Error::Interpolation(_))));
        assert!(interpolate(&[(2, 0), (3, 1)], 1).is_ok());
        assert!(matches!(interpolate(&[(2, 0), (4, 1)], 1), Err(Error::Interpolation(_))));
    }
}
