//! Representations of a quiver over a prime field, enumerated exhaustively.

mod classes;
mod endo;
mod hall;
mod hom;
mod kac;
mod stability;
mod subrep;

pub use classes::{gl_order, iso_classes, ClassTable};
pub use endo::{end_census, is_absolutely_indecomposable, is_indecomposable, EndCensus};
pub use hall::{
    commutator_chi, hall_euler_characteristic, hall_number, ChiEntry, ClassFunction, Fingerprint,
    HallContext, HallCount,
};
pub use hom::{end_basis, ext_dim, hom_basis, hom_dim};
pub use kac::{count_absolutely_indecomposable, kac_polynomial, KacPolynomial};
pub use stability::{
    is_generic, stability_status, standard_stability, StabilityKind, StabilityVerdict,
    StabilityWeight,
};
pub use subrep::{enumerate_subreps, subspaces, Subrep};

use std::sync::Arc;

use crate::error::{Budget, Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::lattice::{IntMatrix, LatticeVector};
use crate::quiver::Quiver;

/// A point of `Rep(Q, dim)(F_p)`: one `dim[t] x dim[s]` matrix per arrow `s -> t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFRep {
    quiver: Arc<Quiver>,
    field: PrimeField,
    dim: LatticeVector,
    maps: Vec<FpMatrix>,
}

fn check_dim(q: &Quiver, dim: &LatticeVector) -> Result<()> {
    if dim.len() != q.vertex_count() {
        return Err(Error::IndexMismatch {
            expected: q.vertex_count(),
            got: dim.len(),
        });
    }
    if !dim.is_nonnegative() {
        return Err(Error::ShapeMismatch(format!("negative dimension vector {dim}")));
    }
    Ok(())
}

impl FFRep {
    pub fn new(
        quiver: Arc<Quiver>,
        field: PrimeField,
        dim: LatticeVector,
        maps: Vec<FpMatrix>,
    ) -> Result<Self> {
        check_dim(&quiver, &dim)?;
        if maps.len() != quiver.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let want = (dim[a.target] as usize, dim[a.source] as usize);
            if (m.rows(), m.cols()) != want {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
            if m.data().iter().any(|&x| x >= field.p()) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` has entries outside {field}",
                    a.id
                )));
            }
        }
        Ok(FFRep {
            quiver,
            field,
            dim,
            maps,
        })
    }

    /// Builds from integer matrices (one per arrow, as rows), reduced mod p.
    pub fn from_ints(
        quiver: Arc<Quiver>,
        field: PrimeField,
        dim: LatticeVector,
        maps: &[Vec<Vec<i64>>],
    ) -> Result<Self> {
        check_dim(&quiver, &dim)?;
        let mats = quiver
            .arrows()
            .iter()
            .zip(maps)
            .map(|(a, rows)| {
                if rows.is_empty() {
                    FpMatrix::zeros(dim[a.target] as usize, dim[a.source] as usize)
                } else {
                    FpMatrix::from_rows(&field, rows)
                }
            })
            .collect();
        FFRep::new(quiver, field, dim, mats)
    }

    pub fn zero(quiver: Arc<Quiver>, field: PrimeField, dim: LatticeVector) -> Result<Self> {
        check_dim(&quiver, &dim)?;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| FpMatrix::zeros(dim[a.target] as usize, dim[a.source] as usize))
            .collect();
        FFRep::new(quiver, field, dim, maps)
    }

    pub fn simple(quiver: Arc<Quiver>, field: PrimeField, i: usize) -> Result<Self> {
        let dim = quiver.simple_root(i);
        FFRep::zero(quiver, field, dim)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> &LatticeVector {
        &self.dim
    }

    pub fn dim_at(&self, i: usize) -> usize {
        self.dim[i] as usize
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &FpMatrix {
        &self.maps[arrow]
    }

    pub(crate) fn same_setting(&self, other: &FFRep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if !Arc::ptr_eq(&self.quiver, &other.quiver) && *self.quiver != *other.quiver {
            return Err(Error::MixedQuiver);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &FFRep) -> Result<FFRep> {
        self.same_setting(other)?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(x, y)| {
                let mut m = FpMatrix::zeros(x.rows() + y.rows(), x.cols() + y.cols());
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        m.set(r, c, x.get(r, c));
                    }
                }
                for r in 0..y.rows() {
                    for c in 0..y.cols() {
                        m.set(x.rows() + r, x.cols() + c, y.get(r, c));
                    }
                }
                m
            })
            .collect();
        FFRep::new(self.quiver.clone(), self.field, &self.dim + &other.dim, maps)
    }

    /// `g . x` with `(g . x)_a = g_t x_a g_s^{-1}`; `g` and `g_inv` are given per vertex.
    pub fn act(&self, g: &[FpMatrix], g_inv: &[FpMatrix]) -> FFRep {
        let f = &self.field;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, x)| g[a.target].mul(f, x).mul(f, &g_inv[a.source]))
            .collect();
        FFRep {
            quiver: self.quiver.clone(),
            field: self.field,
            dim: self.dim.clone(),
            maps,
        }
    }
}

/// A representation with integer matrices, reducible modulo any prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRep {
    quiver: Arc<Quiver>,
    dim: LatticeVector,
    maps: Vec<IntMatrix>,
}

impl IntRep {
    pub fn new(quiver: Arc<Quiver>, dim: LatticeVector, maps: Vec<IntMatrix>) -> Result<Self> {
        check_dim(&quiver, &dim)?;
        if maps.len() != quiver.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if (m.rows(), m.cols()) != (dim[a.target] as usize, dim[a.source] as usize) {
                return Err(Error::ShapeMismatch(format!("arrow `{}`", a.id)));
            }
        }
        Ok(IntRep { quiver, dim, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, dim: LatticeVector) -> Result<Self> {
        check_dim(&quiver, &dim)?;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| IntMatrix::zeros(dim[a.target] as usize, dim[a.source] as usize))
            .collect();
        IntRep::new(quiver, dim, maps)
    }

    pub fn simple(quiver: Arc<Quiver>, i: usize) -> Result<Self> {
        let dim = quiver.simple_root(i);
        IntRep::zero(quiver, dim)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &LatticeVector {
        &self.dim
    }

    pub fn reduce(&self, field: PrimeField) -> FFRep {
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let (r, c) = (m.rows(), m.cols());
                let data = (0..r * c).map(|k| field.from_i64(m[(k / c, k % c)])).collect();
                FpMatrix::from_vec(r, c, data)
            })
            .collect();
        FFRep {
            quiver: self.quiver.clone(),
            field,
            dim: self.dim.clone(),
            maps,
        }
    }
}

/// The affine space `Rep(Q, dim)(F_p)` with a base-p encoding of its points.
///
/// Entries are laid out arrow by arrow, each matrix row-major; the first entry is the
/// most significant digit, so numeric order on codes is lexicographic order on points.
#[derive(Debug, Clone)]
pub struct RepSpace {
    quiver: Arc<Quiver>,
    field: PrimeField,
    dim: LatticeVector,
    offsets: Vec<usize>,
    entries: usize,
    size: u64,
}

impl RepSpace {
    pub fn new(quiver: Arc<Quiver>, field: PrimeField, dim: LatticeVector, budget: &Budget) -> Result<Self> {
        check_dim(&quiver, &dim)?;
        let mut offsets = Vec::with_capacity(quiver.arrows().len());
        let mut entries = 0usize;
        for a in quiver.arrows() {
            offsets.push(entries);
            entries += (dim[a.source] * dim[a.target]) as usize;
        }
        let size = (field.p() as u128)
            .checked_pow(entries as u32)
            .filter(|&s| s <= u64::MAX as u128)
            .ok_or(Error::BudgetExceeded {
                what: "representation space points",
                needed: u128::MAX,
                limit: budget.max_ops,
            })?;
        budget.check("representation space points", size)?;
        Ok(RepSpace {
            quiver,
            field,
            dim,
            offsets,
            entries,
            size: size as u64,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> &LatticeVector {
        &self.dim
    }

    /// Number of matrix entries, i.e. the dimension of the space.
    pub fn entries(&self) -> usize {
        self.entries
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn decode(&self, mut code: u64) -> FFRep {
        let p = self.field.p();
        let mut digits = vec![0u64; self.entries];
        for d in digits.iter_mut().rev() {
            *d = code % p;
            code /= p;
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.offsets)
            .map(|(a, &off)| {
                let (r, c) = (self.dim[a.target] as usize, self.dim[a.source] as usize);
                FpMatrix::from_vec(r, c, digits[off..off + r * c].to_vec())
            })
            .collect();
        FFRep {
            quiver: self.quiver.clone(),
            field: self.field,
            dim: self.dim.clone(),
            maps,
        }
    }

    pub fn encode(&self, x: &FFRep) -> Result<u64> {
        if x.field != self.field || x.dim != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "representation of dimension {} over {} in space of dimension {} over {}",
                x.dim, x.field, self.dim, self.field
            )));
        }
        let p = self.field.p();
        Ok(x.maps
            .iter()
            .flat_map(|m| m.data().iter())
            .fold(0u64, |acc, &d| acc * p + d))
    }

    pub fn iter(&self) -> impl Iterator<Item = FFRep> + '_ {
        (0..self.size).map(move |c| self.decode(c))
    }
}

/// Every point of `Rep(Q, dim)(F_p)` exactly once, in increasing code order.
pub fn enumerate_reps(
    quiver: &Arc<Quiver>,
    dim: &LatticeVector,
    field: PrimeField,
    budget: &Budget,
) -> Result<Vec<FFRep>> {
    let space = RepSpace::new(quiver.clone(), field, dim.clone(), budget)?;
    Ok(space.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::samples::*;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVector {
        LatticeVector::from(x)
    }

    #[test]
    fn enumeration_sizes() {
        let k = Arc::new(kronecker());
        let b = Budget::default();
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(enumerate_reps(&k, &v([1, 1]), f2, &b).unwrap().len(), 4);
        assert_eq!(enumerate_reps(&k, &v([2, 2]), f2, &b).unwrap().len(), 256);
        let a = Arc::new(a2_tilde());
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(enumerate_reps(&a, &v([1, 1, 1]), f3, &b).unwrap().len(), 27);
        let tight = Budget::with_max_ops(100);
        assert!(matches!(
            enumerate_reps(&k, &v([2, 2]), f2, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn encode_decode_round_trip() {
        let k = Arc::new(kronecker());
        let f3 = PrimeField::new(3).unwrap();
        let space = RepSpace::new(k, f3, v([2, 1]), &Budget::default()).unwrap();
        for c in 0..space.size() {
            assert_eq!(space.encode(&space.decode(c)).unwrap(), c);
        }
        let x = space.decode(1);
        assert_eq!(x.map(1).get(0, 1), 1);
    }

    #[test]
    fn shape_validation() {
        let k = Arc::new(kronecker());
        let f2 = PrimeField::new(2).unwrap();
        let bad = FFRep::new(
            k.clone(),
            f2,
            v([1, 1]),
            vec![FpMatrix::zeros(1, 1), FpMatrix::zeros(2, 1)],
        );
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
        let s0 = FFRep::simple(k.clone(), f2, 0).unwrap();
        let s1 = FFRep::simple(k.clone(), f2, 1).unwrap();
        assert_eq!(s0.direct_sum(&s1).unwrap(), FFRep::zero(k.clone(), f2, v([1, 1])).unwrap());
        let s0_3 = FFRep::simple(k, PrimeField::new(3).unwrap(), 0).unwrap();
        assert!(matches!(s0.direct_sum(&s0_3), Err(Error::FieldMismatch)));
    }
}
