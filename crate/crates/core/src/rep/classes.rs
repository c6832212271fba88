use std::sync::Arc;

use crate::error::{Budget, Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::lattice::LatticeVector;
use crate::quiver::Quiver;

use super::{FFRep, RepSpace};

/// `|GL(dim)(F_p)| = prod_i |GL_{dim_i}(F_p)|`, or `None` on overflow.
pub fn gl_order(field: &PrimeField, dim: &LatticeVector) -> Option<u128> {
    dim.iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(field.gl_order(d as u32)?))
}

/// Orbits of `GL(dim)` on `Rep(Q, dim)(F_p)`.
#[derive(Debug, Clone)]
pub struct ClassTable {
    space: RepSpace,
    class_of: Vec<u32>,
    reps: Vec<u64>,
    sizes: Vec<u64>,
}

impl ClassTable {
    pub fn space(&self) -> &RepSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Canonical representative: the point with the smallest code in the orbit.
    pub fn representative(&self, class: usize) -> FFRep {
        self.space.decode(self.reps[class])
    }

    pub fn representative_code(&self, class: usize) -> u64 {
        self.reps[class]
    }

    pub fn orbit_size(&self, class: usize) -> u64 {
        self.sizes[class]
    }

    pub fn class_of_code(&self, code: u64) -> usize {
        self.class_of[code as usize] as usize
    }

    pub fn class_of(&self, x: &FFRep) -> Result<usize> {
        Ok(self.class_of_code(self.space.encode(x)?))
    }

    pub fn representatives(&self) -> impl Iterator<Item = FFRep> + '_ {
        (0..self.len()).map(|c| self.representative(c))
    }
}

fn generators(field: &PrimeField, d: usize) -> Vec<(FpMatrix, FpMatrix)> {
    let mut gens = Vec::new();
    if d == 0 {
        return gens;
    }
    let g = field.primitive_root();
    if g != 1 {
        let mut m = FpMatrix::identity(d);
        m.set(0, 0, g);
        let mut inv = FpMatrix::identity(d);
        inv.set(0, 0, field.inv(g));
        gens.push((m, inv));
    }
    if d >= 2 {
        let mut swap = FpMatrix::zeros(d, d);
        for i in 0..d {
            let j = match i {
                0 => 1,
                1 => 0,
                _ => i,
            };
            swap.set(i, j, 1);
        }
        gens.push((swap.clone(), swap));
        if d >= 3 {
            let mut cycle = FpMatrix::zeros(d, d);
            for i in 0..d {
                cycle.set((i + 1) % d, i, 1);
            }
            gens.push((cycle.clone(), cycle.transpose()));
        }
        let mut t = FpMatrix::identity(d);
        t.set(0, 1, 1);
        let mut t_inv = FpMatrix::identity(d);
        t_inv.set(0, 1, field.neg(1));
        gens.push((t, t_inv));
    }
    gens
}

/// Enumerates isomorphism classes by breadth-first search over a generating set of `GL(dim)`.
///
/// Points are visited in increasing code order, so the first point of each orbit is its
/// lexicographically minimal encoding. Each orbit size is checked to divide `|GL(dim)|`.
pub fn iso_classes(
    quiver: &Arc<Quiver>,
    dim: &LatticeVector,
    field: PrimeField,
    budget: &Budget,
) -> Result<ClassTable> {
    let space = RepSpace::new(quiver.clone(), field, dim.clone(), budget)?;
    let group = gl_order(&field, dim).ok_or(Error::BudgetExceeded {
        what: "group order",
        needed: u128::MAX,
        limit: budget.max_ops,
    })?;
    budget.check("group order", group)?;

    let n = quiver.vertex_count();
    let identity: Vec<FpMatrix> = (0..n).map(|i| FpMatrix::identity(dim[i] as usize)).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        for (g, g_inv) in generators(&field, dim[i] as usize) {
            let mut gv = identity.clone();
            let mut gi = identity.clone();
            gv[i] = g;
            gi[i] = g_inv;
            gens.push((gv, gi));
        }
    }

    let size = space.size() as usize;
    let mut class_of = vec![u32::MAX; size];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = Vec::new();
    for start in 0..size {
        if class_of[start] != u32::MAX {
            continue;
        }
        let class = reps.len() as u32;
        reps.push(start as u64);
        class_of[start] = class;
        queue.clear();
        queue.push(start as u64);
        let mut head = 0;
        while head < queue.len() {
            let x = space.decode(queue[head]);
            head += 1;
            for (g, g_inv) in &gens {
                let y = space.encode(&x.act(g, g_inv))? as usize;
                if class_of[y] == u32::MAX {
                    class_of[y] = class;
                    queue.push(y as u64);
                }
            }
        }
        let orbit = queue.len() as u64;
        if group % orbit as u128 != 0 {
            return Err(Error::Assertion(format!(
                "orbit of size {orbit} does not divide |GL| = {group}"
            )));
        }
        sizes.push(orbit);
    }
    Ok(ClassTable {
        space,
        class_of,
        reps,
        sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::samples::*;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVector {
        LatticeVector::from(x)
    }

    #[test]
    fn kronecker_delta_classes() {
        let k = Arc::new(kronecker());
        let b = Budget::default();
        let t2 = iso_classes(&k, &v([1, 1]), PrimeField::new(2).unwrap(), &b).unwrap();
        assert_eq!(t2.len(), 4);
        let t3 = iso_classes(&k, &v([1, 1]), PrimeField::new(3).unwrap(), &b).unwrap();
        assert_eq!(t3.len(), 5);
        assert_eq!(t3.representative_code(0), 0);
        assert_eq!((0..t3.len()).map(|c| t3.orbit_size(c)).sum::<u64>(), 9);
        let s = iso_classes(&k, &v([1, 0]), PrimeField::new(3).unwrap(), &b).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn gl_generators_reach_whole_group() {
        // (3,1) on the Kronecker quiver: the stacked 2x3 matrix has rank 0 or 2 (one class
        // each) or rank 1, where the ratio of the two rows ranges over P^1(F_p)
        let k = Arc::new(kronecker());
        for p in [2, 3] {
            let t = iso_classes(&k, &v([3, 1]), PrimeField::new(p).unwrap(), &Budget::default()).unwrap();
            assert_eq!(t.len() as u64, p + 3);
        }
        let t = iso_classes(&k, &v([2, 2]), PrimeField::new(2).unwrap(), &Budget::default()).unwrap();
        assert_eq!((0..t.len()).map(|c| t.orbit_size(c)).sum::<u64>(), 256);
    }

    #[test]
    fn representatives_are_minimal() {
        let a = Arc::new(a2_tilde());
        let f = PrimeField::new(3).unwrap();
        let t = iso_classes(&a, &v([1, 1, 1]), f, &Budget::default()).unwrap();
        for c in 0..t.len() {
            let rep = t.representative_code(c);
            for code in 0..t.space().size() {
                if t.class_of_code(code) == c {
                    assert!(code >= rep);
                }
            }
        }
    }
}
