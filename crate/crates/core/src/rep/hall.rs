use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Budget, Error, Result};
use crate::field::PrimeField;
use crate::lattice::LatticeVector;
use crate::poly::{interpolate, IntPoly};
use crate::quiver::Quiver;

use super::classes::{iso_classes, ClassTable};
use super::hom::hom_dim;
use super::subrep::enumerate_subreps;
use super::{FFRep, IntRep};

/// An integer-valued function on the isomorphism classes of one dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub dim: LatticeVector,
    pub values: Vec<i128>,
}

impl ClassFunction {
    pub fn add_scaled(&mut self, other: &ClassFunction, coeff: i128) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch(format!(
                "class functions on {} and {}",
                self.dim, other.dim
            )));
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += coeff * b;
        }
        Ok(())
    }
}

/// Hom dimensions that separate the classes the commutator checks need to compare across primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub end_dim: usize,
    pub hom_from_simples: Vec<usize>,
    pub hom_to_simples: Vec<usize>,
}

/// Class tables for one quiver and field, built on demand and shared.
pub struct HallContext {
    quiver: Arc<Quiver>,
    field: PrimeField,
    budget: Budget,
    tables: Mutex<HashMap<LatticeVector, Arc<ClassTable>>>,
}

impl HallContext {
    pub fn new(quiver: Arc<Quiver>, field: PrimeField, budget: Budget) -> Self {
        HallContext {
            quiver,
            field,
            budget,
            tables: Mutex::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn table(&self, dim: &LatticeVector) -> Result<Arc<ClassTable>> {
        let mut tables = self.tables.lock().expect("class table lock");
        if let Some(t) = tables.get(dim) {
            return Ok(t.clone());
        }
        let t = Arc::new(iso_classes(&self.quiver, dim, self.field, &self.budget)?);
        tables.insert(dim.clone(), t.clone());
        Ok(t)
    }

    pub fn class_of(&self, x: &FFRep) -> Result<usize> {
        self.table(x.dim())?.class_of(x)
    }

    pub fn isomorphic(&self, x: &FFRep, y: &FFRep) -> Result<bool> {
        x.same_setting(y)?;
        Ok(x.dim() == y.dim() && self.class_of(x)? == self.class_of(y)?)
    }

    /// `#{W <= Z : W ~ X, Z/W ~ Y}`.
    pub fn hall_number(&self, x: &FFRep, y: &FFRep, z: &FFRep) -> Result<u64> {
        x.same_setting(z)?;
        y.same_setting(z)?;
        if &(x.dim() + y.dim()) != z.dim() {
            return Ok(0);
        }
        let (cx, cy) = (self.class_of(x)?, self.class_of(y)?);
        let (tx, ty) = (self.table(x.dim())?, self.table(y.dim())?);
        let mut count = 0;
        for w in enumerate_subreps(z, x.dim(), &self.budget)? {
            if tx.class_of(&w.sub_rep(z))? == cx && ty.class_of(&w.quotient_rep(z))? == cy {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn indicator(&self, x: &FFRep) -> Result<ClassFunction> {
        let t = self.table(x.dim())?;
        let mut values = vec![0; t.len()];
        values[t.class_of(x)?] = 1;
        Ok(ClassFunction {
            dim: x.dim().clone(),
            values,
        })
    }

    pub fn zero_function(&self, dim: &LatticeVector) -> Result<ClassFunction> {
        Ok(ClassFunction {
            dim: dim.clone(),
            values: vec![0; self.table(dim)?.len()],
        })
    }

    /// `(f * g)(Z) = sum over subreps W of Z of f([W]) g([Z/W])`; the left factor is the sub.
    pub fn product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction> {
        let dim = &f.dim + &g.dim;
        let (tf, tg, tz) = (self.table(&f.dim)?, self.table(&g.dim)?, self.table(&dim)?);
        let values = (0..tz.len())
            .into_par_iter()
            .map(|c| {
                let z = tz.representative(c);
                let mut acc = 0i128;
                for w in enumerate_subreps(&z, &f.dim, &self.budget)? {
                    let a = f.values[tf.class_of(&w.sub_rep(&z))?];
                    if a == 0 {
                        continue;
                    }
                    acc += a * g.values[tg.class_of(&w.quotient_rep(&z))?];
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { dim, values })
    }

    pub fn fingerprint(&self, x: &FFRep) -> Result<Fingerprint> {
        let n = self.quiver.vertex_count();
        let simples = (0..n)
            .map(|i| FFRep::simple(self.quiver.clone(), self.field, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Fingerprint {
            end_dim: hom_dim(x, x)?,
            hom_from_simples: simples.iter().map(|s| hom_dim(s, x)).collect::<Result<_>>()?,
            hom_to_simples: simples.iter().map(|s| hom_dim(x, s)).collect::<Result<_>>()?,
        })
    }
}

/// Hall number `g^Z_{X,Y}` with a fresh context.
pub fn hall_number(x: &FFRep, y: &FFRep, z: &FFRep, budget: &Budget) -> Result<u64> {
    HallContext::new(z.quiver().clone(), z.field(), *budget).hall_number(x, y, z)
}

/// Point counts of a Hall variety across primes and their value at `q = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallCount {
    pub counts: Vec<(u64, i128)>,
    pub polynomial: IntPoly,
    pub euler_characteristic: i64,
}

fn fields(primes: &[u64]) -> Result<Vec<PrimeField>> {
    primes.iter().map(|&p| PrimeField::new(p)).collect()
}

/// `chi(G^Z_{X,Y})` from counts over the given primes, degree bound `sum_i b_i (z_i - b_i)`.
pub fn hall_euler_characteristic(
    x: &IntRep,
    y: &IntRep,
    z: &IntRep,
    primes: &[u64],
    budget: &Budget,
) -> Result<HallCount> {
    let beta = x.dim();
    let bound: i64 = beta
        .iter()
        .zip(z.dim().iter())
        .map(|(&b, &d)| (b * (d - b)).max(0))
        .sum();
    let bound = bound as usize;
    if primes.len() < bound + 1 {
        return Err(Error::InsufficientPrimes {
            needed: bound + 1,
            got: primes.len(),
        });
    }
    let counts = fields(primes)?
        .par_iter()
        .map(|&f| {
            let n = hall_number(&x.reduce(f), &y.reduce(f), &z.reduce(f), budget)?;
            Ok((f.p(), n as i128))
        })
        .collect::<Result<Vec<_>>>()?;
    let polynomial = interpolate(&counts, bound)?;
    let euler_characteristic = polynomial.eval(1) as i64;
    Ok(HallCount {
        counts,
        polynomial,
        euler_characteristic,
    })
}

/// One family of classes (equal fingerprints) in a commutator computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiEntry {
    pub fingerprint: Fingerprint,
    /// Number of classes in the family at each prime.
    pub class_counts: Vec<(u64, usize)>,
    /// First class of the family at each prime.
    pub representatives: Vec<FFRep>,
    /// Common value of the combination on the family at each prime.
    pub counts: Vec<(u64, i128)>,
    pub polynomial: IntPoly,
    pub chi: i64,
}

/// Evaluates `sum_k c_k [X_k1] * [X_k2] * ...` (products left to right) at each prime,
/// groups target classes by fingerprint, checks the value is constant on each group,
/// and interpolates each group's value to `q = 1`.
pub fn commutator_chi(
    quiver: &Arc<Quiver>,
    terms: &[(i64, Vec<IntRep>)],
    primes: &[u64],
    degree_bound: usize,
    budget: &Budget,
) -> Result<Vec<ChiEntry>> {
    if primes.len() < degree_bound + 1 {
        return Err(Error::InsufficientPrimes {
            needed: degree_bound + 1,
            got: primes.len(),
        });
    }
    let target = terms
        .first()
        .map(|(_, fs)| fs.iter().fold(LatticeVector::zeros(quiver.vertex_count()), |a, x| &a + x.dim()))
        .ok_or_else(|| Error::ShapeMismatch("empty combination".into()))?;

    type PerPrime = BTreeMap<Fingerprint, (i128, usize, FFRep)>;
    let per_prime = fields(primes)?
        .into_iter()
        .map(|f| -> Result<PerPrime> {
            let ctx = HallContext::new(quiver.clone(), f, *budget);
            let mut total = ctx.zero_function(&target)?;
            for (coeff, factors) in terms {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| Error::ShapeMismatch("empty product".into()))?;
                let mut acc = ctx.indicator(&first.reduce(f))?;
                for x in it {
                    acc = ctx.product(&acc, &ctx.indicator(&x.reduce(f))?)?;
                }
                total.add_scaled(&acc, *coeff as i128)?;
            }
            let table = ctx.table(&target)?;
            let mut groups: PerPrime = BTreeMap::new();
            for c in 0..table.len() {
                let z = table.representative(c);
                let fp = ctx.fingerprint(&z)?;
                let value = total.values[c];
                match groups.get_mut(&fp) {
                    Some((v, n, _)) => {
                        if *v != value {
                            return Err(Error::Assertion(format!(
                                "values {v} and {value} within one fingerprint class over {f}"
                            )));
                        }
                        *n += 1;
                    }
                    None => {
                        groups.insert(fp, (value, 1, z));
                    }
                }
            }
            Ok(groups)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::new();
    for fp in per_prime[0].keys() {
        let mut class_counts = Vec::new();
        let mut representatives = Vec::new();
        let mut counts = Vec::new();
        for (&p, groups) in primes.iter().zip(&per_prime) {
            let (v, n, z) = groups.get(fp).ok_or_else(|| {
                Error::Assertion(format!("class family {fp:?} has no member over F_{p}"))
            })?;
            class_counts.push((p, *n));
            representatives.push(z.clone());
            counts.push((p, *v));
        }
        let polynomial = interpolate(&counts, degree_bound)?;
        out.push(ChiEntry {
            fingerprint: fp.clone(),
            class_counts,
            representatives,
            chi: polynomial.eval(1) as i64,
            counts,
            polynomial,
        });
    }
    for (p, groups) in primes.iter().zip(&per_prime) {
        if groups.len() != out.len() {
            return Err(Error::Assertion(format!(
                "class families over F_{p} differ from those over F_{}",
                primes[0]
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;
    use crate::quiver::samples::*;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVector {
        LatticeVector::from(x)
    }

    #[test]
    fn kronecker_hall_numbers() {
        let k = Arc::new(kronecker());
        let f = PrimeField::new(3).unwrap();
        let b = Budget::default();
        let s0 = FFRep::simple(k.clone(), f, 0).unwrap();
        let s1 = FFRep::simple(k.clone(), f, 1).unwrap();
        let zero = FFRep::zero(k.clone(), f, v([1, 1])).unwrap();
        let brick = FFRep::from_ints(k.clone(), f, v([1, 1]), &[vec![vec![1]], vec![vec![2]]]).unwrap();
        assert_eq!(hall_number(&s0, &s1, &zero, &b).unwrap(), 1);
        assert_eq!(hall_number(&s0, &s1, &brick, &b).unwrap(), 0);
        assert_eq!(hall_number(&s1, &s0, &brick, &b).unwrap(), 1);
        assert_eq!(hall_number(&s1, &s0, &zero, &b).unwrap(), 1);
    }

    #[test]
    fn euler_characteristics() {
        let k = Arc::new(kronecker());
        let b = Budget::default();
        let s0 = IntRep::simple(k.clone(), 0).unwrap();
        let s1 = IntRep::simple(k.clone(), 1).unwrap();
        let s00 = IntRep::zero(k.clone(), v([2, 0])).unwrap();
        let h = hall_euler_characteristic(&s0, &s0, &s00, &[2, 3], &b).unwrap();
        assert_eq!(h.counts, vec![(2, 3), (3, 4)]);
        assert_eq!(h.euler_characteristic, 2);
        let z = IntRep::new(
            k.clone(),
            v([1, 1]),
            vec![IntMatrix::from_rows(&[vec![1]]), IntMatrix::from_rows(&[vec![0]])],
        )
        .unwrap();
        let h = hall_euler_characteristic(&s1, &s0, &z, &[2], &b).unwrap();
        assert_eq!(h.euler_characteristic, 1);
        let h = hall_euler_characteristic(&s0, &s1, &z, &[2], &b).unwrap();
        assert_eq!(h.euler_characteristic, 0);
        assert!(matches!(
            hall_euler_characteristic(&s0, &s0, &s00, &[2], &b),
            Err(Error::InsufficientPrimes { .. })
        ));
    }
}
