//! Affine root system: reflections, the Coxeter transformation, defect and
//! the regular/irregular split, Coxeter orbits and the tube skeleton.

use crate::affine::{classify_affine, AffineData};
use crate::error::{Budget, Error, Result};
use crate::lattice::{IntMatrix, LatticeVector};
use crate::linalg::integer_inverse;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub vector: LatticeVector,
    pub is_real: bool,
    pub is_imaginary: bool,
    pub is_regular: bool,
    /// Largest `m >= 0` with `vector - m*delta` a positive root or zero (0 for negative roots).
    pub level: i64,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootClass {
    Root(Root),
    NonRoot,
}

impl RootClass {
    pub fn root(&self) -> Option<&Root> {
        match self {
            RootClass::Root(r) => Some(r),
            RootClass::NonRoot => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterData {
    pub matrix: IntMatrix,
    pub euler_matrix: IntMatrix,
    pub inverse_euler: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoxeterOrbit {
    Periodic {
        orbit: Vec<LatticeVector>,
        period: usize,
    },
    Infinite,
    /// Defect zero but the orbit did not close within the step limit.
    Unresolved { steps: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeSkeleton {
    /// Periods of the non-homogeneous tubes, ascending.
    pub periods: Vec<usize>,
    /// The regular-simple orbits, one per tube, each starting at its smallest element.
    pub orbits: Vec<Vec<LatticeVector>>,
}

/// `s_i(beta) = beta - (beta, alpha_i) alpha_i`.
pub fn simple_reflection(q: &Quiver, i: usize, beta: &LatticeVector) -> Result<LatticeVector> {
    q.check(beta)?;
    let ai = q.simple_root(i);
    let c = q.symmetrized_form(beta, &ai)?;
    Ok(beta - &(c * &ai))
}

/// Matrix of `s_i` acting on column vectors.
pub fn reflection_matrix(q: &Quiver, i: usize) -> IntMatrix {
    let n = q.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    for j in 0..n {
        let image = simple_reflection(q, i, &q.simple_root(j)).expect("indices match");
        for k in 0..n {
            m[(k, j)] = image[k];
        }
    }
    m
}

/// `c = -E^{-1} E^T`, the unique map with `e(a, b) = -e(b, c a)`.
pub fn coxeter_matrix(q: &Quiver) -> Result<CoxeterData> {
    q.topological_order()?;
    let e = q.euler_matrix();
    let inv = integer_inverse(&e)
        .ok_or_else(|| Error::Assertion("Euler matrix of an acyclic quiver is not unimodular".into()))?;
    let matrix = inv.mul(&e.transpose()).neg();
    Ok(CoxeterData {
        matrix,
        euler_matrix: e,
        inverse_euler: inv,
    })
}

/// Root-lattice data of an affine quiver, computed once.
#[derive(Debug, Clone)]
pub struct AffineRootSystem {
    quiver: Quiver,
    affine: AffineData,
    coxeter: Option<CoxeterData>,
}

impl AffineRootSystem {
    pub fn new(q: &Quiver) -> Result<Self> {
        let affine = classify_affine(q)?;
        let coxeter = if affine.has_oriented_cycle {
            None
        } else {
            Some(coxeter_matrix(q)?)
        };
        Ok(AffineRootSystem {
            quiver: q.clone(),
            affine,
            coxeter,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn affine(&self) -> &AffineData {
        &self.affine
    }

    pub fn delta(&self) -> &LatticeVector {
        &self.affine.delta
    }

    pub fn n(&self) -> usize {
        self.affine.n
    }

    pub fn coxeter(&self) -> Result<&CoxeterData> {
        self.coxeter.as_ref().ok_or(Error::OrientedCycle)
    }

    pub fn apply_coxeter(&self, a: &LatticeVector) -> Result<LatticeVector> {
        self.quiver.check(a)?;
        Ok(self.coxeter()?.matrix.apply(a))
    }

    /// `d(a) = e(delta, a)`.
    pub fn defect(&self, a: &LatticeVector) -> Result<i64> {
        self.quiver.euler_form(&self.affine.delta, a)
    }

    /// `Some(m)` when `a = m * delta`.
    pub fn delta_multiple(&self, a: &LatticeVector) -> Option<i64> {
        let d = &self.affine.delta;
        let m = a[0] / d[0];
        (a == &(m * d)).then_some(m)
    }

    pub fn is_root(&self, a: &LatticeVector) -> Result<bool> {
        Ok(!a.is_zero() && self.quiver.tits_form(a)? <= 1)
    }

    pub fn is_positive_real_root(&self, a: &LatticeVector) -> Result<bool> {
        Ok(a.is_positive() && self.quiver.tits_form(a)? == 1)
    }

    pub fn classify_root(&self, a: &LatticeVector) -> Result<RootClass> {
        let q = self.quiver.tits_form(a)?;
        if a.is_zero() || q > 1 {
            return Ok(RootClass::NonRoot);
        }
        if q < 0 {
            return Err(Error::Assertion(format!(
                "Tits form is negative at {a} on an affine quiver"
            )));
        }
        let is_real = q == 1;
        if !is_real && self.delta_multiple(a).is_none() {
            return Err(Error::Assertion(format!("isotropic vector {a} outside Z*delta")));
        }
        let level = if a.is_positive() {
            let mut m = 0;
            loop {
                let rest = a - &((m + 1) * &self.affine.delta);
                if rest.is_nonnegative() {
                    m += 1;
                } else {
                    break m;
                }
            }
        } else {
            0
        };
        Ok(RootClass::Root(Root {
            vector: a.clone(),
            is_real,
            is_imaginary: !is_real,
            is_regular: self.defect(a)? == 0,
            level,
            multiplicity: if is_real { 1 } else { self.affine.n as i64 },
        }))
    }

    /// Dimension of the endomorphism ring of any indecomposable of dimension `a`,
    /// read off the lattice: 1 for irregular real roots, `1 + level` for regular real
    /// roots (a uniserial object of length `kN + r` in a tube of period `N`), `m` at `m*delta`.
    pub fn indecomposable_end_dim(&self, a: &LatticeVector) -> Result<Option<i64>> {
        if !a.is_positive() {
            return Ok(None);
        }
        Ok(match self.classify_root(a)? {
            RootClass::NonRoot => None,
            RootClass::Root(r) if r.is_imaginary => Some(r.level),
            RootClass::Root(r) if r.is_regular => Some(1 + r.level),
            RootClass::Root(_) => Some(1),
        })
    }

    /// All roots `a` with `0 < a <= bound`, in lexicographic order.
    pub fn enumerate_positive_roots(&self, bound: &LatticeVector, budget: &Budget) -> Result<Vec<Root>> {
        self.quiver.check(bound)?;
        budget.check("root box scan", bound.box_volume())?;
        let mut out = Vec::new();
        for a in bound.box_below() {
            if let RootClass::Root(r) = self.classify_root(&a)? {
                out.push(r);
            }
        }
        Ok(out)
    }

    pub fn coxeter_orbit(&self, a: &LatticeVector, max_steps: usize) -> Result<CoxeterOrbit> {
        if self.defect(a)? != 0 {
            return Ok(CoxeterOrbit::Infinite);
        }
        let mut orbit = vec![a.clone()];
        let mut current = self.apply_coxeter(a)?;
        while &current != a {
            if orbit.len() >= max_steps {
                return Ok(CoxeterOrbit::Unresolved { steps: max_steps });
            }
            orbit.push(current.clone());
            current = self.apply_coxeter(&current)?;
        }
        let period = orbit.len();
        Ok(CoxeterOrbit::Periodic { orbit, period })
    }

    /// Periods of the non-homogeneous tubes, found as the Coxeter orbits of positive
    /// regular real roots below `delta` whose elements sum to `delta`.
    pub fn tube_skeleton(&self) -> Result<TubeSkeleton> {
        let delta = self.affine.delta.clone();
        let candidates: Vec<LatticeVector> = self
            .enumerate_positive_roots(&delta, &Budget::default())?
            .into_iter()
            .filter(|r| r.is_real && r.is_regular)
            .map(|r| r.vector)
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut periods = Vec::new();
        let mut orbits = Vec::new();
        for a in &candidates {
            if seen.contains(a) {
                continue;
            }
            let orbit = match self.coxeter_orbit(a, candidates.len() + 1)? {
                CoxeterOrbit::Periodic { orbit, .. } => orbit,
                other => {
                    return Err(Error::Assertion(format!(
                        "regular root {a} has no finite orbit: {other:?}"
                    )))
                }
            };
            let mut total = LatticeVector::zeros(delta.len());
            for b in &orbit {
                if !candidates.contains(b) {
                    return Err(Error::Assertion(format!(
                        "Coxeter image {b} left the regular roots below delta"
                    )));
                }
                seen.insert(b.clone());
                total += b;
            }
            match self.delta_multiple(&total) {
                Some(1) => {
                    periods.push(orbit.len());
                    orbits.push(orbit);
                }
                Some(m) if m > 1 => {}
                _ => {
                    return Err(Error::Assertion(format!(
                        "orbit of {a} sums to {total}, not a multiple of delta"
                    )))
                }
            }
        }
        let defect_sum: usize = periods.iter().map(|p| p - 1).sum();
        if defect_sum + 1 != self.affine.n {
            // Two tubes sharing regular-simple dimension vectors would merge here.
            return Err(Error::Assertion(format!(
                "tube periods {periods:?} violate sum(N - 1) = n - 1 with n = {}",
                self.affine.n
            )));
        }
        let mut paired: Vec<_> = periods.into_iter().zip(orbits).collect();
        paired.sort();
        let (periods, orbits) = paired.into_iter().unzip();
        Ok(TubeSkeleton { periods, orbits })
    }
}
