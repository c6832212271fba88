//! Representations of the doubled quiver: moment map, preprojective relations,
//! nilpotency and the lifts of a representation of `Q` along `rho`.

use std::sync::Arc;

use crate::error::{Budget, Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::lattice::LatticeVector;
use crate::quiver::Quiver;
use crate::rep::FFRep;

/// A representation of the double of `base`; arrow `k + m` is the star of arrow `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleRep {
    base: Arc<Quiver>,
    rep: FFRep,
}

/// One square matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentValue {
    pub blocks: Vec<FpMatrix>,
}

impl MomentValue {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(FpMatrix::is_zero)
    }
}

impl DoubleRep {
    /// From forward matrices `x` (as an `FFRep`) and starred matrices `y`, one `dim s x dim t` per arrow.
    pub fn new(x: &FFRep, y: Vec<FpMatrix>) -> Result<Self> {
        let base = x.quiver().clone();
        let doubled = Arc::new(base.double().quiver);
        let mut maps = x.maps().to_vec();
        maps.extend(y);
        let rep = FFRep::new(doubled, x.field(), x.dim().clone(), maps)?;
        Ok(DoubleRep { base, rep })
    }

    /// `x` with every starred arrow acting as zero.
    pub fn zero_lift(x: &FFRep) -> Result<Self> {
        let y = x
            .quiver()
            .arrows()
            .iter()
            .map(|a| FpMatrix::zeros(x.dim_at(a.source), x.dim_at(a.target)))
            .collect();
        DoubleRep::new(x, y)
    }

    pub fn from_ints(
        base: Arc<Quiver>,
        field: PrimeField,
        dim: LatticeVector,
        forward: &[Vec<Vec<i64>>],
        starred: &[Vec<Vec<i64>>],
    ) -> Result<Self> {
        let x = FFRep::from_ints(base.clone(), field, dim.clone(), forward)?;
        let y = base
            .arrows()
            .iter()
            .zip(starred)
            .map(|(a, rows)| {
                if rows.is_empty() {
                    FpMatrix::zeros(dim[a.source] as usize, dim[a.target] as usize)
                } else {
                    FpMatrix::from_rows(&field, rows)
                }
            })
            .collect();
        DoubleRep::new(&x, y)
    }

    pub fn base(&self) -> &Arc<Quiver> {
        &self.base
    }

    /// The underlying representation of the doubled quiver.
    pub fn as_rep(&self) -> &FFRep {
        &self.rep
    }

    pub fn field(&self) -> PrimeField {
        self.rep.field()
    }

    pub fn dim(&self) -> &LatticeVector {
        self.rep.dim()
    }

    fn arrow_count(&self) -> usize {
        self.base.arrows().len()
    }

    pub fn forward(&self, k: usize) -> &FpMatrix {
        self.rep.map(k)
    }

    pub fn starred(&self, k: usize) -> &FpMatrix {
        self.rep.map(k + self.arrow_count())
    }

    /// `g . x` on both forward and starred arrows.
    pub fn act(&self, g: &[FpMatrix], g_inv: &[FpMatrix]) -> DoubleRep {
        DoubleRep {
            base: self.base.clone(),
            rep: self.rep.act(g, g_inv),
        }
    }
}

fn moment_blocks(base: &Quiver, f: &PrimeField, dim: &LatticeVector, x: &[FpMatrix], y: &[FpMatrix]) -> Vec<FpMatrix> {
    let mut blocks: Vec<FpMatrix> = (0..base.vertex_count())
        .map(|i| FpMatrix::zeros(dim[i] as usize, dim[i] as usize))
        .collect();
    for (k, a) in base.arrows().iter().enumerate() {
        // path a then a* at the source, a* then a at the target
        blocks[a.source] = blocks[a.source].add(f, &y[k].mul(f, &x[k]));
        blocks[a.target] = blocks[a.target].sub(f, &x[k].mul(f, &y[k]));
    }
    blocks
}

/// `mu_i = sum_{s(a)=i} x_{a*} x_a - sum_{t(a)=i} x_a x_{a*}` (matrix products); the
/// total trace is checked to vanish.
pub fn moment_map(x: &DoubleRep) -> Result<MomentValue> {
    let f = x.field();
    let m = x.arrow_count();
    let maps = x.rep.maps();
    let blocks = moment_blocks(&x.base, &f, x.dim(), &maps[..m], &maps[m..]);
    let trace = blocks.iter().fold(0, |acc, b| f.add(acc, b.trace(&f)));
    if trace != 0 {
        return Err(Error::Assertion(format!("moment map has total trace {trace}")));
    }
    Ok(MomentValue { blocks })
}

/// `mu_i(x) = lambda_i * identity` at every vertex, with `lambda` read in the prime field.
pub fn is_pi_rep(x: &DoubleRep, lambda: &LatticeVector) -> Result<bool> {
    x.base.check(lambda)?;
    let f = x.field();
    let mu = moment_map(x)?;
    Ok(mu.blocks.iter().enumerate().all(|(i, b)| {
        *b == FpMatrix::identity(b.rows()).scale(&f, f.from_i64(lambda[i]))
    }))
}

fn span_rows(f: &PrimeField, rows: Vec<Vec<u64>>, n: usize) -> FpMatrix {
    let data: Vec<u64> = rows.iter().flatten().copied().collect();
    let (r, piv) = FpMatrix::from_vec(rows.len(), n, data).rref(f);
    let k = piv.len();
    FpMatrix::from_vec(k, n, r.data()[..k * n].to_vec())
}

/// The chain `W_0 = V`, `W_{k+1} = sum_a x_a(W_k)` over all arrows reaches zero.
pub fn is_nilpotent(x: &DoubleRep) -> bool {
    let rep = &x.rep;
    let f = rep.field();
    let q = rep.quiver();
    let n = q.vertex_count();
    let mut w: Vec<FpMatrix> = (0..n).map(|i| FpMatrix::identity(rep.dim_at(i))).collect();
    let steps = rep.dim().sum() as usize + 1;
    for _ in 0..steps {
        if w.iter().all(|b| b.rows() == 0) {
            return true;
        }
        let mut images: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n];
        for (k, a) in q.arrows().iter().enumerate() {
            for r in 0..w[a.source].rows() {
                images[a.target].push(rep.map(k).apply(&f, w[a.source].row(r)));
            }
        }
        let next: Vec<FpMatrix> = images
            .into_iter()
            .enumerate()
            .map(|(i, rows)| span_rows(&f, rows, rep.dim_at(i)))
            .collect();
        if next == w {
            return false;
        }
        w = next;
    }
    w.iter().all(|b| b.rows() == 0)
}

/// Forgets the starred arrows.
pub fn rho(x: &DoubleRep) -> FFRep {
    let m = x.arrow_count();
    FFRep::new(x.base.clone(), x.field(), x.dim().clone(), x.rep.maps()[..m].to_vec())
        .expect("forward part has the base shapes")
}

/// Basis of `{y : mu(X, y) = 0}`, each element one starred matrix per arrow.
pub fn lift_space(x: &FFRep) -> Result<Vec<Vec<FpMatrix>>> {
    let q = x.quiver();
    if !q.is_acyclic() {
        return Err(Error::OrientedCycle);
    }
    let f = x.field();
    let shapes: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .map(|a| (x.dim_at(a.source), x.dim_at(a.target)))
        .collect();
    let unknowns: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let equations: usize = (0..q.vertex_count()).map(|i| x.dim_at(i).pow(2)).sum();
    let unpack = |v: &[u64]| -> Vec<FpMatrix> {
        let mut off = 0;
        shapes
            .iter()
            .map(|&(r, c)| {
                let m = FpMatrix::from_vec(r, c, v[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect()
    };
    // mu(X, -) is linear; its matrix column by column on unit vectors
    let mut sys = FpMatrix::zeros(equations, unknowns);
    for j in 0..unknowns {
        let mut e = vec![0; unknowns];
        e[j] = 1;
        let blocks = moment_blocks(q, &f, x.dim(), x.maps(), &unpack(&e));
        for (i, v) in blocks.iter().flat_map(|b| b.data().iter().copied()).enumerate() {
            sys.set(i, j, v);
        }
    }
    Ok(sys.nullspace(&f).iter().map(|v| unpack(v)).collect())
}

/// Lifts `y` of `X` with `mu = 0` that are nilpotent, by exhaustive scan of the lift space.
pub fn nilpotent_lifts(x: &FFRep, budget: &Budget) -> Result<Vec<DoubleRep>> {
    let basis = lift_space(x)?;
    let f = x.field();
    let total = (f.p() as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    budget.check("lift space points", total)?;
    let mut out = Vec::new();
    let mut digits = vec![0u64; basis.len()];
    let zero = DoubleRep::zero_lift(x)?;
    let m = x.quiver().arrows().len();
    let mut y: Vec<FpMatrix> = (0..m).map(|k| zero.starred(k).clone()).collect();
    for _ in 0..total {
        let lift = DoubleRep::new(x, y.clone())?;
        if is_nilpotent(&lift) {
            out.push(lift);
        }
        let mut k = 0;
        while k < digits.len() {
            for (yk, b) in y.iter_mut().zip(&basis[k]) {
                *yk = yk.add(&f, b);
            }
            digits[k] += 1;
            if digits[k] < f.p() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::samples::*;
    use crate::rep::{enumerate_subreps, hom_dim};

    fn v<const N: usize>(x: [i64; N]) -> LatticeVector {
        LatticeVector::from(x)
    }

    fn k_delta(p: u64, fwd: [i64; 2], st: [i64; 2]) -> DoubleRep {
        let f = PrimeField::new(p).unwrap();
        DoubleRep::from_ints(
            Arc::new(kronecker()),
            f,
            v([1, 1]),
            &[vec![vec![fwd[0]]], vec![vec![fwd[1]]]],
            &[vec![vec![st[0]]], vec![vec![st[1]]]],
        )
        .unwrap()
    }

    #[test]
    fn moment_examples() {
        let x = k_delta(5, [1, 1], [1, -1]);
        assert!(moment_map(&x).unwrap().is_zero());
        assert!(is_pi_rep(&x, &v([0, 0])).unwrap());
        let y = k_delta(5, [1, 0], [1, 0]);
        assert!(is_pi_rep(&y, &v([1, -1])).unwrap());
        assert!(!is_pi_rep(&y, &v([1, 0])).unwrap());
        assert!(moment_map(&k_delta(3, [0, 0], [0, 0])).unwrap().is_zero());
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&k_delta(3, [1, 0], [0, 0])));
        assert!(!is_nilpotent(&k_delta(3, [1, 0], [0, 1])));
        assert!(is_nilpotent(&k_delta(3, [0, 0], [0, 0])));
    }

    #[test]
    fn lifts_on_kronecker() {
        let k = Arc::new(kronecker());
        let b = Budget::default();
        for p in [2, 3] {
            let f = PrimeField::new(p).unwrap();
            let brick = FFRep::from_ints(k.clone(), f, v([1, 1]), &[vec![vec![1]], vec![vec![0]]]).unwrap();
            assert_eq!(lift_space(&brick).unwrap().len(), 1);
            assert_eq!(nilpotent_lifts(&brick, &b).unwrap().len(), 1);
            let zero = FFRep::zero(k.clone(), f, v([1, 1])).unwrap();
            assert_eq!(lift_space(&zero).unwrap().len(), 2);
            assert_eq!(nilpotent_lifts(&zero, &b).unwrap().len() as u64, p * p);
            let s0 = FFRep::simple(k.clone(), f, 0).unwrap();
            assert_eq!(lift_space(&s0).unwrap().len(), 0);
            assert_eq!(nilpotent_lifts(&s0, &b).unwrap().len(), 1);
            assert_eq!(hom_dim(&brick, &brick).unwrap(), 1);
        }
    }

    #[test]
    fn rho_forgets_stars() {
        let k = Arc::new(kronecker());
        let f = PrimeField::new(3).unwrap();
        let x = FFRep::from_ints(k, f, v([1, 1]), &[vec![vec![1]], vec![vec![2]]]).unwrap();
        let lift = DoubleRep::zero_lift(&x).unwrap();
        assert_eq!(rho(&lift), x);
        // subreps of a rho-fixed rep have vanishing starred maps as well
        for beta in v([1, 1]).box_below() {
            for w in enumerate_subreps(lift.as_rep(), &beta, &Budget::default()).unwrap() {
                let sub = w.sub_rep(lift.as_rep());
                assert!(sub.maps()[2..].iter().all(FpMatrix::is_zero));
                let quo = w.quotient_rep(lift.as_rep());
                assert!(quo.maps()[2..].iter().all(FpMatrix::is_zero));
            }
        }
    }
}
