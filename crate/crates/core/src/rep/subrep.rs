use crate::error::{Budget, Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::lattice::LatticeVector;

use super::FFRep;

/// A subrepresentation, stored as one RREF basis (rows) per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subrep {
    pub dim: LatticeVector,
    pub spaces: Vec<FpMatrix>,
    pub pivots: Vec<Vec<usize>>,
}

/// Number of `k`-dimensional subspaces of `F_p^n`, or `None` on overflow.
fn gaussian_binomial(p: u64, n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow((n - i) as u32)? - 1)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)? - 1)?;
    }
    Some(num / den)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k`-dimensional subspaces of `F_p^n` as RREF row bases with their pivot columns.
pub fn subspaces(field: &PrimeField, n: usize, k: usize) -> Vec<(FpMatrix, Vec<usize>)> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for pivots in combinations(n, k) {
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut values = vec![0u64; free.len()];
        loop {
            let mut m = FpMatrix::zeros(k, n);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&values) {
                m.set(r, c, v);
            }
            out.push((m, pivots.clone()));
            let mut i = 0;
            while i < values.len() {
                values[i] += 1;
                if values[i] < field.p() {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
            if i == values.len() {
                break;
            }
        }
    }
    out
}

/// Reduces `v` against an RREF basis in place; afterwards `v` is zero iff it lay in the span.
fn reduce(field: &PrimeField, v: &mut [u64], basis: &FpMatrix, pivots: &[usize]) {
    for (r, &pc) in pivots.iter().enumerate() {
        let c = v[pc];
        if c == 0 {
            continue;
        }
        for (j, x) in v.iter_mut().enumerate() {
            *x = field.sub(*x, field.mul(c, basis.get(r, j)));
        }
    }
}

fn column(m: &FpMatrix, c: usize) -> Vec<u64> {
    (0..m.rows()).map(|r| m.get(r, c)).collect()
}

/// All subrepresentations of `z` of dimension `beta`.
pub fn enumerate_subreps(z: &FFRep, beta: &LatticeVector, budget: &Budget) -> Result<Vec<Subrep>> {
    let q = z.quiver().clone();
    let n = q.vertex_count();
    if beta.len() != n {
        return Err(Error::IndexMismatch {
            expected: n,
            got: beta.len(),
        });
    }
    if !beta.is_nonnegative() || !beta.le(z.dim()) {
        return Ok(Vec::new());
    }
    let f = z.field();
    let mut total: u128 = 1;
    for i in 0..n {
        let g = gaussian_binomial(f.p(), z.dim_at(i), beta[i] as usize).unwrap_or(u128::MAX);
        total = total.saturating_mul(g);
    }
    budget.check("subspace tuples", total)?;

    let choices: Vec<Vec<(FpMatrix, Vec<usize>)>> = (0..n)
        .map(|i| subspaces(&f, z.dim_at(i), beta[i] as usize))
        .collect();
    // arrows to check once the later endpoint is fixed
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in q.arrows().iter().enumerate() {
        checks[a.source.max(a.target)].push(k);
    }

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn closed(
        z: &FFRep,
        choices: &[Vec<(FpMatrix, Vec<usize>)>],
        chosen: &[usize],
        arrow: usize,
    ) -> bool {
        let f = z.field();
        let a = &z.quiver().arrows()[arrow];
        let (ws, _) = &choices[a.source][chosen[a.source]];
        let (wt, pt) = &choices[a.target][chosen[a.target]];
        let xa = z.map(arrow);
        (0..ws.rows()).all(|r| {
            let mut img = xa.apply(&f, ws.row(r));
            reduce(&f, &mut img, wt, pt);
            img.iter().all(|&x| x == 0)
        })
    }
    fn rec(
        i: usize,
        z: &FFRep,
        beta: &LatticeVector,
        choices: &[Vec<(FpMatrix, Vec<usize>)>],
        checks: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Subrep>,
    ) {
        if i == choices.len() {
            out.push(Subrep {
                dim: beta.clone(),
                spaces: chosen.iter().enumerate().map(|(v, &c)| choices[v][c].0.clone()).collect(),
                pivots: chosen.iter().enumerate().map(|(v, &c)| choices[v][c].1.clone()).collect(),
            });
            return;
        }
        for c in 0..choices[i].len() {
            chosen.push(c);
            if checks[i].iter().all(|&k| closed(z, choices, chosen, k)) {
                rec(i + 1, z, beta, choices, checks, chosen, out);
            }
            chosen.pop();
        }
    }
    rec(0, z, beta, &choices, &checks, &mut chosen, &mut out);
    Ok(out)
}

impl Subrep {
    /// The subrepresentation in the coordinates of its RREF bases.
    pub fn sub_rep(&self, z: &FFRep) -> FFRep {
        let f = z.field();
        let maps = z
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (ws, wt, pt) = (&self.spaces[a.source], &self.spaces[a.target], &self.pivots[a.target]);
                let mut m = FpMatrix::zeros(wt.rows(), ws.rows());
                for c in 0..ws.rows() {
                    let img = z.map(k).apply(&f, ws.row(c));
                    for (r, &pc) in pt.iter().enumerate() {
                        m.set(r, c, img[pc]);
                    }
                }
                m
            })
            .collect();
        FFRep::new(z.quiver().clone(), f, self.dim.clone(), maps).expect("induced shapes")
    }

    /// The quotient `Z / W`, with basis the images of the non-pivot coordinate vectors.
    pub fn quotient_rep(&self, z: &FFRep) -> FFRep {
        let f = z.field();
        let n = z.quiver().vertex_count();
        let complement: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..z.dim_at(i)).filter(|c| !self.pivots[i].contains(c)).collect())
            .collect();
        let maps = z
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (cs, ct) = (&complement[a.source], &complement[a.target]);
                let mut m = FpMatrix::zeros(ct.len(), cs.len());
                for (j, &c) in cs.iter().enumerate() {
                    let mut img = column(z.map(k), c);
                    reduce(&f, &mut img, &self.spaces[a.target], &self.pivots[a.target]);
                    for (r, &cc) in ct.iter().enumerate() {
                        m.set(r, j, img[cc]);
                    }
                }
                m
            })
            .collect();
        FFRep::new(z.quiver().clone(), f, z.dim() - &self.dim, maps).expect("quotient shapes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::samples::*;
    use std::sync::Arc;

    fn v<const N: usize>(x: [i64; N]) -> LatticeVector {
        LatticeVector::from(x)
    }

    #[test]
    fn subspace_counts() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(subspaces(&f, 2, 1).len(), 4);
        assert_eq!(subspaces(&f, 3, 1).len(), 13);
        assert_eq!(subspaces(&f, 3, 2).len(), 13);
        assert_eq!(subspaces(&f, 2, 0).len(), 1);
        assert_eq!(gaussian_binomial(3, 4, 2), Some(130));
        assert_eq!(subspaces(&f, 4, 2).len(), 130);
    }

    #[test]
    fn kronecker_subreps() {
        let k = Arc::new(kronecker());
        let f = PrimeField::new(2).unwrap();
        let b = Budget::default();
        let zero = FFRep::zero(k.clone(), f, v([1, 1])).unwrap();
        assert_eq!(enumerate_subreps(&zero, &v([1, 0]), &b).unwrap().len(), 1);
        let brick = FFRep::from_ints(k.clone(), f, v([1, 1]), &[vec![vec![1]], vec![vec![0]]]).unwrap();
        assert_eq!(enumerate_subreps(&brick, &v([1, 0]), &b).unwrap().len(), 0);
        for z in [&zero, &brick] {
            let subs = enumerate_subreps(z, &v([0, 1]), &b).unwrap();
            assert_eq!(subs.len(), 1);
            let s = &subs[0];
            assert_eq!(s.sub_rep(z).dim(), &v([0, 1]));
            assert_eq!(s.quotient_rep(z).dim(), &v([1, 0]));
        }
    }

    #[test]
    fn quotient_maps_are_induced() {
        // a = (1, 0), b = (0, 1): every line at the source together with the sink is a subrep
        let k = Arc::new(kronecker());
        let f = PrimeField::new(3).unwrap();
        let z = FFRep::from_ints(k, f, v([2, 1]), &[vec![vec![1, 0]], vec![vec![0, 1]]]).unwrap();
        let subs = enumerate_subreps(&z, &v([1, 1]), &Budget::default()).unwrap();
        assert_eq!(subs.len(), 4);
        for s in &subs {
            let quo = s.quotient_rep(&z);
            assert_eq!(quo.dim(), &v([1, 0]));
            let sub = s.sub_rep(&z);
            assert!(!sub.maps()[0].is_zero() || !sub.maps()[1].is_zero());
        }
    }
}
