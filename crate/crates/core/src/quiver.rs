//! Quivers and the bilinear forms on their root lattice.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver without loops. Vertex order is the order of declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Validates and builds a quiver from vertex ids and `(arrow id, source id, target id)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Quiver>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (id, src, dst) in arrows {
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateId(id));
            }
            let lookup = |v: &String| {
                index.get(v).copied().ok_or_else(|| Error::DanglingEndpoint {
                    arrow: id.clone(),
                    vertex: v.clone(),
                })
            };
            let source = lookup(&src)?;
            let target = lookup(&dst)?;
            if source == target {
                return Err(Error::LoopArrow(id));
            }
            out.push(Arrow { id, source, target });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// Quiver on vertices `"0".."n-1"` with arrows named `a, b, c, ...` in the given order.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Quiver> {
        let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let arrows = arrows.iter().enumerate().map(|(k, &(s, t))| {
            let name = |i: usize| vertices.get(i).cloned().unwrap_or_else(|| i.to_string());
            (arrow_name(k), name(s), name(t))
        });
        Quiver::new(vertices.clone(), arrows.collect::<Vec<_>>())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn simple_root(&self, i: usize) -> LatticeVector {
        LatticeVector::unit(self.vertex_count(), i)
    }

    pub(crate) fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.vertex_count() {
            return Err(Error::IndexMismatch {
                expected: self.vertex_count(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `e(a, b) = sum_i a_i b_i - sum_{arrows} a_{s} b_{t}`.
    pub fn euler_form(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let diag: i64 = a.dot(b);
        let off: i64 = self
            .arrows
            .iter()
            .map(|arr| a[arr.source] * b[arr.target])
            .sum();
        Ok(diag - off)
    }

    pub fn symmetrized_form(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        Ok(self.euler_form(a, b)? + self.euler_form(b, a)?)
    }

    pub fn tits_form(&self, a: &LatticeVector) -> Result<i64> {
        self.euler_form(a, a)
    }

    /// Matrix `E` with `e(a, b) = a^T E b`.
    pub fn euler_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut e = IntMatrix::identity(n);
        for a in &self.arrows {
            e[(a.source, a.target)] -= 1;
        }
        e
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        let e = self.euler_matrix();
        let et = e.transpose();
        let n = self.vertex_count();
        let mut c = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                c[(i, j)] = e[(i, j)] + et[(i, j)];
            }
        }
        c
    }

    /// Vertices in an order where every arrow points forward, or `OrientedCycle`.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            let mut freed = Vec::new();
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    freed.push(a.target);
                }
            }
            freed.sort_unstable_by(|a, b| b.cmp(a));
            freed.dedup();
            ready.extend(freed);
            ready.sort_unstable_by(|a, b| b.cmp(a));
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(Error::OrientedCycle)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Doubles every arrow `a: i -> j` with a reverse arrow `a*: j -> i`.
    pub fn double(&self) -> DoubleQuiver {
        let m = self.arrows.len();
        let mut arrows = self.arrows.clone();
        arrows.extend(self.arrows.iter().map(|a| Arrow {
            id: format!("{}*", a.id),
            source: a.target,
            target: a.source,
        }));
        let star = (0..2 * m).map(|k| if k < m { k + m } else { k - m }).collect();
        DoubleQuiver {
            quiver: Quiver {
                vertices: self.vertices.clone(),
                arrows,
            },
            forward: m,
            star,
        }
    }

    /// `(dim P(i), dim I(i))` for every vertex `i`, counting paths.
    pub fn projective_injective_dims(&self) -> Result<Vec<(LatticeVector, LatticeVector)>> {
        let order = self.topological_order()?;
        let n = self.vertex_count();
        // paths[i][j] = number of paths i -> j
        let mut paths = vec![vec![0i64; n]; n];
        for &i in order.iter().rev() {
            paths[i][i] = 1;
            for a in self.arrows.iter().filter(|a| a.source == i) {
                for j in 0..n {
                    paths[i][j] += paths[a.target][j];
                }
            }
        }
        Ok((0..n)
            .map(|i| {
                let p = LatticeVector::new(paths[i].clone());
                let inj = LatticeVector::new((0..n).map(|j| paths[j][i]).collect());
                (p, inj)
            })
            .collect())
    }
}

fn arrow_name(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("a{k}")
    }
}

/// The double of a quiver together with the arrow involution `a <-> a*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleQuiver {
    pub quiver: Quiver,
    /// Arrows `0..forward` are the original ones; arrow `k + forward` is the star of arrow `k`.
    pub forward: usize,
    pub star: Vec<usize>,
}

impl DoubleQuiver {
    pub fn is_starred(&self, arrow: usize) -> bool {
        arrow >= self.forward
    }
}

/// Quivers used throughout the tests and the report examples.
pub mod samples {
    use super::Quiver;

    /// Kronecker quiver `a, b: 0 -> 1`.
    pub fn kronecker() -> Quiver {
        Quiver::from_arrows(2, &[(0, 1), (0, 1)]).expect("valid quiver")
    }

    /// Affine A2 with `a: 0 -> 1`, `b: 1 -> 2`, `c: 0 -> 2`.
    pub fn a2_tilde() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1), (1, 2), (0, 2)]).expect("valid quiver")
    }

    /// Affine D4: centre `0`, four leaves pointing into it.
    pub fn d4_tilde() -> Quiver {
        Quiver::from_arrows(5, &[(1, 0), (2, 0), (3, 0), (4, 0)]).expect("valid quiver")
    }

    /// Cyclically oriented affine A_n (n + 1 vertices) with one arrow reversed so it stays acyclic.
    pub fn a_tilde(n: usize) -> Quiver {
        assert!(n >= 1);
        if n == 1 {
            return kronecker();
        }
        let mut arrows: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        arrows.push((0, n));
        Quiver::from_arrows(n + 1, &arrows).expect("valid quiver")
    }

    pub fn single_vertex() -> Quiver {
        Quiver::from_arrows(1, &[]).expect("valid quiver")
    }
}
