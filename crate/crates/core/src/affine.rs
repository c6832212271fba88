//! Recognition of extended A-D-E quivers and their radical vector.

use std::collections::BTreeMap;
use std::fmt;

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::linalg::integer_kernel;
use crate::quiver::Quiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffineType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "A~{n}"),
            AffineType::D(n) => write!(f, "D~{n}"),
            AffineType::E6 => write!(f, "E~6"),
            AffineType::E7 => write!(f, "E~7"),
            AffineType::E8 => write!(f, "E~8"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineData {
    pub affine_type: AffineType,
    /// Primitive positive generator of the radical of the Tits form.
    pub delta: LatticeVector,
    /// Vertices `e` with `delta_e = 1`, ascending.
    pub extending_vertices: Vec<usize>,
    /// Vertex count minus one.
    pub n: usize,
    pub has_oriented_cycle: bool,
}

impl AffineData {
    pub fn default_extending_vertex(&self) -> usize {
        self.extending_vertices[0]
    }
}

/// Underlying multigraph as edge multiplicities keyed by unordered vertex pair.
fn edge_multiplicities(q: &Quiver) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for a in q.arrows() {
        let key = (a.source.min(a.target), a.source.max(a.target));
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> UnGraph<(), ()> {
    let mut g = UnGraph::new_undirected();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for &(a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    g
}

/// Star-shaped tree: a centre `0` with arms of the given lengths.
fn star_tree(arms: &[usize]) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    (next, edges)
}

/// Candidate extended Dynkin shapes with `v` vertices.
fn catalogue(v: usize) -> Vec<(AffineType, UnGraph<(), ()>)> {
    let mut out = Vec::new();
    if v >= 3 {
        let edges: Vec<_> = (0..v).map(|i| (i, (i + 1) % v)).collect();
        out.push((AffineType::A(v - 1), graph_from_edges(v, &edges)));
    }
    if v == 5 {
        let (n, e) = star_tree(&[1, 1, 1, 1]);
        out.push((AffineType::D(4), graph_from_edges(n, &e)));
    } else if v >= 6 {
        // spine c_0 .. c_{v-5}, two leaves on each end
        let spine = v - 4;
        let mut edges: Vec<_> = (0..spine - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, spine));
        edges.push((0, spine + 1));
        edges.push((spine - 1, spine + 2));
        edges.push((spine - 1, spine + 3));
        out.push((AffineType::D(v - 1), graph_from_edges(v, &edges)));
    }
    for (ty, arms) in [
        (AffineType::E6, vec![2, 2, 2]),
        (AffineType::E7, vec![3, 3, 1]),
        (AffineType::E8, vec![5, 2, 1]),
    ] {
        let (n, e) = star_tree(&arms);
        if n == v {
            out.push((ty, graph_from_edges(n, &e)));
        }
    }
    out
}

fn match_catalogue(q: &Quiver) -> Option<AffineType> {
    let v = q.vertex_count();
    let mult = edge_multiplicities(q);
    if v == 2 {
        return (mult.get(&(0, 1)) == Some(&2) && mult.len() == 1).then_some(AffineType::A(1));
    }
    if mult.values().any(|&m| m > 1) {
        return None;
    }
    let edges: Vec<_> = mult.keys().copied().collect();
    let g = graph_from_edges(v, &edges);
    catalogue(v)
        .into_iter()
        .find(|(_, shape)| is_isomorphic(&g, shape))
        .map(|(ty, _)| ty)
}

/// Detects the affine type of `q` and computes `delta` and the extending vertices.
pub fn classify_affine(q: &Quiver) -> Result<AffineData> {
    let affine_type = match_catalogue(q).ok_or_else(|| {
        Error::NotAffine("underlying graph is not an extended A-D-E diagram".into())
    })?;
    let kernel = integer_kernel(&q.cartan_matrix());
    if kernel.len() != 1 {
        return Err(Error::NotAffine(format!(
            "Cartan kernel has dimension {}",
            kernel.len()
        )));
    }
    let mut delta = kernel.into_iter().next().expect("one kernel vector");
    if delta.iter().any(|&x| x < 0) {
        delta = -&delta;
    }
    if delta.iter().any(|&x| x <= 0) {
        return Err(Error::NotAffine("radical vector is not strictly positive".into()));
    }
    debug_assert_eq!(delta.gcd(), 1);
    if q.tits_form(&delta)? != 0 {
        return Err(Error::Assertion("Tits form of delta is nonzero".into()));
    }
    let extending_vertices = (0..delta.len()).filter(|&i| delta[i] == 1).collect();
    Ok(AffineData {
        affine_type,
        delta,
        extending_vertices,
        n: q.vertex_count() - 1,
        has_oriented_cycle: !q.is_acyclic(),
    })
}
