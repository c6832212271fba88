use crate::error::{Error, Result};
use crate::field::FpMatrix;

use super::FFRep;

/// Coefficient matrix of `(g_i) -> (g_t x_a - y_a g_s)_a`, unknowns laid out vertex by
/// vertex with each `g_i` (a `dim Y_i x dim X_i` block) row-major.
fn intertwiner_system(x: &FFRep, y: &FFRep) -> Result<(FpMatrix, Vec<usize>)> {
    x.same_setting(y)?;
    let f = x.field();
    let q = x.quiver();
    let n = q.vertex_count();
    let mut offsets = Vec::with_capacity(n);
    let mut unknowns = 0;
    for i in 0..n {
        offsets.push(unknowns);
        unknowns += y.dim_at(i) * x.dim_at(i);
    }
    let equations: usize = q
        .arrows()
        .iter()
        .map(|a| y.dim_at(a.target) * x.dim_at(a.source))
        .sum();
    let mut m = FpMatrix::zeros(equations, unknowns);
    let mut row = 0;
    for (k, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (xa, ya) = (x.map(k), y.map(k));
        for r in 0..y.dim_at(t) {
            for c in 0..x.dim_at(s) {
                // (g_t x_a)[r][c] = sum_j g_t[r][j] x_a[j][c]
                for j in 0..x.dim_at(t) {
                    let col = offsets[t] + r * x.dim_at(t) + j;
                    let v = f.add(m.get(row, col), xa.get(j, c));
                    m.set(row, col, v);
                }
                // -(y_a g_s)[r][c] = -sum_j y_a[r][j] g_s[j][c]
                for j in 0..y.dim_at(s) {
                    let col = offsets[s] + j * x.dim_at(s) + c;
                    let v = f.sub(m.get(row, col), ya.get(r, j));
                    m.set(row, col, v);
                }
                row += 1;
            }
        }
    }
    Ok((m, offsets))
}

/// Basis of `Hom(X, Y)`; each element is one `dim Y_i x dim X_i` matrix per vertex.
pub fn hom_basis(x: &FFRep, y: &FFRep) -> Result<Vec<Vec<FpMatrix>>> {
    let (m, offsets) = intertwiner_system(x, y)?;
    let n = x.quiver().vertex_count();
    Ok(m.nullspace(&x.field())
        .into_iter()
        .map(|v| {
            (0..n)
                .map(|i| {
                    let (r, c) = (y.dim_at(i), x.dim_at(i));
                    FpMatrix::from_vec(r, c, v[offsets[i]..offsets[i] + r * c].to_vec())
                })
                .collect()
        })
        .collect())
}

pub fn hom_dim(x: &FFRep, y: &FFRep) -> Result<usize> {
    Ok(hom_basis(x, y)?.len())
}

pub fn end_basis(x: &FFRep) -> Result<Vec<Vec<FpMatrix>>> {
    hom_basis(x, x)
}

/// `dim Ext^1(X, Y)` as the corank of the standard resolution map.
pub fn ext_dim(x: &FFRep, y: &FFRep) -> Result<usize> {
    if !x.quiver().is_acyclic() {
        return Err(Error::OrientedCycle);
    }
    let (m, _) = intertwiner_system(x, y)?;
    Ok(m.rows() - m.rank(&x.field()))
}
