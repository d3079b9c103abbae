//! Equitable partitions and the exact extremal threshold `ρ(G_{n,n})`.
//!
//! `G_{n,n}` has the equitable partition
//! `{x0} | {x1,x2,x3} | {x4..} | {y0,y1,y2} | {y3..}`, so its spectral radius
//! is the top eigenvalue of a 5x5 quotient matrix. That root is isolated by
//! bisection on the characteristic polynomial inside
//! `(√(n(n-3)), √(n(n-3)+6))`.

use crate::bigraph::{low_bits, BipartiteGraph, Vertex, VertexSet};

use super::SpectralError;

/// Ordered disjoint cells covering the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub cells: Vec<VertexSet>,
}

impl Partition {
    pub fn new(cells: Vec<VertexSet>) -> Self {
        Self { cells }
    }

    pub fn singletons(g: &BipartiteGraph) -> Self {
        Self::new(
            g.vertices()
                .map(|v| [v].into_iter().collect())
                .collect(),
        )
    }

    fn validate(&self, g: &BipartiteGraph) -> Result<(), SpectralError> {
        let mut seen = VertexSet::default();
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(SpectralError::NotAPartition(format!("cell {i} is empty")));
            }
            g.check_set(cell)?;
            if !seen.is_disjoint(cell) {
                return Err(SpectralError::NotAPartition(format!(
                    "cell {i} overlaps an earlier cell"
                )));
            }
            seen = seen.union(cell);
        }
        if seen.x != low_bits(g.nx()) || seen.y != low_bits(g.ny()) {
            return Err(SpectralError::NotAPartition(
                "cells do not cover every vertex".into(),
            ));
        }
        Ok(())
    }
}

fn neighbours_in(g: &BipartiteGraph, v: Vertex, cell: &VertexSet) -> usize {
    let nb = g.neighbors(v);
    let target = match v.part {
        crate::bigraph::Part::X => cell.y,
        crate::bigraph::Part::Y => cell.x,
    };
    (nb & target).count_ones() as usize
}

/// True iff every vertex of each cell has the same number of neighbours in
/// every cell.
pub fn check_equitable(g: &BipartiteGraph, p: &Partition) -> Result<bool, SpectralError> {
    p.validate(g)?;
    Ok(quotient_counts(g, p).is_some())
}

fn quotient_counts(g: &BipartiteGraph, p: &Partition) -> Option<Vec<Vec<usize>>> {
    let mut q = vec![vec![0; p.cells.len()]; p.cells.len()];
    for (i, ci) in p.cells.iter().enumerate() {
        for (j, cj) in p.cells.iter().enumerate() {
            let mut counts = ci.iter().map(|v| neighbours_in(g, v, cj));
            let first = counts.next().unwrap_or(0);
            if counts.any(|c| c != first) {
                return None;
            }
            q[i][j] = first;
        }
    }
    Some(q)
}

/// Quotient matrix of an equitable partition; `None` if not equitable.
pub fn quotient_matrix(
    g: &BipartiteGraph,
    p: &Partition,
) -> Result<Option<Vec<Vec<f64>>>, SpectralError> {
    p.validate(g)?;
    Ok(quotient_counts(g, p)
        .map(|q| q.into_iter().map(|row| row.into_iter().map(|c| c as f64).collect()).collect()))
}

/// The five-cell partition of `G_{n,n}` described in the module docs.
pub fn extremal_partition(n: usize) -> Partition {
    let bulk_x = low_bits(n) & !0b1111;
    let bulk_y = low_bits(n) & !0b111;
    Partition::new(vec![
        VertexSet::from_x_mask(0b1),
        VertexSet::from_x_mask(0b1110),
        VertexSet::from_x_mask(bulk_x),
        VertexSet::from_y_mask(0b111),
        VertexSet::from_y_mask(bulk_y),
    ])
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let (top, bottom) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            let factor = row[col] / pivot_row[col];
            for (a, b) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *a -= factor * b;
            }
        }
    }
    det
}

fn characteristic(q: &[Vec<f64>], lambda: f64) -> f64 {
    let shifted = q
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| if i == j { lambda - v } else { -v })
                .collect()
        })
        .collect();
    determinant(shifted)
}

/// `ρ(G_{n,n})` to within `tol`, via the quotient matrix of
/// [`extremal_partition`].
pub fn rho_gnn_exact(n: usize, tol: f64) -> Result<f64, SpectralError> {
    if n < 5 {
        return Err(SpectralError::ThresholdTooSmall(n));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let g = BipartiteGraph::extremal(n)?;
    let q = quotient_matrix(&g, &extremal_partition(n))?
        .ok_or_else(|| SpectralError::Bracket("extremal partition is not equitable".into()))?;

    let base = (n * (n - 3)) as f64;
    let (mut lo, mut hi) = (base.sqrt(), (base + 6.0).sqrt());
    let mut f_lo = characteristic(&q, lo);
    let f_hi = characteristic(&q, hi);
    if f_lo == 0.0 || f_hi == 0.0 || f_lo.signum() == f_hi.signum() {
        return Err(SpectralError::Bracket(format!(
            "p({lo}) = {f_lo:e}, p({hi}) = {f_hi:e}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = characteristic(&q, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
