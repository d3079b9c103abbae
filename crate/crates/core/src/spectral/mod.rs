//! Spectral radius of bipartite graphs.
//!
//! The adjacency spectrum of a bipartite graph is symmetric about zero, so
//! plain power iteration on the adjacency matrix does not settle. Instead we
//! iterate the positive semidefinite Gram operator `B Bᵀ` of the biadjacency
//! matrix `B`, whose top eigenvalue is `ρ(G)²`.

mod quotient;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigraph::{bits, BipartiteGraph};

pub use quotient::{check_equitable, extremal_partition, quotient_matrix, rho_gnn_exact, Partition};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("power iteration stalled after {iterations} iterations (last change {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("extremal threshold needs n >= 5, got {0}")]
    ThresholdTooSmall(usize),
    #[error("partition is not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("quotient bracket lost its sign change: {0}")]
    Bracket(String),
    #[error(transparent)]
    Graph(#[from] crate::bigraph::GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub iterations: usize,
    /// Change in `ρ` over the final iteration.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// `ρ(G)` to within `tol`, with the default iteration cap.
pub fn spectral_radius(g: &BipartiteGraph, tol: f64) -> Result<SpectralResult, SpectralError> {
    PowerIteration {
        tol,
        ..PowerIteration::default()
    }
    .run(g)
}

impl PowerIteration {
    pub fn run(&self, g: &BipartiteGraph) -> Result<SpectralResult, SpectralError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(SpectralError::BadTolerance(self.tol));
        }
        if g.order() == 0 {
            return Err(SpectralError::EmptyGraph);
        }
        if g.edge_count() == 0 {
            return Ok(SpectralResult {
                rho: 0.0,
                iterations: 0,
                residual: 0.0,
            });
        }

        let rows: Vec<Vec<usize>> = g.x_rows().iter().map(|&r| bits(r).collect()).collect();
        let mut x = vec![1.0f64; g.nx()];
        let mut y = vec![0.0f64; g.ny()];
        let mut rho_prev = f64::NAN;
        let mut delta_prev = f64::INFINITY;

        for iteration in 1..=self.max_iterations {
            // y = Bᵀ x; the Rayleigh quotient of B Bᵀ at x is |y|² / |x|².
            y.fill(0.0);
            for (xi, row) in x.iter().zip(&rows) {
                for &j in row {
                    y[j] += xi;
                }
            }
            let x_norm2: f64 = x.iter().map(|v| v * v).sum();
            let y_norm2: f64 = y.iter().map(|v| v * v).sum();
            let rho = (y_norm2 / x_norm2).sqrt();

            // x = B y, renormalised.
            for (xi, row) in x.iter_mut().zip(&rows) {
                *xi = row.iter().map(|&j| y[j]).sum();
            }
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                break;
            }
            x.iter_mut().for_each(|v| *v /= norm);

            let delta = (rho - rho_prev).abs();
            if delta <= self.tol {
                // Geometric-tail estimate of the remaining error from the
                // observed contraction rate; only trusted once contracting.
                let tail = if delta <= 8.0 * f64::EPSILON * rho.max(1.0) {
                    // Rounding noise: the quotient can no longer move.
                    0.0
                } else if delta_prev.is_finite() && delta_prev > 0.0 && delta < delta_prev {
                    let ratio = delta / delta_prev;
                    delta * ratio / (1.0 - ratio)
                } else {
                    f64::INFINITY
                };
                if tail <= self.tol {
                    return Ok(SpectralResult {
                        rho,
                        iterations: iteration,
                        residual: delta,
                    });
                }
            }
            if delta.is_finite() {
                delta_prev = delta;
            }
            rho_prev = rho;
        }
        Err(SpectralError::NoConvergence {
            iterations: self.max_iterations,
            residual: delta_prev,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeBound {
    /// `ρ(G) < √e(G)`.
    Strict,
    /// `ρ(G) = √e(G)`: complete bipartite once isolated vertices are dropped.
    Equality,
}

/// Classifies `G` against the bound `ρ(G) ≤ √e(G)`.
pub fn edge_bound_classify(g: &BipartiteGraph) -> Result<EdgeBound, SpectralError> {
    if g.order() == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    let live_y = g.x_rows().iter().fold(0u64, |acc, &r| acc | r);
    let complete = g
        .x_rows()
        .iter()
        .filter(|&&r| r != 0)
        .all(|&r| r == live_y);
    Ok(if complete {
        EdgeBound::Equality
    } else {
        EdgeBound::Strict
    })
}
