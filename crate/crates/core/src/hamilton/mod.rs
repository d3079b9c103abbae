//! Hamilton cycles, 2-factors, bipartite closure and good linear forests.
//!
//! Every search returns a certificate that can be re-checked against the host
//! graph on its own, independent of the search that produced it.

mod certificate;
mod closure;
mod forest;
mod recognize;
mod search;
mod two_factor;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigraph::{BipartiteGraph, GraphError, Part, Vertex};

pub use certificate::{Certificate, CertificateDocument, CertificateKind};
pub use closure::{bipartite_closure, bipartite_closure_logged, lift_cycle, ClosureLog};
pub use forest::{find_good_linear_forest, forest_to_hamilton, thread_paths};
pub use recognize::recognize_gnn;
pub use search::{
    find_hamilton_cycle, find_hamilton_cycle_with, HamiltonOptions, HamiltonSearch, Strategy,
};
pub use two_factor::find_two_factor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("graph is not balanced ({nx} vs {ny})")]
    Unbalanced { nx: usize, ny: usize },
    #[error("search exceeded its budget of {0} steps")]
    BudgetExhausted(u64),
    #[error("a good linear forest needs exactly 3 special vertices, got {0}")]
    SpecialSetSize(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("recognition needs n >= 5, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn require_balanced(g: &BipartiteGraph) -> Result<usize, HamiltonError> {
    if g.is_balanced() {
        Ok(g.nx())
    } else {
        Err(HamiltonError::Unbalanced {
            nx: g.nx(),
            ny: g.ny(),
        })
    }
}

fn invalid(msg: impl Into<String>) -> HamiltonError {
    HamiltonError::InvalidCertificate(msg.into())
}

fn check_vertex(g: &BipartiteGraph, v: Vertex) -> Result<(), HamiltonError> {
    if v.index < g.part_size(v.part) {
        Ok(())
    } else {
        Err(invalid(format!("vertex {v} is not in the graph")))
    }
}

/// A spanning cycle listed as an alternating vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonCycle {
    pub order: Vec<Vertex>,
}

impl HamiltonCycle {
    pub fn new(order: Vec<Vertex>) -> Self {
        Self { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Cycle edges as `(x, y)` pairs, in traversal order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.order.len();
        (0..m)
            .map(|i| {
                let (a, b) = (self.order[i], self.order[(i + 1) % m]);
                if a.part == Part::X {
                    (a.index, b.index)
                } else {
                    (b.index, a.index)
                }
            })
            .collect()
    }

    pub fn verify(&self, g: &BipartiteGraph) -> Result<(), HamiltonError> {
        let n = require_balanced(g)?;
        if self.order.len() != 2 * n || n < 2 {
            return Err(invalid(format!(
                "cycle has {} vertices, graph has {}",
                self.order.len(),
                2 * n
            )));
        }
        let mut seen = crate::bigraph::VertexSet::default();
        for (i, &v) in self.order.iter().enumerate() {
            check_vertex(g, v)?;
            if seen.contains(v) {
                return Err(invalid(format!("vertex {v} repeated")));
            }
            seen.insert(v);
            let next = self.order[(i + 1) % self.order.len()];
            if next.part == v.part {
                return Err(invalid(format!("{v} and {next} are in the same part")));
            }
            if !g.adjacent(v, next) {
                return Err(invalid(format!("{v} and {next} are not adjacent")));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for HamiltonCycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.order {
            write!(f, "{v}")?;
        }
        if let Some(first) = self.order.first() {
            write!(f, "{first}")?;
        }
        Ok(())
    }
}

/// A spanning subgraph in which every vertex has degree exactly 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactor {
    pub edges: Vec<(usize, usize)>,
}

impl TwoFactor {
    pub fn verify(&self, g: &BipartiteGraph) -> Result<(), HamiltonError> {
        let n = require_balanced(g)?;
        let mut dx = vec![0usize; n];
        let mut dy = vec![0usize; n];
        let mut seen = std::collections::HashSet::new();
        for &(x, y) in &self.edges {
            if !g.has_edge(x, y) {
                return Err(invalid(format!("({x}, {y}) is not an edge")));
            }
            if !seen.insert((x, y)) {
                return Err(invalid(format!("edge ({x}, {y}) repeated")));
            }
            dx[x] += 1;
            dy[y] += 1;
        }
        if let Some(x) = dx.iter().position(|&d| d != 2) {
            return Err(invalid(format!("{} has degree {}", Vertex::x(x), dx[x])));
        }
        if let Some(y) = dy.iter().position(|&d| d != 2) {
            return Err(invalid(format!("{} has degree {}", Vertex::y(y), dy[y])));
        }
        Ok(())
    }

    /// Splits the factor into its cycles, each starting at its smallest
    /// `X`-vertex.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut by_x: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        let mut by_y: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &(x, y) in &self.edges {
            by_x.entry(x).or_default().push(y);
            by_y.entry(y).or_default().push(x);
        }
        let mut done = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &start in by_x.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![Vertex::x(start)];
            done.insert(start);
            let (mut x, mut prev_y) = (start, usize::MAX);
            while let Some(&y) = by_x[&x].iter().find(|&&y| y != prev_y) {
                let Some(&nx) = by_y[&y].iter().find(|&&w| w != x) else {
                    break;
                };
                cycle.push(Vertex::y(y));
                if nx == start {
                    break;
                }
                cycle.push(Vertex::x(nx));
                done.insert(nx);
                prev_y = y;
                x = nx;
            }
            out.push(cycle);
        }
        out
    }
}

/// Vertex-disjoint paths with both ends in `X` whose `Y`-vertices are exactly
/// a designated set of three low-degree vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodLinearForest {
    pub paths: Vec<Vec<Vertex>>,
    /// `Y`-indices of the designated vertices.
    pub special: [usize; 3],
}

impl GoodLinearForest {
    pub fn verify(&self, g: &BipartiteGraph) -> Result<(), HamiltonError> {
        verify_path_system(g, &self.paths, &self.special)?;
        if self.paths.len() > 3 {
            return Err(invalid(format!("{} paths, at most 3 allowed", self.paths.len())));
        }
        Ok(())
    }
}

impl std::fmt::Display for GoodLinearForest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, path) in self.paths.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            for v in path {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Shared validity check for forests over any designated `Y`-set: disjoint
/// alternating paths with `X` ends, each holding at least one designated
/// vertex, jointly using each designated vertex and nothing else from `Y`.
pub(crate) fn verify_path_system(
    g: &BipartiteGraph,
    paths: &[Vec<Vertex>],
    special: &[usize],
) -> Result<(), HamiltonError> {
    let mut seen = crate::bigraph::VertexSet::default();
    let mut used_special = 0u64;
    let special_mask = special.iter().fold(0u64, |acc, &y| acc | 1 << y);
    if special_mask.count_ones() as usize != special.len() {
        return Err(invalid("designated vertices repeat"));
    }
    for path in paths {
        if path.len() < 3 || path.len() % 2 == 0 {
            return Err(invalid(format!("path of length {} cannot have both ends in X", path.len())));
        }
        for (i, &v) in path.iter().enumerate() {
            check_vertex(g, v)?;
            let want = if i % 2 == 0 { Part::X } else { Part::Y };
            if v.part != want {
                return Err(invalid(format!("{v} breaks the X/Y alternation")));
            }
            if seen.contains(v) {
                return Err(invalid(format!("{v} used twice")));
            }
            seen.insert(v);
            if v.part == Part::Y {
                if special_mask >> v.index & 1 == 0 {
                    return Err(invalid(format!("{v} is not designated")));
                }
                used_special |= 1 << v.index;
            }
            if i > 0 && !g.adjacent(path[i - 1], v) {
                return Err(invalid(format!("{} and {v} are not adjacent", path[i - 1])));
            }
        }
    }
    if used_special != special_mask {
        return Err(invalid("designated vertices not all covered"));
    }
    Ok(())
}
