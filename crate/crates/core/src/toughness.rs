//! Component counting and bipartite toughness.
//!
//! `t^B(G)` is the minimum of `|S| / c(G - S)` over proper subsets `S` of one
//! part with `c(G - S) > 1`. It is undefined for complete bipartite graphs.
//!
//! Two independent routes are provided: [`bipartite_toughness`] scans every
//! admissible subset, while [`is_one_tough`] runs a pruned search for a set
//! with more than `max(|S|, 1)` components.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::bigraph::{bits, low_bits, BipartiteGraph, Part, VertexSet};

pub const DEFAULT_MAX_PART: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToughnessError {
    #[error("bipartite toughness is undefined for complete bipartite graphs")]
    CompleteGraph,
    #[error("no proper one-sided subset disconnects the graph")]
    NoAdmissibleSet,
    #[error("part of size {size} exceeds the enumeration limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToughnessLimits {
    /// Largest part the exponential subset enumeration will accept.
    pub max_part: usize,
}

impl Default for ToughnessLimits {
    fn default() -> Self {
        Self {
            max_part: DEFAULT_MAX_PART,
        }
    }
}

impl ToughnessLimits {
    fn check(&self, g: &BipartiteGraph) -> Result<(), ToughnessError> {
        for size in [g.nx(), g.ny()] {
            if size > self.max_part {
                return Err(ToughnessError::TooLarge {
                    size,
                    limit: self.max_part,
                });
            }
        }
        Ok(())
    }
}

/// A one-sided cut set together with `c(G - S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToughnessWitness {
    pub part: Part,
    pub set: VertexSet,
    pub components: usize,
}

impl ToughnessWitness {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// `|S| / c(G - S)`, exactly.
    pub fn ratio(&self) -> Ratio<usize> {
        Ratio::new(self.size(), self.components)
    }

    /// Re-derives the component count from `g`.
    pub fn holds_in(&self, g: &BipartiteGraph) -> bool {
        let one_sided = match self.part {
            Part::X => self.set.y == 0 && self.set.x != low_bits(g.nx()),
            Part::Y => self.set.x == 0 && self.set.y != low_bits(g.ny()),
        };
        one_sided
            && g.check_set(&self.set).is_ok()
            && self.components > 1
            && count_components(g, &self.set) == self.components
    }
}

impl fmt::Display for ToughnessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S = {} leaves {} components (ratio {})",
            self.set,
            self.components,
            self.ratio()
        )
    }
}

/// Bit-parallel component counter with the `Y`-side adjacency cached.
struct Components<'a> {
    rows: &'a [u64],
    cols: Vec<u64>,
    all_x: u64,
    all_y: u64,
}

impl<'a> Components<'a> {
    fn new(g: &'a BipartiteGraph) -> Self {
        Self {
            rows: g.x_rows(),
            cols: g.y_rows(),
            all_x: low_bits(g.nx()),
            all_y: low_bits(g.ny()),
        }
    }

    fn count(&self, removed_x: u64, removed_y: u64) -> usize {
        let mut rx = self.all_x & !removed_x;
        let mut ry = self.all_y & !removed_y;
        let mut count = 0;
        while rx | ry != 0 {
            count += 1;
            let (mut fx, mut fy) = if rx != 0 {
                (rx & rx.wrapping_neg(), 0)
            } else {
                (0, ry & ry.wrapping_neg())
            };
            rx &= !fx;
            ry &= !fy;
            while fx | fy != 0 {
                let next_y = bits(fx).fold(0, |acc, x| acc | self.rows[x]) & ry;
                let next_x = bits(fy).fold(0, |acc, y| acc | self.cols[y]) & rx;
                ry &= !next_y;
                rx &= !next_x;
                fx = next_x;
                fy = next_y;
            }
        }
        count
    }
}

/// `c(G - S)`; isolated vertices count as components. Members of `S` outside
/// the graph are ignored.
pub fn count_components(g: &BipartiteGraph, s: &VertexSet) -> usize {
    Components::new(g).count(s.x, s.y)
}

fn witness_order(a: &ToughnessWitness, b: &ToughnessWitness) -> Ordering {
    a.ratio()
        .cmp(&b.ratio())
        .then(a.size().cmp(&b.size()))
        .then_with(|| a.set.lex_cmp(&b.set))
}

/// `t^B(G)` by exhaustive enumeration, returned as the minimising witness.
/// Ties go to the smaller set, then the lexicographically smaller one.
pub fn bipartite_toughness(g: &BipartiteGraph) -> Result<ToughnessWitness, ToughnessError> {
    bipartite_toughness_with(g, ToughnessLimits::default())
}

pub fn bipartite_toughness_with(
    g: &BipartiteGraph,
    limits: ToughnessLimits,
) -> Result<ToughnessWitness, ToughnessError> {
    if g.is_complete() {
        return Err(ToughnessError::CompleteGraph);
    }
    limits.check(g)?;
    let comps = Components::new(g);
    let mut best: Option<ToughnessWitness> = None;
    for part in [Part::X, Part::Y] {
        let full = match part {
            Part::X => comps.all_x,
            Part::Y => comps.all_y,
        };
        for mask in 0..=full {
            if mask == full {
                continue;
            }
            let set = match part {
                Part::X => VertexSet::from_x_mask(mask),
                Part::Y => VertexSet::from_y_mask(mask),
            };
            let components = comps.count(set.x, set.y);
            if components <= 1 {
                continue;
            }
            let w = ToughnessWitness {
                part,
                set,
                components,
            };
            if best
                .as_ref()
                .is_none_or(|b| witness_order(&w, b) == Ordering::Less)
            {
                best = Some(w);
            }
        }
    }
    best.ok_or(ToughnessError::NoAdmissibleSet)
}

/// Outcome of the 1-toughness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneToughness {
    pub tough: bool,
    /// A set with `c(G - S) > max(|S|, 1)` when the graph is not 1-tough.
    pub violation: Option<ToughnessWitness>,
}

/// Decides `t^B(G) >= 1`. Complete bipartite graphs count as 1-tough.
pub fn is_one_tough(g: &BipartiteGraph) -> Result<OneToughness, ToughnessError> {
    is_one_tough_with(g, ToughnessLimits::default())
}

pub fn is_one_tough_with(
    g: &BipartiteGraph,
    limits: ToughnessLimits,
) -> Result<OneToughness, ToughnessError> {
    if g.is_complete() {
        return Ok(OneToughness {
            tough: true,
            violation: None,
        });
    }
    limits.check(g)?;
    let found = ViolationSearch::new(g)
        .run()
        .map(|(mask, components)| (Part::X, VertexSet::from_x_mask(mask), components))
        .or_else(|| {
            ViolationSearch::new(&g.transpose())
                .run()
                .map(|(mask, components)| (Part::Y, VertexSet::from_y_mask(mask), components))
        });
    Ok(match found {
        Some((part, set, components)) => OneToughness {
            tough: false,
            violation: Some(ToughnessWitness {
                part,
                set,
                components,
            }),
        },
        None => OneToughness {
            tough: true,
            violation: None,
        },
    })
}

/// Pruned search for `S ⊂ X` with `c(G - S) > max(|S|, 1)`.
///
/// For `S ⊆ X`, `c(G - S)` splits into the `Y`-vertices whose whole
/// neighbourhood lies in `S` plus the components of `A - S`, where `A` joins
/// two `X`-vertices sharing a neighbour. Subsets are built in increasing size,
/// and a branch is dropped once even the most favourable completion cannot
/// reach the required count: isolated `Y`-vertices are bounded by those whose
/// outstanding neighbours all remain choosable, and `c(A - S)` by
/// `(n - k + singletons) / 2`.
struct ViolationSearch<'a> {
    g: &'a BipartiteGraph,
    comps: Components<'a>,
    aux: Vec<u64>,
    n: usize,
}

impl<'a> ViolationSearch<'a> {
    fn new(g: &'a BipartiteGraph) -> Self {
        let comps = Components::new(g);
        let aux = (0..g.nx())
            .map(|x| {
                bits(g.x_neighbors(x)).fold(0u64, |acc, y| acc | comps.cols[y]) & !(1 << x)
            })
            .collect();
        Self {
            g,
            comps,
            aux,
            n: g.nx(),
        }
    }

    fn run(&self) -> Option<(u64, usize)> {
        if self.g.order() == 0 {
            return None;
        }
        (0..self.n).find_map(|k| self.branch(0, 0, 0, k, k.max(1) + 1))
    }

    fn branch(&self, set: u64, size: usize, next: usize, k: usize, need: usize) -> Option<(u64, usize)> {
        if size == k {
            let c = self.comps.count(set, 0);
            return (c >= need).then_some((set, c));
        }
        let remaining = k - size;
        let choosable = low_bits(self.n) & !low_bits(next);
        let reachable = |nb: u64| {
            let rest = nb & !set;
            rest & !choosable == 0 && rest.count_ones() as usize <= remaining
        };
        let isolated_ub = self.comps.cols.iter().filter(|&&nb| reachable(nb)).count();
        let singles_ub = bits(low_bits(self.n) & !set)
            .filter(|&x| reachable(self.aux[x]))
            .count();
        if isolated_ub + (self.n - k + singles_ub) / 2 < need {
            return None;
        }
        (next..=self.n - remaining)
            .find_map(|i| self.branch(set | 1 << i, size + 1, i + 1, k, need))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::Vertex;

    fn c6() -> BipartiteGraph {
        BipartiteGraph::from_edges(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn component_counts() {
        let k33 = BipartiteGraph::complete(3, 3).unwrap();
        assert_eq!(count_components(&k33, &VertexSet::from_x_mask(1)), 1);
        let gnn = BipartiteGraph::extremal(5).unwrap();
        assert_eq!(count_components(&gnn, &VertexSet::from_x_mask(0b1111)), 4);
        assert_eq!(count_components(&c6(), &VertexSet::from_x_mask(0b11)), 2);
        assert_eq!(count_components(&BipartiteGraph::empty(2, 3).unwrap(), &VertexSet::default()), 5);
    }

    #[test]
    fn c6_toughness_witness() {
        let w = bipartite_toughness(&c6()).unwrap();
        assert_eq!(w.ratio(), Ratio::from_integer(1));
        assert_eq!(w.set, [Vertex::x(0), Vertex::x(1)].into_iter().collect());
        assert_eq!(w.components, 2);
        assert!(w.holds_in(&c6()));
    }

    #[test]
    fn complete_graph_is_outside_the_definition() {
        let k33 = BipartiteGraph::complete(3, 3).unwrap();
        assert_eq!(bipartite_toughness(&k33), Err(ToughnessError::CompleteGraph));
        assert!(is_one_tough(&k33).unwrap().tough);
    }

    #[test]
    fn small_violation() {
        let g = BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        let r = is_one_tough(&g).unwrap();
        assert!(!r.tough);
        let w = r.violation.unwrap();
        assert_eq!(w.set, VertexSet::from_x_mask(1));
        assert_eq!(w.components, 2);
    }

    #[test]
    fn disconnected_graph_has_zero_toughness() {
        let k22 = BipartiteGraph::complete(2, 2).unwrap();
        let g = k22.disjoint_union(&k22).unwrap();
        let w = bipartite_toughness(&g).unwrap();
        assert_eq!(w.ratio(), Ratio::from_integer(0));
        assert!(w.set.is_empty());
        let r = is_one_tough(&g).unwrap();
        assert!(!r.tough);
        assert!(r.violation.unwrap().set.is_empty());
    }

    #[test]
    fn extremal_family_is_one_tough() {
        for n in [5, 8, 16] {
            let g = BipartiteGraph::extremal(n).unwrap();
            assert!(is_one_tough(&g).unwrap().tough, "n = {n}");
        }
        let w = bipartite_toughness(&BipartiteGraph::extremal(5).unwrap()).unwrap();
        assert_eq!(w.ratio(), Ratio::from_integer(1));
    }

    #[test]
    fn limits_enforced() {
        let g = BipartiteGraph::extremal(25).unwrap();
        assert_eq!(
            is_one_tough(&g),
            Err(ToughnessError::TooLarge { size: 25, limit: 24 })
        );
        let relaxed = ToughnessLimits { max_part: 25 };
        assert!(is_one_tough_with(&g, relaxed).unwrap().tough);
    }
}
