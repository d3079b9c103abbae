//! Exact Hamilton-cycle search by backtracking.
//!
//! The path grows from `x0`, always trying the lowest-index admissible
//! neighbour first. At each node the remainder is checked for:
//!
//! - every unvisited vertex keeping two usable neighbours (unvisited vertices
//!   plus the two path ends);
//! - degree-2 vertices that are forced next to a path end, which either fixes
//!   the next step or, if more than one end slot is claimed, kills the branch;
//! - connectivity of the unvisited vertices together with both path ends.
//!
//! Candidates whose neighbourhoods agree on the remaining vertices are
//! swapped by an automorphism fixing the path, so only one of them is tried.

use super::closure::{bipartite_closure_logged, lift_cycle};
use super::{require_balanced, HamiltonCycle, HamiltonError};
use crate::bigraph::{bits, low_bits, BipartiteGraph, Part, Vertex};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Search the input graph itself.
    #[default]
    Direct,
    /// Search the bipartite closure, then lift the cycle back to the input.
    ClosureLift,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HamiltonOptions {
    pub strategy: Strategy,
    /// Maximum number of search nodes; `None` is unbounded.
    pub step_budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonSearch {
    pub cycle: Option<HamiltonCycle>,
    pub steps: u64,
}

/// A Hamilton cycle of `g`, if one exists. Graphs with `n < 2` have none.
pub fn find_hamilton_cycle(g: &BipartiteGraph) -> Result<Option<HamiltonCycle>, HamiltonError> {
    find_hamilton_cycle_with(g, HamiltonOptions::default()).map(|s| s.cycle)
}

pub fn find_hamilton_cycle_with(
    g: &BipartiteGraph,
    opts: HamiltonOptions,
) -> Result<HamiltonSearch, HamiltonError> {
    require_balanced(g)?;
    match opts.strategy {
        Strategy::Direct => search(g, opts.step_budget),
        Strategy::ClosureLift => {
            let (h, log) = bipartite_closure_logged(g)?;
            let found = search(&h, opts.step_budget)?;
            let cycle = found
                .cycle
                .map(|c| lift_cycle(g, &log, &c))
                .transpose()?;
            Ok(HamiltonSearch {
                cycle,
                steps: found.steps,
            })
        }
    }
}

fn search(g: &BipartiteGraph, budget: Option<u64>) -> Result<HamiltonSearch, HamiltonError> {
    let n = g.nx();
    if n < 2 || g.min_degree().unwrap_or(0) < 2 {
        return Ok(HamiltonSearch {
            cycle: None,
            steps: 0,
        });
    }
    let mut s = Searcher {
        n,
        xadj: g.x_rows().to_vec(),
        yadj: g.y_rows(),
        path: Vec::with_capacity(2 * n),
        unvisited_x: low_bits(n) & !1,
        unvisited_y: low_bits(n),
        steps: 0,
        budget: budget.unwrap_or(u64::MAX),
    };
    s.path.push(Vertex::x(0));
    let found = s.extend()?;
    let cycle = found.then(|| HamiltonCycle::new(s.path.clone()));
    if let Some(c) = &cycle {
        debug_assert!(c.verify(g).is_ok());
    }
    Ok(HamiltonSearch {
        cycle,
        steps: s.steps,
    })
}

struct Searcher {
    n: usize,
    xadj: Vec<u64>,
    yadj: Vec<u64>,
    path: Vec<Vertex>,
    unvisited_x: u64,
    unvisited_y: u64,
    steps: u64,
    budget: u64,
}

enum Next {
    Dead,
    Forced(Vertex),
    Free,
}

impl Searcher {
    fn extend(&mut self) -> Result<bool, HamiltonError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(HamiltonError::BudgetExhausted(self.budget));
        }
        let end = *self.path.last().expect("path starts non-empty");
        if self.unvisited_x | self.unvisited_y == 0 {
            return Ok(end.part == Part::Y && self.yadj[end.index] & 1 == 1);
        }
        let candidates = match self.assess(end) {
            Next::Dead => return Ok(false),
            Next::Forced(v) => {
                if end.part == v.part || !self.adjacent(end, v) {
                    return Ok(false);
                }
                v_mask(v)
            }
            Next::Free => match end.part {
                Part::X => (0, self.xadj[end.index] & self.unvisited_y),
                Part::Y => (self.yadj[end.index] & self.unvisited_x, 0),
            },
        };
        // Candidates with the same neighbourhood among the remaining vertices
        // are interchangeable, so one per class is enough.
        let (reach_x, reach_y) = match end.part {
            Part::X => (self.unvisited_x | 1 | 1 << end.index, self.unvisited_y),
            Part::Y => (self.unvisited_x | 1, self.unvisited_y | 1 << end.index),
        };
        let mut tried = Vec::new();
        for x in bits(candidates.0) {
            let class = self.xadj[x] & reach_y;
            if tried.contains(&class) {
                continue;
            }
            tried.push(class);
            self.unvisited_x &= !(1 << x);
            self.path.push(Vertex::x(x));
            if self.extend()? {
                return Ok(true);
            }
            self.path.pop();
            self.unvisited_x |= 1 << x;
        }
        for y in bits(candidates.1) {
            let class = self.yadj[y] & reach_x;
            if tried.contains(&class) {
                continue;
            }
            tried.push(class);
            self.unvisited_y &= !(1 << y);
            self.path.push(Vertex::y(y));
            if self.extend()? {
                return Ok(true);
            }
            self.path.pop();
            self.unvisited_y |= 1 << y;
        }
        Ok(false)
    }

    fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        match a.part {
            Part::X => self.xadj[a.index] >> b.index & 1 == 1,
            Part::Y => self.yadj[a.index] >> b.index & 1 == 1,
        }
    }

    fn assess(&self, end: Vertex) -> Next {
        let (ux, uy) = (self.unvisited_x, self.unvisited_y);
        let fresh = self.path.len() == 1;
        // Path ends as masks; the start is always x0.
        let (mut ex, mut ey) = (1u64, 0u64);
        match end.part {
            Part::X => ex |= 1 << end.index,
            Part::Y => ey |= 1 << end.index,
        }
        let remaining = (ux.count_ones() + uy.count_ones()) as usize;
        let mut at_end = 0;
        let mut at_start = 0;
        let mut forced = None;

        for x in bits(ux) {
            let avail = self.xadj[x] & (uy | ey);
            match avail.count_ones() {
                0 | 1 => return Next::Dead,
                2 if end.part == Part::Y && avail >> end.index & 1 == 1 => {
                    at_end += 1;
                    forced = Some(Vertex::x(x));
                }
                _ => {}
            }
        }
        for y in bits(uy) {
            let avail = self.yadj[y] & (ux | ex);
            match avail.count_ones() {
                0 | 1 => return Next::Dead,
                2 => {
                    let touches_start = avail & 1 == 1;
                    let touches_end = end.part == Part::X && avail >> end.index & 1 == 1;
                    if fresh {
                        at_start += usize::from(touches_start);
                    } else {
                        if touches_start && touches_end && remaining > 1 {
                            return Next::Dead;
                        }
                        at_start += usize::from(touches_start);
                        if touches_end {
                            at_end += 1;
                            forced = Some(Vertex::y(y));
                        }
                    }
                }
                _ => {}
            }
        }
        if fresh {
            if at_start > 2 {
                return Next::Dead;
            }
        } else if at_end > 1 || at_start > 1 {
            return Next::Dead;
        }

        if !self.remainder_connected(end) {
            return Next::Dead;
        }
        match forced {
            Some(v) if !fresh => Next::Forced(v),
            _ => Next::Free,
        }
    }

    /// Unvisited vertices plus both path ends must form one component.
    fn remainder_connected(&self, end: Vertex) -> bool {
        let (ux, uy) = (self.unvisited_x, self.unvisited_y);
        let allowed_x = ux | 1 | if end.part == Part::X { 1 << end.index } else { 0 };
        let allowed_y = uy | if end.part == Part::Y { 1 << end.index } else { 0 };
        let (mut rx, mut ry) = match end.part {
            Part::X => (1u64 << end.index, 0u64),
            Part::Y => (0, 1u64 << end.index),
        };
        let (mut fx, mut fy) = (rx, ry);
        while fx | fy != 0 {
            let ny = bits(fx).fold(0, |a, x| a | self.xadj[x]) & allowed_y & !ry;
            let nx = bits(fy).fold(0, |a, y| a | self.yadj[y]) & allowed_x & !rx;
            rx |= nx;
            ry |= ny;
            fx = nx;
            fy = ny;
        }
        rx & allowed_x == allowed_x && ry & allowed_y == allowed_y && self.n > 0
    }
}

fn v_mask(v: Vertex) -> (u64, u64) {
    match v.part {
        Part::X => (1 << v.index, 0),
        Part::Y => (0, 1 << v.index),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle() {
        let c = find_hamilton_cycle(&BipartiteGraph::complete(2, 2).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(
            c.order,
            vec![Vertex::x(0), Vertex::y(0), Vertex::x(1), Vertex::y(1)]
        );
    }

    #[test]
    fn extremal_has_none() {
        for n in [5, 6, 10, 24] {
            let g = BipartiteGraph::extremal(n).unwrap();
            assert_eq!(find_hamilton_cycle(&g).unwrap(), None, "n = {n}");
        }
    }

    #[test]
    fn two_disjoint_squares() {
        let k22 = BipartiteGraph::complete(2, 2).unwrap();
        let g = k22.disjoint_union(&k22).unwrap();
        assert_eq!(find_hamilton_cycle(&g).unwrap(), None);
    }

    #[test]
    fn complete_graphs_found_by_both_strategies() {
        for n in 2..8 {
            let g = BipartiteGraph::complete(n, n).unwrap();
            for strategy in [Strategy::Direct, Strategy::ClosureLift] {
                let found = find_hamilton_cycle_with(
                    &g,
                    HamiltonOptions {
                        strategy,
                        step_budget: None,
                    },
                )
                .unwrap();
                found.cycle.unwrap().verify(&g).unwrap();
            }
        }
    }

    #[test]
    fn closure_lift_on_sparse_graph() {
        // C_8 plus a chord: closure adds edges, and the lifted cycle must use
        // only original edges.
        let g = BipartiteGraph::from_edges(
            4,
            4,
            [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (0, 3), (0, 1)],
        )
        .unwrap();
        let found = find_hamilton_cycle_with(
            &g,
            HamiltonOptions {
                strategy: Strategy::ClosureLift,
                step_budget: None,
            },
        )
        .unwrap();
        found.cycle.unwrap().verify(&g).unwrap();
    }

    #[test]
    fn budget_is_enforced() {
        let g = BipartiteGraph::complete(8, 8).unwrap();
        let err = find_hamilton_cycle_with(
            &g,
            HamiltonOptions {
                strategy: Strategy::Direct,
                step_budget: Some(3),
            },
        )
        .unwrap_err();
        assert_eq!(err, HamiltonError::BudgetExhausted(3));
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(find_hamilton_cycle(&BipartiteGraph::complete(1, 1).unwrap()).unwrap(), None);
        assert!(matches!(
            find_hamilton_cycle(&BipartiteGraph::complete(1, 2).unwrap()),
            Err(HamiltonError::Unbalanced { .. })
        ));
    }
}
