//! Bipartite closure: repeatedly join non-adjacent `x ∈ X`, `y ∈ Y` with
//! `d(x) + d(y) >= n + 1` until no such pair remains.

use std::collections::VecDeque;

use super::{require_balanced, HamiltonCycle, HamiltonError};
use crate::bigraph::{bits, low_bits, BipartiteGraph, Part, Vertex};

/// Edges added by the closure, in the order they were added.
pub type ClosureLog = Vec<(usize, usize)>;

pub fn bipartite_closure(g: &BipartiteGraph) -> Result<BipartiteGraph, HamiltonError> {
    bipartite_closure_logged(g).map(|(h, _)| h)
}

/// Closure plus the sequence of added edges. Each logged edge met the degree
/// condition in the graph built from `g` and the edges logged before it.
pub fn bipartite_closure_logged(
    g: &BipartiteGraph,
) -> Result<(BipartiteGraph, ClosureLog), HamiltonError> {
    let n = require_balanced(g)?;
    let mut h = g.clone();
    let mut dx = h.x_degrees();
    let mut dy = h.y_degrees();
    let mut cols = h.y_rows();
    let all = low_bits(n);
    let mut queue = VecDeque::new();
    for (x, &d) in dx.iter().enumerate() {
        for y in bits(all & !h.x_neighbors(x)) {
            if d + dy[y] > n {
                queue.push_back((x, y));
            }
        }
    }
    let mut log = Vec::new();
    // Degrees only grow, so a queued pair stays eligible until joined.
    while let Some((x, y)) = queue.pop_front() {
        if h.has_edge(x, y) {
            continue;
        }
        h.insert_edge(x, y);
        cols[y] |= 1 << x;
        dx[x] += 1;
        dy[y] += 1;
        log.push((x, y));
        for y2 in bits(all & !h.x_neighbors(x)) {
            if dx[x] + dy[y2] > n {
                queue.push_back((x, y2));
            }
        }
        for x2 in bits(all & !cols[y]) {
            if dx[x2] + dy[y] > n {
                queue.push_back((x2, y));
            }
        }
    }
    Ok((h, log))
}

/// Transfers a Hamilton cycle of the closure back to `g`.
///
/// Undoes the logged additions last-first. When the cycle uses the edge `xy`
/// being removed, it becomes a Hamilton path `x = p1 ... p2n = y`; because
/// `d(x) + d(y) >= n + 1` at the time `xy` was added, some `j` has
/// `p1 ~ p(j+1)` and `pj ~ p2n`, and the cycle is re-closed as
/// `p1 p(j+1) ... p2n pj ... p2`.
pub fn lift_cycle(
    g: &BipartiteGraph,
    log: &ClosureLog,
    cycle: &HamiltonCycle,
) -> Result<HamiltonCycle, HamiltonError> {
    let mut h = g.clone();
    for &(x, y) in log {
        h.insert_edge(x, y);
    }
    cycle.verify(&h)?;
    let mut order = cycle.order.clone();
    for &(x, y) in log.iter().rev() {
        h.remove_edge(x, y);
        let (vx, vy) = (Vertex::x(x), Vertex::y(y));
        let m = order.len();
        let Some(p) = (0..m).find(|&i| {
            let (a, b) = (order[i], order[(i + 1) % m]);
            (a == vx && b == vy) || (a == vy && b == vx)
        }) else {
            continue;
        };
        let path: Vec<Vertex> = if order[p] == vx {
            (0..m).map(|k| order[(p + m - k) % m]).collect()
        } else {
            (0..m).map(|k| order[(p + 1 + k) % m]).collect()
        };
        debug_assert!(path[0] == vx && path[m - 1] == vy);
        let j = (1..m - 1)
            .find(|&j| h.adjacent(path[0], path[j + 1]) && h.adjacent(path[j], path[m - 1]))
            .ok_or_else(|| {
                HamiltonError::Precondition(format!(
                    "no rotation removes {vx}{vy}; the log is not a closure sequence"
                ))
            })?;
        order = std::iter::once(path[0])
            .chain(path[j + 1..].iter().copied())
            .chain(path[1..=j].iter().rev().copied())
            .collect();
    }
    let start = order
        .iter()
        .position(|v| v.part == Part::X && v.index == 0)
        .unwrap_or(0);
    order.rotate_left(start);
    let lifted = HamiltonCycle::new(order);
    lifted.verify(g)?;
    Ok(lifted)
}
