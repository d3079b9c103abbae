//! 2-factors as a degree-constrained subgraph problem.
//!
//! Network: source -> each `X`-vertex (capacity 2), each edge `x -> y`
//! (capacity 1), each `Y`-vertex -> sink (capacity 2). A 2-factor exists iff
//! the maximum flow is `2n`, and the saturated middle arcs form it.

use std::collections::VecDeque;

use super::{require_balanced, HamiltonError, TwoFactor};
use crate::bigraph::BipartiteGraph;

struct Arc {
    to: usize,
    cap: u32,
}

/// Residual network with arcs stored in forward/backward pairs.
struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Edmonds-Karp; capacities here are tiny, so each augmentation is one
    /// unit.
    fn max_flow(&mut self, source: usize, sink: usize) -> u32 {
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; self.out.len()];
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            while let Some(v) = queue.pop_front() {
                for &id in &self.out[v] {
                    let Arc { to, cap } = self.arcs[id];
                    if cap > 0 && to != source && via[to] == usize::MAX {
                        via[to] = id;
                        if to == sink {
                            reached = true;
                            break;
                        }
                        queue.push_back(to);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                return total;
            }
            let mut bottleneck = u32::MAX;
            let mut v = sink;
            while v != source {
                let id = via[v];
                bottleneck = bottleneck.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let id = via[v];
                self.arcs[id].cap -= bottleneck;
                self.arcs[id ^ 1].cap += bottleneck;
                v = self.arcs[id ^ 1].to;
            }
            total += bottleneck;
        }
    }
}

pub fn find_two_factor(g: &BipartiteGraph) -> Result<Option<TwoFactor>, HamiltonError> {
    let n = require_balanced(g)?;
    if n == 0 {
        return Ok(Some(TwoFactor { edges: Vec::new() }));
    }
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut net = FlowNetwork::new(2 * n + 2);
    for x in 0..n {
        net.add_arc(source, x, 2);
    }
    for y in 0..n {
        net.add_arc(n + y, sink, 2);
    }
    let middle: Vec<((usize, usize), usize)> = g
        .edges()
        .map(|(x, y)| ((x, y), net.add_arc(x, n + y, 1)))
        .collect();
    if net.max_flow(source, sink) as usize != 2 * n {
        return Ok(None);
    }
    let edges = middle
        .into_iter()
        .filter(|&(_, id)| net.arcs[id].cap == 0)
        .map(|(e, _)| e)
        .collect();
    let factor = TwoFactor { edges };
    debug_assert!(factor.verify(g).is_ok());
    Ok(Some(factor))
}
