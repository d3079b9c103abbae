use super::{require_balanced, HamiltonError};
use crate::bigraph::{low_bits, BipartiteGraph};

/// Structural test for `G ≅ G_{n,n}` in either part orientation.
///
/// One part must contain exactly three degree-2 vertices sharing one common
/// neighbour, with pairwise-distinct second neighbours, and the other part
/// must be completely joined to the rest of that part.
pub fn recognize_gnn(g: &BipartiteGraph) -> Result<bool, HamiltonError> {
    let n = require_balanced(g)?;
    if n < 5 {
        return Err(HamiltonError::TooSmall(n));
    }
    Ok(oriented(g) || oriented(&g.transpose()))
}

/// Checks the shape with the degree-2 vertices in `Y`.
fn oriented(g: &BipartiteGraph) -> bool {
    let cols = g.y_rows();
    let low: Vec<usize> = (0..g.ny())
        .filter(|&y| cols[y].count_ones() == 2)
        .collect();
    let [a, b, c] = low[..] else {
        return false;
    };
    let common = cols[a] & cols[b] & cols[c];
    if common.count_ones() != 1 {
        return false;
    }
    let seconds = [a, b, c].map(|y| cols[y] & !common);
    if seconds.iter().any(|m| m.count_ones() != 1)
        || (seconds[0] | seconds[1] | seconds[2]).count_ones() != 3
    {
        return false;
    }
    let rest = low_bits(g.ny()) & !(1 << a | 1 << b | 1 << c);
    g.x_rows().iter().all(|&row| row & rest == rest)
}
