//! Good linear forests and the Hamilton cycles they force.
//!
//! In a balanced graph where `X` is completely joined to `Y` minus a small
//! designated set `D`, any family of disjoint `X`-ended paths whose `Y`-vertices
//! are exactly `D` extends to a Hamilton cycle: list the paths, separate
//! consecutive paths by a fresh `Y`-vertex outside `D`, then alternate the
//! unused `X`-vertices with the remaining `Y`-vertices and close up.

use std::collections::HashSet;

use super::{require_balanced, verify_path_system, GoodLinearForest, HamiltonCycle, HamiltonError};
use crate::bigraph::{bits, low_bits, BipartiteGraph, Vertex};

/// Searches path systems over the three designated `Y`-vertices `special`.
///
/// Structures are tried with one path first, then two, then three; within a
/// structure the designated vertices are permuted in lexicographic order and
/// `X`-vertices are assigned lowest index first. The first success is
/// returned.
pub fn find_good_linear_forest(
    h: &BipartiteGraph,
    special: &[usize],
) -> Result<Option<GoodLinearForest>, HamiltonError> {
    require_balanced(h)?;
    let special: [usize; 3] = special
        .try_into()
        .map_err(|_| HamiltonError::SpecialSetSize(special.len()))?;
    if let Some(&y) = special.iter().find(|&&y| y >= h.ny()) {
        return Err(HamiltonError::Precondition(format!(
            "{} is not in the graph",
            Vertex::y(y)
        )));
    }
    if special[0] == special[1] || special[0] == special[2] || special[1] == special[2] {
        return Err(HamiltonError::Precondition("designated vertices repeat".into()));
    }
    Ok(find_path_system(h, &special).map(|paths| GoodLinearForest { paths, special }))
}

/// Path-system search for a designated set of any size.
pub(crate) fn find_path_system(h: &BipartiteGraph, special: &[usize]) -> Option<Vec<Vec<Vertex>>> {
    let k = special.len();
    let cols: Vec<u64> = special.iter().map(|&y| h.y_neighbors(y)).collect();
    let mut tried = HashSet::new();
    for blocks in 1..=k {
        for perm in permutations(k) {
            for cuts in cut_sets(k, blocks) {
                let structure = split(&perm, &cuts);
                if !tried.insert(canonical(&structure)) {
                    continue;
                }
                if let Some(xs) = assign(&structure, &cols) {
                    return Some(build(&structure, &xs, special));
                }
            }
        }
    }
    None
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            prefix.push(v);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), &mut out);
    out
}

/// Increasing cut positions in `1..k`, `blocks - 1` of them, lexicographic.
fn cut_sets(k: usize, blocks: usize) -> Vec<Vec<usize>> {
    fn rec(from: usize, k: usize, need: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        for c in from..k {
            cur.push(c);
            rec(c + 1, k, need - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k, blocks - 1, &mut Vec::new(), &mut out);
    out
}

fn split(perm: &[usize], cuts: &[usize]) -> Vec<Vec<usize>> {
    let mut bounds = vec![0];
    bounds.extend_from_slice(cuts);
    bounds.push(perm.len());
    bounds.windows(2).map(|w| perm[w[0]..w[1]].to_vec()).collect()
}

fn canonical(structure: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = structure
        .iter()
        .map(|b| {
            let rev: Vec<usize> = b.iter().rev().copied().collect();
            b.clone().min(rev)
        })
        .collect();
    blocks.sort();
    blocks
}

/// Chooses distinct `X`-vertices for every slot: a block `s1..sr` needs
/// `x0 ~ s1`, `xi ~ si, s(i+1)`, `xr ~ sr`.
fn assign(structure: &[Vec<usize>], cols: &[u64]) -> Option<Vec<usize>> {
    let slots: Vec<u64> = structure
        .iter()
        .flat_map(|block| {
            let r = block.len();
            (0..=r).map(move |i| match i {
                0 => cols[block[0]],
                i if i == r => cols[block[r - 1]],
                i => cols[block[i - 1]] & cols[block[i]],
            })
        })
        .collect();
    fn rec(slots: &[u64], used: u64, picked: &mut Vec<usize>) -> bool {
        let Some((&first, rest)) = slots.split_first() else {
            return true;
        };
        for x in bits(first & !used) {
            picked.push(x);
            if rec(rest, used | 1 << x, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    let mut picked = Vec::with_capacity(slots.len());
    rec(&slots, 0, &mut picked).then_some(picked)
}

fn build(structure: &[Vec<usize>], xs: &[usize], special: &[usize]) -> Vec<Vec<Vertex>> {
    let mut xs = xs.iter();
    structure
        .iter()
        .map(|block| {
            let mut path = vec![Vertex::x(*xs.next().expect("slot count"))];
            for &s in block {
                path.push(Vertex::y(special[s]));
                path.push(Vertex::x(*xs.next().expect("slot count")));
            }
            path
        })
        .collect()
}

/// Checks that every `X`-vertex is joined to every `Y`-vertex outside
/// `special`.
fn require_complete_outside(h: &BipartiteGraph, special: &[usize]) -> Result<(), HamiltonError> {
    let special_mask = special.iter().fold(0u64, |acc, &y| acc | 1 << y);
    let rest = low_bits(h.ny()) & !special_mask;
    match (0..h.nx()).find(|&x| h.x_neighbors(x) & rest != rest) {
        Some(x) => Err(HamiltonError::Precondition(format!(
            "{} is not joined to every non-designated Y-vertex",
            Vertex::x(x)
        ))),
        None => Ok(()),
    }
}

/// Threads a path system into a Hamilton cycle, using the lowest-index unused
/// `Y`-vertices as connectors and sweeping the leftover `X`-vertices in index
/// order.
pub fn thread_paths(
    h: &BipartiteGraph,
    paths: &[Vec<Vertex>],
    special: &[usize],
) -> Result<HamiltonCycle, HamiltonError> {
    let n = require_balanced(h)?;
    verify_path_system(h, paths, special)?;
    require_complete_outside(h, special)?;

    let special_mask = special.iter().fold(0u64, |acc, &y| acc | 1 << y);
    let path_x = paths
        .iter()
        .flatten()
        .filter(|v| v.part == crate::bigraph::Part::X)
        .fold(0u64, |acc, v| acc | 1 << v.index);
    let mut connectors = bits(low_bits(n) & !special_mask);
    let leftover = bits(low_bits(n) & !path_x);

    let mut order = Vec::with_capacity(2 * n);
    let short = || HamiltonError::Precondition("not enough connector vertices".into());
    for path in paths {
        order.extend_from_slice(path);
        order.push(Vertex::y(connectors.next().ok_or_else(short)?));
    }
    for x in leftover {
        order.push(Vertex::x(x));
        order.push(Vertex::y(connectors.next().ok_or_else(short)?));
    }
    if connectors.next().is_some() {
        return Err(HamiltonError::Precondition("connector vertices left over".into()));
    }
    let cycle = HamiltonCycle::new(order);
    cycle.verify(h)?;
    Ok(cycle)
}

/// The Hamilton cycle forced by a good linear forest when the rest of the
/// graph is complete bipartite.
pub fn forest_to_hamilton(
    h: &BipartiteGraph,
    forest: &GoodLinearForest,
) -> Result<HamiltonCycle, HamiltonError> {
    forest.verify(h)?;
    thread_paths(h, &forest.paths, &forest.special)
}
