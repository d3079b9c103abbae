//! Independent reference implementations used to cross-check the library.
//!
//! Each oracle works from `edges()` / `has_edge()` only and shares no code
//! with the routine it checks.

#![allow(dead_code)]

use bihamilton::BipartiteGraph;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

/// Dense symmetric adjacency matrix on `nx + ny` vertices, `X` first.
pub fn adjacency(g: &BipartiteGraph) -> Vec<Vec<f64>> {
    let m = g.nx() + g.ny();
    let mut a = vec![vec![0.0; m]; m];
    for (x, y) in g.edges() {
        a[x][g.nx() + y] = 1.0;
        a[g.nx() + y][x] = 1.0;
    }
    a
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let m = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (rp, rq) = (a[p].clone(), a[q].clone());
                for k in 0..m {
                    a[p][k] = c * rp[k] - s * rq[k];
                    a[q][k] = s * rp[k] + c * rq[k];
                }
            }
        }
    }
    (0..m).map(|i| a[i][i]).collect()
}

/// `ρ(G)` as the largest eigenvalue of the dense adjacency matrix.
pub fn jacobi_rho(g: &BipartiteGraph) -> f64 {
    jacobi_eigenvalues(adjacency(g))
        .into_iter()
        .fold(0.0, f64::max)
}

/// Hamiltonicity by Held-Karp dynamic programming over vertex subsets.
pub fn held_karp(g: &BipartiteGraph) -> bool {
    let n = g.nx();
    assert_eq!(n, g.ny());
    let m = 2 * n;
    assert!(m <= 20, "oracle limited to 20 vertices");
    if n < 2 {
        return false;
    }
    let adj = |a: usize, b: usize| -> bool {
        match (a < n, b < n) {
            (true, false) => g.has_edge(a, b - n),
            (false, true) => g.has_edge(b, a - n),
            _ => false,
        }
    };
    // reach[mask] = set of end vertices of paths from vertex 0 covering mask.
    let mut reach = vec![0u32; 1 << m];
    reach[1] = 1;
    for mask in 1usize..1 << m {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        for v in 0..m {
            if reach[mask] >> v & 1 == 0 {
                continue;
            }
            for w in 0..m {
                if mask >> w & 1 == 0 && adj(v, w) {
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    let full = (1usize << m) - 1;
    (0..m).any(|v| reach[full] >> v & 1 == 1 && adj(v, 0))
}

/// 2-factor existence: every `X`-vertex picks two neighbours, and every
/// `Y`-vertex must be picked exactly twice.
pub fn brute_two_factor(g: &BipartiteGraph) -> bool {
    let n = g.nx();
    assert_eq!(n, g.ny());
    if n == 0 {
        return true;
    }
    fn go(g: &BipartiteGraph, x: usize, load: &mut Vec<u8>) -> bool {
        let n = g.nx();
        if x == n {
            return load.iter().all(|&l| l == 2);
        }
        let nb: Vec<usize> = (0..n).filter(|&y| g.has_edge(x, y)).collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let (a, b) = (nb[i], nb[j]);
                if load[a] < 2 && load[b] < 2 {
                    load[a] += 1;
                    load[b] += 1;
                    if go(g, x + 1, load) {
                        return true;
                    }
                    load[a] -= 1;
                    load[b] -= 1;
                }
            }
        }
        false
    }
    go(g, 0, &mut vec![0; n])
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Components after deleting the `X`-vertices in `rx` and `Y`-vertices in
/// `ry` (as index lists).
pub fn components_without(g: &BipartiteGraph, rx: &[usize], ry: &[usize]) -> usize {
    let (nx, ny) = (g.nx(), g.ny());
    let mut uf = UnionFind::new(nx + ny);
    for (x, y) in g.edges() {
        if !rx.contains(&x) && !ry.contains(&y) {
            uf.union(x, nx + y);
        }
    }
    let mut roots: Vec<usize> = (0..nx)
        .filter(|x| !rx.contains(x))
        .chain((0..ny).filter(|y| !ry.contains(y)).map(|y| nx + y))
        .map(|v| uf.find(v))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// `t^B(G)` by listing every proper one-sided subset; `None` when no subset
/// disconnects the graph.
pub fn brute_toughness(g: &BipartiteGraph) -> Option<Ratio<usize>> {
    let mut best: Option<Ratio<usize>> = None;
    for (size, is_x) in [(g.nx(), true), (g.ny(), false)] {
        for mask in 0u64..(1 << size) - 1 {
            let set: Vec<usize> = (0..size).filter(|i| mask >> i & 1 == 1).collect();
            let c = if is_x {
                components_without(g, &set, &[])
            } else {
                components_without(g, &[], &set)
            };
            if c > 1 {
                let r = Ratio::new(set.len(), c);
                best = Some(best.map_or(r, |b| b.min(r)));
            }
        }
    }
    best
}

/// Closure by adding one uniformly random eligible pair at a time.
pub fn random_order_closure(g: &BipartiteGraph, rng: &mut impl Rng) -> BipartiteGraph {
    let n = g.nx();
    let mut h = g.clone();
    loop {
        let dx: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| h.has_edge(x, y)).count()).collect();
        let dy: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| h.has_edge(x, y)).count()).collect();
        let eligible: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !h.has_edge(x, y) && dx[x] + dy[y] > n)
            .collect();
        match eligible.choose(rng) {
            Some(&(x, y)) => h = h.with_edge(x, y).unwrap(),
            None => return h,
        }
    }
}

/// Whether some pair of part permutations maps `g` onto `h` (same part
/// sizes, parts kept in place).
pub fn isomorphic(g: &BipartiteGraph, h: &BipartiteGraph) -> bool {
    if (g.nx(), g.ny(), g.edge_count()) != (h.nx(), h.ny(), h.edge_count()) {
        return false;
    }
    let n = g.nx();
    let dg: Vec<usize> = (0..n).map(|x| g.x_degree(x)).collect();
    let dh: Vec<usize> = (0..n).map(|x| h.x_degree(x)).collect();
    // Fix an X bijection by backtracking; Y is then matched by column sets.
    fn go(g: &BipartiteGraph, h: &BipartiteGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = g.nx();
        let x = map.len();
        if x == n {
            let col = |gr: &BipartiteGraph, y: usize, perm: Option<&[usize]>| -> Vec<usize> {
                let mut v: Vec<usize> = (0..n)
                    .filter(|&x| gr.has_edge(x, y))
                    .map(|x| perm.map_or(x, |p| p[x]))
                    .collect();
                v.sort_unstable();
                v
            };
            let mut a: Vec<Vec<usize>> = (0..g.ny()).map(|y| col(g, y, Some(map))).collect();
            let mut b: Vec<Vec<usize>> = (0..h.ny()).map(|y| col(h, y, None)).collect();
            a.sort();
            b.sort();
            return a == b;
        }
        for t in 0..n {
            if !used[t] && g.x_degree(x) == h.x_degree(t) {
                used[t] = true;
                map.push(t);
                if go(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[t] = false;
            }
        }
        false
    }
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    sg == sh && go(g, h, &mut Vec::new(), &mut vec![false; n])
}

/// Random balanced graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::from_edges(n, n, edges).unwrap()
}
