//! Bipartite graphs with explicit parts `X` and `Y`.
//!
//! Adjacency is stored as one 64-bit word per `X`-vertex, bit `j` set when the
//! vertex is joined to `Y`-vertex `j`. `Y`-side adjacency is derived on demand.
//! Both parts are therefore capped at [`MAX_PART`] vertices.

mod codec;
mod vertex;

use std::fmt;

use thiserror::Error;

pub use codec::{
    decode_edge_json, decode_graph6, encode_edge_json, encode_graph6, load_graph,
    load_graph_with_limit, EdgeJson, FormatError, GraphDocument, GraphFormat,
};
pub use vertex::{Part, Vertex, VertexSet};

/// Largest part size representable by the bit-set adjacency.
pub const MAX_PART: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("part size {size} exceeds the limit of {limit}")]
    PartTooLarge { size: usize, limit: usize },
    #[error("vertex {vertex} out of range for parts of size {nx} and {ny}")]
    VertexOutOfRange { vertex: Vertex, nx: usize, ny: usize },
    #[error("edge ({x}, {y}) out of range for parts of size {nx} and {ny}")]
    EdgeOutOfRange { x: usize, y: usize, nx: usize, ny: usize },
    #[error("extremal construction needs n >= 5, got {0}")]
    ExtremalTooSmall(usize),
    #[error("graph is not balanced ({nx} vs {ny})")]
    Unbalanced { nx: usize, ny: usize },
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the indices of set bits, lowest first.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A bipartite graph `G(X, Y)`.
///
/// Vertices are positional: `X = {0..nx}` and `Y = {0..ny}`. Values are
/// immutable once built; the `with_*`/`without_*` methods return fresh graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    nx: usize,
    ny: usize,
    rows: Vec<u64>,
}

impl BipartiteGraph {
    /// Edgeless graph with parts of the given sizes.
    pub fn empty(nx: usize, ny: usize) -> Result<Self, GraphError> {
        for size in [nx, ny] {
            if size > MAX_PART {
                return Err(GraphError::PartTooLarge {
                    size,
                    limit: MAX_PART,
                });
            }
        }
        Ok(Self {
            nx,
            ny,
            rows: vec![0; nx],
        })
    }

    pub fn from_edges(
        nx: usize,
        ny: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(nx, ny)?;
        for (x, y) in edges {
            if x >= nx || y >= ny {
                return Err(GraphError::EdgeOutOfRange { x, y, nx, ny });
            }
            g.rows[x] |= 1 << y;
        }
        Ok(g)
    }

    /// Builds a graph from per-`X` neighbourhood masks. Bits beyond `ny` are
    /// dropped.
    pub fn from_rows(ny: usize, rows: Vec<u64>) -> Result<Self, GraphError> {
        let mut g = Self::empty(rows.len(), ny)?;
        let keep = low_bits(ny);
        for (dst, src) in g.rows.iter_mut().zip(rows) {
            *dst = src & keep;
        }
        Ok(g)
    }

    /// `K_{m,n}`.
    pub fn complete(m: usize, n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(m, n)?;
        g.rows.fill(low_bits(n));
        Ok(g)
    }

    /// The extremal graph `G_{n,n}`: `K_{n,n-3}` on `X` and `Y \ {y0,y1,y2}`,
    /// plus `y0, y1, y2` each joined to `x0` and to `x1, x2, x3` respectively.
    pub fn extremal(n: usize) -> Result<Self, GraphError> {
        if n < 5 {
            return Err(GraphError::ExtremalTooSmall(n));
        }
        let mut g = Self::empty(n, n)?;
        let bulk = low_bits(n) & !0b111;
        g.rows.fill(bulk);
        g.rows[0] |= 0b111;
        for i in 1..=3 {
            g.rows[i] |= 1 << (i - 1);
        }
        Ok(g)
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn part_size(&self, part: Part) -> usize {
        match part {
            Part::X => self.nx,
            Part::Y => self.ny,
        }
    }

    #[inline]
    pub fn is_balanced(&self) -> bool {
        self.nx == self.ny
    }

    /// Half the order, for balanced graphs.
    pub fn balanced_n(&self) -> Result<usize, GraphError> {
        if self.is_balanced() {
            Ok(self.nx)
        } else {
            Err(GraphError::Unbalanced {
                nx: self.nx,
                ny: self.ny,
            })
        }
    }

    pub fn order(&self) -> usize {
        self.nx + self.ny
    }

    /// Neighbourhood of `X`-vertex `x` as a mask over `Y`.
    #[inline]
    pub fn x_neighbors(&self, x: usize) -> u64 {
        self.rows[x]
    }

    /// Neighbourhood of `Y`-vertex `y` as a mask over `X`.
    pub fn y_neighbors(&self, y: usize) -> u64 {
        let bit = 1u64 << y;
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| *r & bit != 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// All `Y`-side neighbourhoods at once.
    pub fn y_rows(&self) -> Vec<u64> {
        let mut cols = vec![0u64; self.ny];
        for (x, &row) in self.rows.iter().enumerate() {
            for y in bits(row) {
                cols[y] |= 1 << x;
            }
        }
        cols
    }

    pub fn x_rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn neighbors(&self, v: Vertex) -> u64 {
        match v.part {
            Part::X => self.rows[v.index],
            Part::Y => self.y_neighbors(v.index),
        }
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.nx && y < self.ny && self.rows[x] >> y & 1 == 1
    }

    /// Adjacency between two vertices in any order; same-part pairs are never
    /// adjacent.
    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        match (a.part, b.part) {
            (Part::X, Part::Y) => self.has_edge(a.index, b.index),
            (Part::Y, Part::X) => self.has_edge(b.index, a.index),
            _ => false,
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count_ones() as usize
    }

    pub fn x_degree(&self, x: usize) -> usize {
        self.rows[x].count_ones() as usize
    }

    pub fn y_degree(&self, y: usize) -> usize {
        self.y_neighbors(y).count_ones() as usize
    }

    pub fn x_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn y_degrees(&self) -> Vec<usize> {
        self.y_rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .collect()
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// `δ(G)`; `None` for the graph with no vertices.
    pub fn min_degree(&self) -> Option<usize> {
        self.x_degrees().into_iter().chain(self.y_degrees()).min()
    }

    /// Edges as `(x, y)` pairs in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &row)| bits(row).map(move |y| (x, y)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let (nx, ny) = (self.nx, self.ny);
        (0..nx).map(Vertex::x).chain((0..ny).map(Vertex::y))
    }

    /// True when every `X`-vertex is joined to every `Y`-vertex.
    pub fn is_complete(&self) -> bool {
        let full = low_bits(self.ny);
        self.rows.iter().all(|&r| r == full)
    }

    pub fn with_edge(&self, x: usize, y: usize) -> Result<Self, GraphError> {
        self.check_edge(x, y)?;
        let mut g = self.clone();
        g.rows[x] |= 1 << y;
        Ok(g)
    }

    pub fn without_edge(&self, x: usize, y: usize) -> Result<Self, GraphError> {
        self.check_edge(x, y)?;
        let mut g = self.clone();
        g.rows[x] &= !(1 << y);
        Ok(g)
    }

    fn check_edge(&self, x: usize, y: usize) -> Result<(), GraphError> {
        if x >= self.nx || y >= self.ny {
            Err(GraphError::EdgeOutOfRange {
                x,
                y,
                nx: self.nx,
                ny: self.ny,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn insert_edge(&mut self, x: usize, y: usize) {
        self.rows[x] |= 1 << y;
    }

    pub(crate) fn remove_edge(&mut self, x: usize, y: usize) {
        self.rows[x] &= !(1 << y);
    }

    /// Swaps the roles of `X` and `Y`.
    pub fn transpose(&self) -> Self {
        Self {
            nx: self.ny,
            ny: self.nx,
            rows: self.y_rows(),
        }
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        let stray_x = set.x & !low_bits(self.nx);
        let stray_y = set.y & !low_bits(self.ny);
        let stray = if stray_x != 0 {
            Some(Vertex::x(stray_x.trailing_zeros() as usize))
        } else if stray_y != 0 {
            Some(Vertex::y(stray_y.trailing_zeros() as usize))
        } else {
            None
        };
        match stray {
            Some(vertex) => Err(GraphError::VertexOutOfRange {
                vertex,
                nx: self.nx,
                ny: self.ny,
            }),
            None => Ok(()),
        }
    }

    /// `G - S`: the subgraph induced on the surviving vertices, re-indexed so
    /// that each part keeps its relative order.
    pub fn delete_vertices(&self, set: &VertexSet) -> Result<Self, GraphError> {
        self.check_set(set)?;
        let keep_y: Vec<usize> = (0..self.ny).filter(|&y| !set.contains_y(y)).collect();
        let rows = (0..self.nx)
            .filter(|&x| !set.contains_x(x))
            .map(|x| {
                keep_y
                    .iter()
                    .enumerate()
                    .filter(|(_, &y)| self.has_edge(x, y))
                    .fold(0u64, |acc, (new, _)| acc | 1 << new)
            })
            .collect();
        Self::from_rows(keep_y.len(), rows)
    }

    /// `e_G(U, W)` for `U ⊆ X` and `W ⊆ Y` given as masks.
    pub fn edges_between(&self, xs: u64, ys: u64) -> usize {
        bits(xs & low_bits(self.nx))
            .map(|x| (self.rows[x] & ys).count_ones() as usize)
            .sum()
    }

    /// Relabels vertices within each part: `x` becomes `px[x]`, `y` becomes
    /// `py[y]`. Both slices must be permutations.
    pub fn permute(&self, px: &[usize], py: &[usize]) -> Self {
        assert_eq!(px.len(), self.nx);
        assert_eq!(py.len(), self.ny);
        let mut rows = vec![0u64; self.nx];
        for (x, y) in self.edges() {
            rows[px[x]] |= 1 << py[y];
        }
        Self {
            nx: self.nx,
            ny: self.ny,
            rows,
        }
    }

    /// Disjoint union, placing `other`'s vertices after this graph's in each
    /// part.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        let mut g = Self::empty(self.nx + other.nx, self.ny + other.ny)?;
        g.rows[..self.nx].copy_from_slice(&self.rows);
        for (i, &row) in other.rows.iter().enumerate() {
            g.rows[self.nx + i] = row << self.ny;
        }
        Ok(g)
    }

    /// Stable 64-bit FNV-1a digest of `(nx, ny, biadjacency)`.
    pub fn digest(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let words = [self.nx as u64, self.ny as u64]
            .into_iter()
            .chain(self.rows.iter().copied());
        let mut h = OFFSET;
        for w in words {
            for b in w.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        }
        h
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph({}x{}; ", self.nx, self.ny)?;
        let mut first = true;
        for (x, y) in self.edges() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{x}-{y}")?;
        }
        f.write_str(")")
    }
}
