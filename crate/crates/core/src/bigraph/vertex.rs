use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Part {
    X,
    Y,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::X => Part::Y,
            Part::Y => Part::X,
        }
    }
}

/// A vertex named by its part and 0-based position within the part.
///
/// Ordering puts every `X`-vertex before every `Y`-vertex. `Display` uses the
/// conventional 1-based labels `u1, u2, ...` for `X` and `v1, v2, ...` for `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub part: Part,
    pub index: usize,
}

impl Vertex {
    pub const fn x(index: usize) -> Self {
        Self {
            part: Part::X,
            index,
        }
    }

    pub const fn y(index: usize) -> Self {
        Self {
            part: Part::Y,
            index,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Part::X => write!(f, "u{}", self.index + 1),
            Part::Y => write!(f, "v{}", self.index + 1),
        }
    }
}

/// A set of vertices, one mask per part.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    pub x: u64,
    pub y: u64,
}

impl VertexSet {
    pub fn from_x_mask(x: u64) -> Self {
        Self { x, y: 0 }
    }

    pub fn from_y_mask(y: u64) -> Self {
        Self { x: 0, y }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v.part {
            Part::X => self.contains_x(v.index),
            Part::Y => self.contains_y(v.index),
        }
    }

    #[inline]
    pub fn contains_x(&self, i: usize) -> bool {
        i < 64 && self.x >> i & 1 == 1
    }

    #[inline]
    pub fn contains_y(&self, i: usize) -> bool {
        i < 64 && self.y >> i & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        match v.part {
            Part::X => self.x |= 1 << v.index,
            Part::Y => self.y |= 1 << v.index,
        }
    }

    pub fn len(&self) -> usize {
        (self.x.count_ones() + self.y.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            x: self.x | other.x,
            y: self.y | other.y,
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.x & other.x == 0 && self.y & other.y == 0
    }

    /// Members in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> {
        bits(self.x)
            .map(Vertex::x)
            .chain(bits(self.y).map(Vertex::y))
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut set = Self::default();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}
