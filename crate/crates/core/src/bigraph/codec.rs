//! graph6 and edge-json ingestion and emission.
//!
//! graph6 describes a general graph, so a bipartite graph is flattened onto
//! `nx + ny` vertices with `X` first. Reading it back has to recover the
//! bipartition, which is only unambiguous for connected graphs or when the
//! caller declares the parts.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{BipartiteGraph, GraphError, Part, MAX_PART};

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Graph6,
    EdgeJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge-json: {0}")]
    MalformedJson(String),
    #[error("graph is not bipartite (odd cycle through vertex {0})")]
    NotBipartite(usize),
    #[error("graph has {0} components; declare the parts to fix the bipartition")]
    AmbiguousBipartition(usize),
    #[error("declared parts are invalid: {0}")]
    BadDeclaredParts(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A serialized graph awaiting ingestion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub format: GraphFormat,
    pub payload: Vec<u8>,
    /// One part label per graph6 vertex. Never used with edge-json, whose
    /// payload always names its parts.
    pub declared_parts: Option<Vec<Part>>,
}

impl GraphDocument {
    pub fn graph6(payload: impl Into<Vec<u8>>) -> Self {
        Self {
            format: GraphFormat::Graph6,
            payload: payload.into(),
            declared_parts: None,
        }
    }

    pub fn edge_json(payload: impl Into<Vec<u8>>) -> Self {
        Self {
            format: GraphFormat::EdgeJson,
            payload: payload.into(),
            declared_parts: None,
        }
    }

    pub fn with_parts(mut self, parts: Vec<Part>) -> Self {
        self.declared_parts = Some(parts);
        self
    }

    /// Guesses the format from the first non-blank byte.
    pub fn sniff(payload: impl Into<Vec<u8>>) -> Self {
        let payload = payload.into();
        let first = payload.iter().find(|b| !b.is_ascii_whitespace());
        if first == Some(&b'{') {
            Self::edge_json(payload)
        } else {
            Self::graph6(payload)
        }
    }
}

/// The edge-json wire shape. Extra fields (such as certificate metadata) are
/// ignored on read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub nx: usize,
    pub ny: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&BipartiteGraph> for EdgeJson {
    fn from(g: &BipartiteGraph) -> Self {
        Self {
            nx: g.nx(),
            ny: g.ny(),
            edges: g.edges().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl EdgeJson {
    pub fn to_graph(&self, limit: usize) -> Result<BipartiteGraph, FormatError> {
        check_limit(self.nx, self.ny, limit)?;
        let mut g = BipartiteGraph::empty(self.nx, self.ny)?;
        for &[x, y] in &self.edges {
            if x >= self.nx || y >= self.ny {
                return Err(FormatError::MalformedJson(format!(
                    "edge [{x}, {y}] out of range"
                )));
            }
            if g.has_edge(x, y) {
                return Err(FormatError::MalformedJson(format!(
                    "duplicate edge [{x}, {y}]"
                )));
            }
            g.insert_edge(x, y);
        }
        Ok(g)
    }
}

fn check_limit(nx: usize, ny: usize, limit: usize) -> Result<(), GraphError> {
    let limit = limit.min(MAX_PART);
    for size in [nx, ny] {
        if size > limit {
            return Err(GraphError::PartTooLarge { size, limit });
        }
    }
    Ok(())
}

pub fn encode_edge_json(g: &BipartiteGraph) -> String {
    serde_json::to_string(&EdgeJson::from(g)).expect("edge-json serialization is infallible")
}

pub fn decode_edge_json(payload: &[u8]) -> Result<BipartiteGraph, FormatError> {
    let doc: EdgeJson =
        serde_json::from_slice(payload).map_err(|e| FormatError::MalformedJson(e.to_string()))?;
    doc.to_graph(MAX_PART)
}

/// graph6 encoding of the flattened graph (no header, no trailing newline).
pub fn encode_graph6(g: &BipartiteGraph) -> String {
    let n = g.order();
    let mut out = size_prefix(n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(flat_adjacent(g, i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn flat_adjacent(g: &BipartiteGraph, i: usize, j: usize) -> bool {
    let nx = g.nx();
    // i < j, so only an X-Y pair can be an edge.
    i < nx && j >= nx && g.has_edge(i, j - nx)
}

fn size_prefix(n: usize) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        let mut v = vec![126];
        v.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
        v
    } else {
        let mut v = vec![126, 126];
        v.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
        v
    }
}

/// Parses a graph6 string into `(order, edge list)` of a general graph.
pub(crate) fn parse_graph6(payload: &[u8]) -> Result<(usize, Vec<(usize, usize)>), FormatError> {
    let bad = |m: &str| FormatError::MalformedGraph6(m.to_string());
    let mut data = payload.trim_ascii();
    if let Some(rest) = data.strip_prefix(GRAPH6_HEADER) {
        data = rest;
    }
    if data.is_empty() {
        return Err(bad("empty payload"));
    }
    if let Some(&b) = data.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::MalformedGraph6(format!(
            "byte {b:#04x} outside the printable range"
        )));
    }
    let (n, body) = if data[0] != 126 {
        (usize::from(data[0] - 63), &data[1..])
    } else if data.len() >= 2 && data[1] != 126 {
        if data.len() < 4 {
            return Err(bad("truncated size header"));
        }
        (read_sextets(&data[1..4]), &data[4..])
    } else {
        if data.len() < 8 {
            return Err(bad("truncated size header"));
        }
        (read_sextets(&data[2..8]), &data[8..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::MalformedGraph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok((n, edges))
}

fn read_sextets(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0usize, |acc, &b| acc << 6 | usize::from(b - 63))
}

pub fn decode_graph6(
    payload: &[u8],
    declared: Option<&[Part]>,
) -> Result<BipartiteGraph, FormatError> {
    decode_graph6_with_limit(payload, declared, MAX_PART)
}

fn decode_graph6_with_limit(
    payload: &[u8],
    declared: Option<&[Part]>,
    limit: usize,
) -> Result<BipartiteGraph, FormatError> {
    let (n, edges) = parse_graph6(payload)?;
    if n > 2 * MAX_PART {
        return Err(GraphError::PartTooLarge {
            size: n,
            limit: MAX_PART,
        }
        .into());
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in &edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let parts = match declared {
        Some(parts) => {
            if parts.len() != n {
                return Err(FormatError::BadDeclaredParts(format!(
                    "{} labels for {n} vertices",
                    parts.len()
                )));
            }
            if let Some(&(i, j)) = edges.iter().find(|(i, j)| parts[*i] == parts[*j]) {
                return Err(FormatError::BadDeclaredParts(format!(
                    "edge {i}-{j} lies inside one part"
                )));
            }
            parts.to_vec()
        }
        None => two_colour(&adj)?,
    };

    let mut slot = vec![0usize; n];
    let (mut nx, mut ny) = (0, 0);
    for (v, part) in parts.iter().enumerate() {
        match part {
            Part::X => {
                slot[v] = nx;
                nx += 1;
            }
            Part::Y => {
                slot[v] = ny;
                ny += 1;
            }
        }
    }
    check_limit(nx, ny, limit)?;
    let mut g = BipartiteGraph::empty(nx, ny)?;
    for (i, j) in edges {
        let (x, y) = if parts[i] == Part::X { (i, j) } else { (j, i) };
        g.insert_edge(slot[x], slot[y]);
    }
    Ok(g)
}

/// Breadth-first 2-colouring with vertex 0 in `X`. Fails on odd cycles and on
/// disconnected inputs.
fn two_colour(adj: &[Vec<usize>]) -> Result<Vec<Part>, FormatError> {
    let n = adj.len();
    let mut colour: Vec<Option<Part>> = vec![None; n];
    let mut components = 0;
    let mut first_conflict = None;
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        components += 1;
        colour[root] = Some(Part::X);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let c = colour[v].expect("queued vertices are coloured");
            for &w in &adj[v] {
                match colour[w] {
                    None => {
                        colour[w] = Some(c.other());
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => {
                        first_conflict.get_or_insert(v);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    if let Some(v) = first_conflict {
        return Err(FormatError::NotBipartite(v));
    }
    if components > 1 {
        return Err(FormatError::AmbiguousBipartition(components));
    }
    Ok(colour.into_iter().map(|c| c.expect("all coloured")).collect())
}

pub fn load_graph(doc: &GraphDocument) -> Result<BipartiteGraph, FormatError> {
    load_graph_with_limit(doc, MAX_PART)
}

/// Like [`load_graph`], refusing parts larger than `limit` (itself capped at
/// [`MAX_PART`]).
pub fn load_graph_with_limit(
    doc: &GraphDocument,
    limit: usize,
) -> Result<BipartiteGraph, FormatError> {
    match doc.format {
        GraphFormat::Graph6 => {
            decode_graph6_with_limit(&doc.payload, doc.declared_parts.as_deref(), limit)
        }
        GraphFormat::EdgeJson => {
            if doc.declared_parts.is_some() {
                return Err(FormatError::BadDeclaredParts(
                    "edge-json documents carry their own parts".into(),
                ));
            }
            let parsed: EdgeJson = serde_json::from_slice(&doc.payload)
                .map_err(|e| FormatError::MalformedJson(e.to_string()))?;
            parsed.to_graph(limit)
        }
    }
}
