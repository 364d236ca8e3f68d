//! Simple undirected graphs, edge-weighted orientations, and their text formats.
//!
//! The edge-list format is `n m` on the first line followed by `m` lines
//! `u v` with `0 <= u, v < n` and `u != v`. The orientation format mirrors
//! it with `u v w` lines meaning an arc `u -> v` of weight `w`, one line per
//! edge of the source graph, in the same order.

use std::fmt::Write as _;

use thiserror::Error;

/// Vertex index. Graphs are 0-indexed and dense.
pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge, expected \"u v\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: malformed arc, expected \"u v w\"")]
    MalformedArc { line: usize },
    #[error("line {line}: endpoint {vertex} out of range (n = {vertex_count})")]
    EndpointOutOfRange {
        line: usize,
        vertex: Vertex,
        vertex_count: u32,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: expected {expected} edge lines, found fewer")]
    MissingEdges { line: usize, expected: usize },
    #[error("line {line}: trailing content after the declared edge count")]
    TrailingContent { line: usize },
    #[error("line {line}: arc {u}->{v} does not match edge #{edge} of the graph")]
    ArcEdgeMismatch {
        line: usize,
        u: Vertex,
        v: Vertex,
        edge: usize,
    },
    #[error("line {line}: arc weight must be positive")]
    NonpositiveWeight { line: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// An immutable simple undirected graph.
///
/// Edge identity is the index in the construction edge list, so the
/// orientation of a specific input edge stays addressable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: u32,
    edges: Vec<(Vertex, Vertex)>,
    /// Per-vertex list of `(neighbor, edge index)`.
    adjacency: Vec<Vec<(Vertex, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints. `line` in the reported errors is the 1-based position in
    /// `edges` plus one, matching the text format's line numbering.
    pub fn new(vertex_count: u32, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count as usize];
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 2;
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::EndpointOutOfRange {
                    line,
                    vertex: u.max(v),
                    vertex_count,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            adjacency[u as usize].push((v, i));
            adjacency[v as usize].push((u, i));
        }
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (Vertex, Vertex) {
        self.edges[edge]
    }

    /// Neighbors of `v` with the connecting edge index, in insertion order.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    /// Edge index joining `u` and `v`, if any.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.adjacency[u as usize]
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.vertex_count
    }
}

/// Parses the edge-list format. Vertex count and the edge multiset are kept
/// exactly as given; edge order is file order.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(GraphError::MalformedHeader { line: 1 })?;
    let mut parts = header.split_ascii_whitespace();
    let n: u32 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(GraphError::MalformedHeader { line: 1 })?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(GraphError::MalformedHeader { line: 1 })?;
    if parts.next().is_some() {
        return Err(GraphError::MalformedHeader { line: 1 });
    }

    let mut edges = Vec::with_capacity(m);
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if edges.len() == m {
            return Err(GraphError::TrailingContent { line });
        }
        let mut parts = raw.split_ascii_whitespace();
        let u: Vertex = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(GraphError::MalformedEdge { line })?;
        let v: Vertex = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(GraphError::MalformedEdge { line })?;
        if parts.next().is_some() {
            return Err(GraphError::MalformedEdge { line });
        }
        edges.push((u, v));
    }
    if edges.len() < m {
        return Err(GraphError::MissingEdges {
            line: edges.len() + 2,
            expected: m,
        });
    }
    // Re-validate through the constructor so error line numbers line up.
    Graph::new(n, edges)
}

/// Serializes to the canonical edge-list form: each edge as `min max`,
/// edges sorted lexicographically. `parse_graph` of the output yields the
/// same vertex set and edge multiset.
pub fn serialize_graph(g: &Graph) -> String {
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count, edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Maximum degree of the graph.
pub fn max_degree(g: &Graph) -> Result<u32, GraphError> {
    if g.vertex_count == 0 {
        return Err(GraphError::EmptyGraph);
    }
    Ok(g.adjacency.iter().map(|a| a.len() as u32).max().unwrap_or(0))
}

/// One oriented, weighted edge: `head` is the vertex the arc points to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub head: Vertex,
    pub weight: u32,
}

/// An orientation of a graph together with positive integer edge weights.
///
/// `arcs[i]` orients edge `i` of the source graph. In-weights and the
/// maximum in-weight are derived at construction and kept in sync by
/// immutability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    vertex_count: u32,
    arcs: Vec<Arc>,
    in_weight: Vec<u32>,
    mu: u32,
}

impl Orientation {
    /// Builds an orientation over `g`. Panics if an arc head is not an
    /// endpoint of its edge or a weight is zero; orienters construct arcs
    /// programmatically, so a violation is a bug, not an input error.
    pub fn new(g: &Graph, arcs: Vec<Arc>) -> Self {
        assert_eq!(arcs.len(), g.edge_count(), "one arc per edge");
        let mut in_weight = vec![0u32; g.vertex_count() as usize];
        for (i, arc) in arcs.iter().enumerate() {
            let (u, v) = g.endpoints(i);
            assert!(
                arc.head == u || arc.head == v,
                "arc head {} not on edge #{i} ({u}-{v})",
                arc.head
            );
            assert!(arc.weight >= 1, "arc weight must be positive");
            in_weight[arc.head as usize] += arc.weight;
        }
        let total: u64 = arcs.iter().map(|a| a.weight as u64).sum();
        let sum_in: u64 = in_weight.iter().map(|&w| w as u64).sum();
        assert_eq!(sum_in, total, "in-weights must sum to total arc weight");
        let mu = in_weight.iter().copied().max().unwrap_or(0);
        Orientation {
            vertex_count: g.vertex_count(),
            arcs,
            in_weight,
            mu,
        }
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, edge: usize) -> Arc {
        self.arcs[edge]
    }

    /// Sum of the weights of arcs pointing at `v`.
    pub fn in_weight(&self, v: Vertex) -> u32 {
        self.in_weight[v as usize]
    }

    pub fn in_weights(&self) -> &[u32] {
        &self.in_weight
    }

    /// Maximum in-weight over all vertices.
    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// Number of arcs with weight exactly 2.
    pub fn weight_two_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.weight == 2).count()
    }
}

/// Parses the orientation format against its source graph: arc `i` must use
/// the endpoints of edge `i`.
pub fn parse_orientation(text: &str, g: &Graph) -> Result<Orientation, GraphError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(GraphError::MalformedHeader { line: 1 })?;
    let mut parts = header.split_ascii_whitespace();
    let n: u32 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(GraphError::MalformedHeader { line: 1 })?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(GraphError::MalformedHeader { line: 1 })?;
    if n != g.vertex_count() || m != g.edge_count() {
        return Err(GraphError::MalformedHeader { line: 1 });
    }

    let mut arcs = Vec::with_capacity(m);
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if arcs.len() == m {
            return Err(GraphError::TrailingContent { line });
        }
        let mut parts = raw.split_ascii_whitespace();
        let mut next = || parts.next().and_then(|t| t.parse::<u32>().ok());
        let (u, v, w) = match (next(), next(), next()) {
            (Some(u), Some(v), Some(w)) => (u, v, w),
            _ => return Err(GraphError::MalformedArc { line }),
        };
        let edge = arcs.len();
        let (a, b) = g.endpoints(edge);
        if (u, v) != (a, b) && (u, v) != (b, a) {
            return Err(GraphError::ArcEdgeMismatch { line, u, v, edge });
        }
        if w == 0 {
            return Err(GraphError::NonpositiveWeight { line });
        }
        arcs.push(Arc { head: v, weight: w });
    }
    if arcs.len() < m {
        return Err(GraphError::MissingEdges {
            line: arcs.len() + 2,
            expected: m,
        });
    }
    Ok(Orientation::new(g, arcs))
}

/// Serializes an orientation as `tail head weight` lines in source edge
/// order.
pub fn serialize_orientation(g: &Graph, o: &Orientation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for (i, arc) in o.arcs().iter().enumerate() {
        let (u, v) = g.endpoints(i);
        let tail = if arc.head == u { v } else { u };
        let _ = writeln!(out, "{} {} {}", tail, arc.head, arc.weight);
    }
    out
}
