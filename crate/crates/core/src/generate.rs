//! Seeded graph generators for every family the test suite and CLI use.
//!
//! Random families draw from SplitMix64, a fixed, documented 64-bit PRNG,
//! so a port in any language reproduces the same graphs byte-for-byte from
//! the same seed. The generator name is recorded in the metadata sidecar.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// SplitMix64: the 64-bit mixer from Steele, Lea & Flood's SplittableRandom.
/// Chosen for reproducibility: the whole generator is ten lines and has
/// identical reference implementations in C, Java, and Rust.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from 0..n via plain modulo. The bias is ~n/2^64 and
    /// irrelevant at desk scale; modulo is the easiest contract to port.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is meaningless");
        self.next_u64() % n
    }

    /// True with probability percent/100.
    pub fn chance_percent(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }
}

/// Graph family plus its size parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Triangle with degree-2 ears added to every outer edge, iterated.
    /// `levels` = 1 is the bare triangle.
    Uop { levels: u32 },
    /// The fixed 6-vertex, 7-edge cactus whose orientation number is
    /// exactly 3: two triangles joined by a bridge.
    CactusTight,
    /// Random tree of blocks, each block a bridge (with probability
    /// `edge_percent`/100) or a cycle of length 3..=`max_cycle`.
    RandomCactus {
        blocks: u32,
        max_cycle: u32,
        edge_percent: u32,
    },
    /// Random triangulation of a convex polygon: 2n-3 edges, maximal
    /// outerplanar.
    RandomMaximalOuterplanar { vertices: u32 },
    Cycle { vertices: u32 },
    Path { vertices: u32 },
    Complete { vertices: u32 },
    Star { leaves: u32 },
    /// Each vertex pair becomes an edge independently with probability
    /// `edge_percent`/100.
    RandomGraph { vertices: u32, edge_percent: u32 },
    /// Triangle on an edge (0,1) plus `pages` - 1 further degree-2 ears on
    /// that same edge. Contains K(2,3) for pages >= 3, yet still peels.
    Book { pages: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Uop { .. } => "uop",
            Family::CactusTight => "cactus_tight",
            Family::RandomCactus { .. } => "random_cactus",
            Family::RandomMaximalOuterplanar { .. } => "random_maximal_outerplanar",
            Family::Cycle { .. } => "cycle",
            Family::Path { .. } => "path",
            Family::Complete { .. } => "complete",
            Family::Star { .. } => "star",
            Family::RandomGraph { .. } => "random_graph",
            Family::Book { .. } => "book",
        }
    }

    fn is_random(&self) -> bool {
        matches!(
            self,
            Family::RandomCactus { .. }
                | Family::RandomMaximalOuterplanar { .. }
                | Family::RandomGraph { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

pub const DEFAULT_CACTUS_BLOCKS: u32 = 20;
pub const DEFAULT_CACTUS_MAX_CYCLE: u32 = 9;
pub const DEFAULT_CACTUS_EDGE_PERCENT: u32 = 40;

/// Extra structure known only to the uop generator: the outer cycle, the
/// proper 3-coloring, and the ears in construction order.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct UopStructure {
    /// Outer face as a cyclic vertex sequence; consecutive pairs (wrapping)
    /// are the outer edges.
    pub outer_cycle: Vec<Vertex>,
    /// classes[0..3] are the color classes A, B, C.
    pub classes: [Vec<Vertex>; 3],
    /// Each ear as (attachment, new vertex, attachment), oldest first.
    pub ears: Vec<(Vertex, Vertex, Vertex)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub family: &'static str,
    pub seed: u64,
    pub params: BTreeMap<&'static str, u64>,
    /// PRNG identifier for random families; absent for fixed families.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
    pub vertex_count: u32,
    pub edge_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uop: Option<UopStructure>,
}

#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub metadata: Metadata,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("parameter {name} = {value} outside supported range {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: u64,
        range: &'static str,
    },
}

fn check(
    ok: bool,
    name: &'static str,
    value: u64,
    range: &'static str,
) -> Result<(), GenerateError> {
    if ok {
        Ok(())
    } else {
        Err(GenerateError::ParameterOutOfRange { name, value, range })
    }
}

/// Builds the graph described by `spec`, plus metadata.
pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedGraph, GenerateError> {
    let mut params: BTreeMap<&'static str, u64> = BTreeMap::new();
    let mut uop_structure = None;
    let graph = match spec.family {
        Family::Uop { levels } => {
            check(
                (1..=16).contains(&levels),
                "levels",
                levels as u64,
                "1..=16",
            )?;
            params.insert("levels", levels as u64);
            let (g, s) = build_uop(levels);
            uop_structure = Some(s);
            g
        }
        Family::CactusTight => Graph::new(
            6,
            vec![(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap(),
        Family::RandomCactus {
            blocks,
            max_cycle,
            edge_percent,
        } => {
            check(blocks >= 1, "blocks", blocks as u64, "1..")?;
            check(max_cycle >= 3, "max_cycle", max_cycle as u64, "3..")?;
            check(
                edge_percent <= 100,
                "edge_percent",
                edge_percent as u64,
                "0..=100",
            )?;
            params.insert("blocks", blocks as u64);
            params.insert("max_cycle", max_cycle as u64);
            params.insert("edge_percent", edge_percent as u64);
            build_random_cactus(blocks, max_cycle, edge_percent, spec.seed)
        }
        Family::RandomMaximalOuterplanar { vertices } => {
            check(vertices >= 3, "vertices", vertices as u64, "3..")?;
            params.insert("vertices", vertices as u64);
            build_random_maximal_outerplanar(vertices, spec.seed)
        }
        Family::Cycle { vertices } => {
            check(vertices >= 3, "vertices", vertices as u64, "3..")?;
            params.insert("vertices", vertices as u64);
            let edges = (0..vertices).map(|i| (i, (i + 1) % vertices)).collect();
            Graph::new(vertices, edges).unwrap()
        }
        Family::Path { vertices } => {
            check(vertices >= 2, "vertices", vertices as u64, "2..")?;
            params.insert("vertices", vertices as u64);
            let edges = (0..vertices - 1).map(|i| (i, i + 1)).collect();
            Graph::new(vertices, edges).unwrap()
        }
        Family::Complete { vertices } => {
            check(
                (1..=64).contains(&vertices),
                "vertices",
                vertices as u64,
                "1..=64",
            )?;
            params.insert("vertices", vertices as u64);
            let mut edges = Vec::new();
            for u in 0..vertices {
                for v in (u + 1)..vertices {
                    edges.push((u, v));
                }
            }
            Graph::new(vertices, edges).unwrap()
        }
        Family::Star { leaves } => {
            check(leaves >= 1, "leaves", leaves as u64, "1..")?;
            params.insert("leaves", leaves as u64);
            let edges = (1..=leaves).map(|v| (0, v)).collect();
            Graph::new(leaves + 1, edges).unwrap()
        }
        Family::RandomGraph {
            vertices,
            edge_percent,
        } => {
            check(vertices >= 1, "vertices", vertices as u64, "1..")?;
            check(
                edge_percent <= 100,
                "edge_percent",
                edge_percent as u64,
                "0..=100",
            )?;
            params.insert("vertices", vertices as u64);
            params.insert("edge_percent", edge_percent as u64);
            let mut rng = SplitMix64::new(spec.seed);
            let mut edges = Vec::new();
            for u in 0..vertices {
                for v in (u + 1)..vertices {
                    if rng.chance_percent(edge_percent as u64) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(vertices, edges).unwrap()
        }
        Family::Book { pages } => {
            check(pages >= 1, "pages", pages as u64, "1..")?;
            params.insert("pages", pages as u64);
            let mut edges = vec![(0, 1)];
            for p in 0..pages {
                edges.push((0, 2 + p));
                edges.push((1, 2 + p));
            }
            Graph::new(2 + pages, edges).unwrap()
        }
    };
    let metadata = Metadata {
        family: spec.family.name(),
        seed: spec.seed,
        params,
        rng: spec.family.is_random().then_some("splitmix64"),
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count() as u64,
        uop: uop_structure,
    };
    Ok(GeneratedGraph { graph, metadata })
}

/// Starts from a triangle and, `levels` - 1 times, hangs a new degree-2
/// vertex on every outer edge. Every vertex stays on the outer face, so
/// the outer cycle doubles each round. The 3-coloring extends canonically:
/// a new vertex takes the color its two attachments don't use.
fn build_uop(levels: u32) -> (Graph, UopStructure) {
    let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1), (0, 2), (1, 2)];
    let mut outer: Vec<Vertex> = vec![0, 1, 2];
    let mut color: Vec<u8> = vec![0, 1, 2];
    let mut ears: Vec<(Vertex, Vertex, Vertex)> = Vec::new();
    let mut next: Vertex = 3;
    for _ in 1..levels {
        let mut new_outer = Vec::with_capacity(outer.len() * 2);
        for i in 0..outer.len() {
            let u = outer[i];
            let v = outer[(i + 1) % outer.len()];
            let w = next;
            next += 1;
            edges.push((u, w));
            edges.push((w, v));
            ears.push((u, w, v));
            color.push(3 - color[u as usize] - color[v as usize]);
            new_outer.push(u);
            new_outer.push(w);
        }
        outer = new_outer;
    }
    let graph = Graph::new(next, edges).unwrap();
    let mut classes: [Vec<Vertex>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (v, &c) in color.iter().enumerate() {
        classes[c as usize].push(v as Vertex);
    }
    (
        graph,
        UopStructure {
            outer_cycle: outer,
            classes,
            ears,
        },
    )
}

fn build_random_cactus(blocks: u32, max_cycle: u32, edge_percent: u32, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut next: Vertex = 1; // vertex 0 is the root
    for _ in 0..blocks {
        let attach = rng.below(next as u64) as Vertex;
        if rng.chance_percent(edge_percent as u64) {
            let b = next;
            next += 1;
            edges.push((attach, b));
        } else {
            let len = 3 + rng.below((max_cycle - 2) as u64) as u32;
            let first = next;
            next += len - 1;
            let mut prev = attach;
            for v in first..next {
                edges.push((prev, v));
                prev = v;
            }
            edges.push((prev, attach));
        }
    }
    Graph::new(next, edges).unwrap()
}

fn build_random_maximal_outerplanar(n: u32, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..n - 1 {
        edges.push((i, i + 1));
    }
    edges.push((n - 1, 0));
    // Triangulate the polygon recursively: the chord (lo, hi) picks the
    // apex of its triangle uniformly among the vertices strictly between.
    let mut stack = vec![(0u32, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let k = lo + 1 + rng.below((hi - lo - 1) as u64) as u32;
        if k > lo + 1 {
            edges.push((lo, k));
        }
        if hi > k + 1 {
            edges.push((k, hi));
        }
        stack.push((lo, k));
        stack.push((k, hi));
    }
    Graph::new(n, edges).unwrap()
}
