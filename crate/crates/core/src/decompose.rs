//! Block-cut structure, ear peeling, and input classification.
//!
//! Blocks come out in a DFS order of the block-cut tree, each non-initial
//! block carrying the cut vertex (its root) through which it attaches to
//! the prefix. Ear peeling reduces a 2-connected graph to a base cycle by
//! repeatedly removing maximal degree-2 chains whose attachments are
//! adjacent; replayed forward, that is exactly an ear decomposition whose
//! every active pair is an edge.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// One block: a maximal 2-connected subgraph, a bridge, or an isolated
/// vertex. Edges are indices into the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
}

impl Block {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_bridge(&self) -> bool {
        self.vertices.len() == 2
    }

    /// A block of order >= 3 whose every vertex has degree 2 inside it.
    pub fn is_cycle(&self) -> bool {
        self.order() >= 3 && self.edges.len() == self.order()
    }
}

/// Blocks of a graph in a DFS-consistent order, with per-block roots.
#[derive(Debug, Clone)]
pub struct BlockForest {
    pub blocks: Vec<Block>,
    /// Root cut vertex of each block; `None` for the first block of each
    /// component (and for isolated vertices).
    pub roots: Vec<Option<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
}

impl BlockForest {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }
}

/// Computes blocks, cut vertices, and a DFS ordering of the block-cut tree
/// rooted, per component, at the block containing the component's smallest
/// vertex. Isolated vertices appear as 1-blocks.
pub fn block_forest(g: &Graph) -> BlockForest {
    let n = g.vertex_count() as usize;
    let mut raw_blocks: Vec<Block> = Vec::new();

    // Iterative biconnected-components DFS with an edge stack.
    const UNSET: u32 = u32::MAX;
    let mut disc = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut timer = 0u32;
    let mut edge_stack: Vec<usize> = Vec::new();
    // Frame: (vertex, incoming edge id or usize::MAX, next neighbor slot).
    let mut frames: Vec<(Vertex, usize, usize)> = Vec::new();

    for root in 0..n as u32 {
        if disc[root as usize] != UNSET {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root as usize] = timer;
            timer += 1;
            raw_blocks.push(Block {
                vertices: vec![root],
                edges: vec![],
            });
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        frames.push((root, usize::MAX, 0));
        while let Some(&mut (u, in_edge, ref mut slot)) = frames.last_mut() {
            if *slot < g.degree(u) {
                let (v, e) = g.neighbors(u)[*slot];
                *slot += 1;
                if e == in_edge {
                    continue;
                }
                if disc[v as usize] == UNSET {
                    disc[v as usize] = timer;
                    low[v as usize] = timer;
                    timer += 1;
                    edge_stack.push(e);
                    frames.push((v, e, 0));
                } else if disc[v as usize] < disc[u as usize] {
                    edge_stack.push(e);
                    low[u as usize] = low[u as usize].min(disc[v as usize]);
                }
            } else {
                frames.pop();
                if let Some(&mut (p, _, _)) = frames.last_mut() {
                    if low[u as usize] >= disc[p as usize] {
                        // u's subtree closes a block at p.
                        let pos = edge_stack
                            .iter()
                            .rposition(|&e| {
                                let (a, b) = g.endpoints(e);
                                (a == p && b == u) || (a == u && b == p)
                            })
                            .expect("tree edge on stack");
                        let edges: Vec<usize> = edge_stack.split_off(pos);
                        let mut vertices: Vec<Vertex> = edges
                            .iter()
                            .flat_map(|&e| {
                                let (a, b) = g.endpoints(e);
                                [a, b]
                            })
                            .collect();
                        vertices.sort_unstable();
                        vertices.dedup();
                        raw_blocks.push(Block { vertices, edges });
                    }
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                }
            }
        }
    }

    // Cut vertices are exactly the vertices lying in two or more blocks.
    let mut membership = vec![0u32; n];
    let mut vertex_blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in raw_blocks.iter().enumerate() {
        for &v in &b.vertices {
            membership[v as usize] += 1;
            vertex_blocks[v as usize].push(i);
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n as u32)
        .filter(|&v| membership[v as usize] >= 2)
        .collect();

    // DFS over the block-cut tree, per component, smallest vertices first.
    let mut order: Vec<usize> = Vec::with_capacity(raw_blocks.len());
    let mut roots: Vec<Option<Vertex>> = Vec::with_capacity(raw_blocks.len());
    let mut block_seen = vec![false; raw_blocks.len()];
    let mut vertex_seen = vec![false; n];
    for v in 0..n as u32 {
        if vertex_seen[v as usize] {
            continue;
        }
        let b0 = *vertex_blocks[v as usize]
            .iter()
            .min()
            .expect("every vertex lies in a block");
        let mut stack: Vec<(usize, Option<Vertex>)> = vec![(b0, None)];
        while let Some((b, root)) = stack.pop() {
            if block_seen[b] {
                continue;
            }
            block_seen[b] = true;
            order.push(b);
            roots.push(root);
            for &u in raw_blocks[b].vertices.iter().rev() {
                vertex_seen[u as usize] = true;
                if membership[u as usize] >= 2 {
                    for &nb in vertex_blocks[u as usize].iter().rev() {
                        if !block_seen[nb] {
                            stack.push((nb, Some(u)));
                        }
                    }
                }
            }
        }
    }

    let blocks: Vec<Block> = order.iter().map(|&i| raw_blocks[i].clone()).collect();
    BlockForest {
        blocks,
        roots,
        cut_vertices,
    }
}

/// Extracts a block as a standalone graph. Returns the subgraph plus maps
/// from local vertex/edge indices back to the parent's.
pub fn block_subgraph(g: &Graph, block: &Block) -> (Graph, Vec<Vertex>, Vec<usize>) {
    let vertex_map = block.vertices.clone();
    let mut local_of = std::collections::HashMap::new();
    for (i, &v) in vertex_map.iter().enumerate() {
        local_of.insert(v, i as Vertex);
    }
    let edges: Vec<(Vertex, Vertex)> = block
        .edges
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            (local_of[&u], local_of[&v])
        })
        .collect();
    let sub = Graph::new(vertex_map.len() as u32, edges).expect("block edges are simple");
    (sub, vertex_map, block.edges.clone())
}

/// One ear: the full path, attachments first and last. Internal vertices
/// are `path[1..path.len() - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ear {
    pub path: Vec<Vertex>,
}

impl Ear {
    pub fn active_pair(&self) -> (Vertex, Vertex) {
        (self.path[0], *self.path.last().unwrap())
    }

    pub fn internal(&self) -> &[Vertex] {
        &self.path[1..self.path.len() - 1]
    }
}

/// An ear decomposition: a base cycle and ears in replay order. Replaying
/// the cycle then each ear reproduces the source graph exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EarDecomposition {
    pub base_cycle: Vec<Vertex>,
    pub ears: Vec<Ear>,
    pub designated: Option<Vertex>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PeelError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("no peelable chain: a degree-2 chain with adjacent attachments is required")]
    NotPeelable,
    #[error("designated vertex cannot be protected onto the base cycle")]
    ProtectionImpossible,
}

struct PeelState<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    alive_count: usize,
}

#[derive(Debug, Clone)]
struct Chain {
    /// x, internal..., y with x and y the attachments.
    path: Vec<Vertex>,
}

impl<'a> PeelState<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count() as usize;
        PeelState {
            g,
            alive: vec![true; n],
            degree: (0..n as u32).map(|v| g.degree(v)).collect(),
            alive_count: n,
        }
    }

    fn residual_is_cycle(&self) -> bool {
        self.alive_count >= 3
            && (0..self.alive.len()).all(|v| !self.alive[v] || self.degree[v] == 2)
    }

    fn alive_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.g
            .neighbors(v)
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| self.alive[u as usize])
    }

    /// All maximal alive degree-2 chains whose attachments are adjacent,
    /// ordered by smallest internal vertex.
    fn candidate_chains(&self) -> Vec<Chain> {
        let n = self.alive.len();
        let mut in_chain = vec![false; n];
        let mut chains = Vec::new();
        for v in 0..n as u32 {
            if !self.alive[v as usize] || self.degree[v as usize] != 2 || in_chain[v as usize] {
                continue;
            }
            // Grow the run of degree-2 vertices containing v in both
            // directions.
            let mut run = vec![v];
            let ends: Vec<Vertex> = self.alive_neighbors(v).collect();
            debug_assert_eq!(ends.len(), 2);
            for (slot, &start) in ends.iter().enumerate() {
                let mut prev = v;
                let mut cur = start;
                while self.degree[cur as usize] == 2 {
                    if slot == 0 {
                        run.insert(0, cur);
                    } else {
                        run.push(cur);
                    }
                    let next = self
                        .alive_neighbors(cur)
                        .find(|&u| u != prev)
                        .expect("degree-2 vertex has a second neighbor");
                    prev = cur;
                    cur = next;
                }
                if slot == 0 {
                    run.insert(0, cur); // attachment x
                } else {
                    run.push(cur); // attachment y
                }
            }
            for &w in &run[1..run.len() - 1] {
                in_chain[w as usize] = true;
            }
            let x = run[0];
            let y = *run.last().unwrap();
            // Attachments must be distinct and adjacent for the chain to be
            // a peelable ear.
            if x != y && self.g.edge_between(x, y).is_some() {
                if x > y {
                    run.reverse();
                }
                chains.push(Chain { path: run });
            }
        }
        chains.sort_by_key(|c| *c.path[1..c.path.len() - 1].iter().min().unwrap());
        chains
    }

    fn remove_internal(&mut self, chain: &Chain) {
        for &w in &chain.path[1..chain.path.len() - 1] {
            self.alive[w as usize] = false;
            self.alive_count -= 1;
        }
        self.refresh_degrees(chain);
    }

    fn restore_internal(&mut self, chain: &Chain) {
        for &w in &chain.path[1..chain.path.len() - 1] {
            self.alive[w as usize] = true;
            self.alive_count += 1;
        }
        self.refresh_degrees(chain);
    }

    fn refresh_degrees(&mut self, chain: &Chain) {
        let mut touched: Vec<Vertex> = chain.path.clone();
        for &w in &chain.path {
            touched.extend(self.g.neighbors(w).iter().map(|&(u, _)| u));
        }
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            if self.alive[v as usize] {
                self.degree[v as usize] = self.alive_neighbors(v).count();
            }
        }
    }

    fn cycle_order(&self, start: Vertex) -> Vec<Vertex> {
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = self
            .alive_neighbors(start)
            .min()
            .expect("cycle vertex has neighbors");
        while cur != start {
            cycle.push(cur);
            let next = self
                .alive_neighbors(cur)
                .find(|&u| u != prev)
                .expect("cycle vertex has two neighbors");
            prev = cur;
            cur = next;
        }
        cycle
    }
}

fn is_two_connected(g: &Graph) -> bool {
    if g.vertex_count() < 3 {
        return false;
    }
    let forest = block_forest(g);
    forest.blocks.len() == 1 && forest.blocks[0].order() == g.vertex_count() as usize
}

/// Peels `g` down to a base cycle, recording the removed chains as ears in
/// replay order. When `designated` is given, its vertex is protected onto
/// the base cycle; all chain orders are retried before reporting failure.
pub fn peel_ears(g: &Graph, designated: Option<Vertex>) -> Result<EarDecomposition, PeelError> {
    if !is_two_connected(g) {
        return Err(PeelError::NotTwoConnected);
    }
    let mut state = PeelState::new(g);
    let mut peeled: Vec<Chain> = Vec::new();
    let protect = designated;

    fn search(state: &mut PeelState, protect: Option<Vertex>, peeled: &mut Vec<Chain>) -> bool {
        if state.residual_is_cycle() {
            return true;
        }
        let candidates = state.candidate_chains();
        for chain in candidates {
            if let Some(s) = protect {
                if chain.path[1..chain.path.len() - 1].contains(&s) {
                    continue;
                }
            }
            state.remove_internal(&chain);
            peeled.push(chain);
            if search(state, protect, peeled) {
                return true;
            }
            let chain = peeled.pop().unwrap();
            state.restore_internal(&chain);
        }
        false
    }

    if !search(&mut state, protect, &mut peeled) {
        // Distinguish "stuck because of protection" from "not peelable at
        // all" for diagnostics.
        if protect.is_some() {
            let mut free = PeelState::new(g);
            let mut scratch = Vec::new();
            if search(&mut free, None, &mut scratch) {
                return Err(PeelError::ProtectionImpossible);
            }
        }
        return Err(PeelError::NotPeelable);
    }

    let start = protect.unwrap_or_else(|| {
        (0..state.alive.len() as u32)
            .find(|&v| state.alive[v as usize])
            .unwrap()
    });
    debug_assert!(state.alive[start as usize]);
    let base_cycle = state.cycle_order(start);
    peeled.reverse();
    Ok(EarDecomposition {
        base_cycle,
        ears: peeled.into_iter().map(|c| Chain { path: c.path }.into()).collect(),
        designated,
    })
}

impl From<Chain> for Ear {
    fn from(c: Chain) -> Ear {
        Ear { path: c.path }
    }
}

/// Rebuilds the vertex and edge sets implied by a decomposition and checks
/// them against `g`. Used by tests and the classifier's sanity paths.
pub fn replay_matches(g: &Graph, d: &EarDecomposition) -> bool {
    let mut vertices: HashSet<Vertex> = d.base_cycle.iter().copied().collect();
    let mut edges: HashSet<usize> = HashSet::new();
    let cycle_len = d.base_cycle.len();
    if cycle_len < 3 {
        return false;
    }
    for i in 0..cycle_len {
        let u = d.base_cycle[i];
        let v = d.base_cycle[(i + 1) % cycle_len];
        match g.edge_between(u, v) {
            Some(e) => {
                if !edges.insert(e) {
                    return false;
                }
            }
            None => return false,
        }
    }
    for ear in &d.ears {
        if ear.path.len() < 3 {
            return false;
        }
        let (a, b) = ear.active_pair();
        if !vertices.contains(&a) || !vertices.contains(&b) {
            return false;
        }
        if g.edge_between(a, b).is_none() {
            return false;
        }
        for &w in ear.internal() {
            if !vertices.insert(w) {
                return false;
            }
        }
        for pair in ear.path.windows(2) {
            match g.edge_between(pair[0], pair[1]) {
                Some(e) => {
                    if !edges.insert(e) {
                        return false;
                    }
                }
                None => return false,
            }
        }
    }
    vertices.len() == g.vertex_count() as usize && edges.len() == g.edge_count()
}

/// How a single block is handled by the orienters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockShape {
    Isolated,
    Edge,
    Cycle,
    EarPeelable,
    Unsupported,
}

/// Classification tag for a whole graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Cactus,
    EarPeelable,
    Unsupported,
}

/// Classification result: the overall tag plus one shape per block, in
/// block order.
#[derive(Debug, Clone, Serialize)]
pub struct GraphClass {
    pub tag: ClassTag,
    pub block_shapes: Vec<BlockShape>,
}

/// Classifies a graph by the shape of its blocks: a cactus has only edges
/// and cycles; otherwise, if every larger block peels to a cycle, the graph
/// is ear-peelable and the orienter's case analysis applies.
pub fn classify(g: &Graph) -> GraphClass {
    let forest = block_forest(g);
    classify_forest(g, &forest)
}

pub fn classify_forest(g: &Graph, forest: &BlockForest) -> GraphClass {
    let mut shapes = Vec::with_capacity(forest.blocks.len());
    for block in &forest.blocks {
        let shape = if block.order() == 1 {
            BlockShape::Isolated
        } else if block.is_bridge() {
            BlockShape::Edge
        } else if block.is_cycle() {
            BlockShape::Cycle
        } else {
            let (sub, _, _) = block_subgraph(g, block);
            match peel_ears(&sub, None) {
                Ok(_) => BlockShape::EarPeelable,
                Err(_) => BlockShape::Unsupported,
            }
        };
        shapes.push(shape);
    }
    let tag = if shapes
        .iter()
        .all(|s| matches!(s, BlockShape::Isolated | BlockShape::Edge | BlockShape::Cycle))
    {
        ClassTag::Cactus
    } else if shapes.iter().all(|s| !matches!(s, BlockShape::Unsupported)) {
        ClassTag::EarPeelable
    } else {
        ClassTag::Unsupported
    };
    GraphClass {
        tag,
        block_shapes: shapes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn figure_cactus() -> Graph {
        parse_graph("6 7\n0 1\n0 2\n1 2\n2 3\n3 4\n3 5\n4 5\n").unwrap()
    }

    fn cycle(n: u32) -> Graph {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, edges).unwrap()
    }

    fn complete(n: u32) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    /// Triangle 0-1-2 plus a degree-2 vertex on each triangle edge.
    fn uop2() -> Graph {
        Graph::new(
            6,
            vec![
                (0, 1),
                (0, 2),
                (1, 2),
                (0, 3),
                (1, 3),
                (0, 4),
                (2, 4),
                (1, 5),
                (2, 5),
            ],
        )
        .unwrap()
    }

    fn book(pages: u32) -> Graph {
        let mut edges = vec![(0, 1)];
        for p in 0..pages {
            edges.push((0, 2 + p));
            edges.push((1, 2 + p));
        }
        Graph::new(2 + pages, edges).unwrap()
    }

    #[test]
    fn figure_cactus_blocks() {
        let f = block_forest(&figure_cactus());
        assert_eq!(f.blocks.len(), 3);
        let mut sets: Vec<Vec<Vertex>> = f.blocks.iter().map(|b| b.vertices.clone()).collect();
        sets.sort();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5]]);
        assert_eq!(f.cut_vertices, vec![2, 3]);
        // First block contains vertex 0 and has no root.
        assert!(f.blocks[0].vertices.contains(&0));
        assert_eq!(f.roots[0], None);
        // Every later block roots at a cut vertex shared with the prefix.
        for i in 1..f.blocks.len() {
            let r = f.roots[i].unwrap();
            assert!(f.blocks[i].vertices.contains(&r));
            assert!(f.is_cut_vertex(r));
            assert!(f.blocks[..i].iter().any(|b| b.vertices.contains(&r)));
        }
    }

    #[test]
    fn cycle_is_one_block() {
        let f = block_forest(&cycle(5));
        assert_eq!(f.blocks.len(), 1);
        assert!(f.cut_vertices.is_empty());
        assert!(f.blocks[0].is_cycle());
    }

    #[test]
    fn path_blocks_are_bridges() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let f = block_forest(&g);
        assert_eq!(f.blocks.len(), 3);
        assert!(f.blocks.iter().all(|b| b.is_bridge()));
        assert_eq!(f.cut_vertices, vec![1, 2]);
    }

    #[test]
    fn isolated_vertices_are_one_blocks() {
        let g = Graph::new(3, vec![(1, 2)]).unwrap();
        let f = block_forest(&g);
        assert_eq!(f.blocks.len(), 2);
        assert_eq!(f.blocks[0].vertices, vec![0]);
        assert!(f.blocks[0].edges.is_empty());
        assert_eq!(f.roots, vec![None, None]);
    }

    #[test]
    fn block_tree_identity() {
        for g in [figure_cactus(), cycle(6), complete(4), uop2(), book(4)] {
            let f = block_forest(&g);
            // Connected inputs: sum of (|V_b| - 1) telescopes to |V| - 1.
            let sum: usize = f.blocks.iter().map(|b| b.order() - 1).sum();
            assert_eq!(sum, g.vertex_count() as usize - 1);
            // Every edge in exactly one block.
            let mut seen = vec![false; g.edge_count()];
            for b in &f.blocks {
                for &e in &b.edges {
                    assert!(!seen[e]);
                    seen[e] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn peels_uop2_to_a_triangle() {
        let g = uop2();
        let d = peel_ears(&g, None).unwrap();
        assert_eq!(d.base_cycle.len(), 3);
        assert_eq!(d.ears.len(), 3);
        assert!(d.ears.iter().all(|e| e.path.len() == 3));
        assert!(replay_matches(&g, &d));
    }

    #[test]
    fn peel_failures() {
        assert_eq!(peel_ears(&complete(4), None), Err(PeelError::NotPeelable));
        // Complete bipartite 2x3: degree-2 chains exist but their
        // attachments are never adjacent.
        let k23 = Graph::new(
            5,
            vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap();
        assert_eq!(peel_ears(&k23, None), Err(PeelError::NotPeelable));
        // Not 2-connected inputs are rejected up front.
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(peel_ears(&path, None), Err(PeelError::NotTwoConnected));
    }

    #[test]
    fn peel_protects_designated_vertex() {
        let g = uop2();
        for s in 0..6 {
            match peel_ears(&g, Some(s)) {
                Ok(d) => {
                    assert!(d.base_cycle.contains(&s), "s = {s}");
                    assert!(replay_matches(&g, &d));
                }
                Err(e) => panic!("peel must succeed for s = {s}: {e}"),
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&figure_cactus()).tag, ClassTag::Cactus);
        assert_eq!(classify(&cycle(7)).tag, ClassTag::Cactus);
        assert_eq!(classify(&uop2()).tag, ClassTag::EarPeelable);
        assert_eq!(classify(&complete(4)).tag, ClassTag::Unsupported);
        // A 3-page book peels even though it contains a K(2,3) subgraph,
        // so the supported class strictly contains the outerplanar ones.
        assert_eq!(classify(&book(3)).tag, ClassTag::EarPeelable);
    }

    #[test]
    fn ear_decomposition_invariants_on_books() {
        for pages in 2..8 {
            let g = book(pages);
            let d = peel_ears(&g, None).unwrap();
            assert!(replay_matches(&g, &d));
            for ear in &d.ears {
                let (a, b) = ear.active_pair();
                assert!(g.edge_between(a, b).is_some());
                assert!(ear.path.len() >= 3);
            }
        }
    }
}
