//! Per-edge exhaustive search: every edge independently picks a direction
//! and a weight from the menu, depth-first with pruning.

use super::{Feasibility, Meter};
use crate::graph::{Arc, Graph, Vertex};

/// How many assignments to make between budget polls.
const POLL_INTERVAL: u64 = 4096;

/// Decides whether some orientation with weights from `menu` keeps every
/// in-weight at most `cap` (and adjacent in-weights distinct).
pub(crate) fn feasible_orientation(
    g: &Graph,
    menu: &'static [u32],
    cap: u32,
    meter: &Meter,
) -> Feasibility {
    let mut search = EdgeSearch {
        g,
        menu,
        cap,
        order: edge_order(g),
        arcs: vec![None; g.edge_count()],
        in_weight: vec![0; g.vertex_count() as usize],
        remaining: degree_vector(g),
        unflushed: 0,
        meter,
    };
    let verdict = search.assign_from(0);
    meter.spend(std::mem::take(&mut search.unflushed));
    match verdict {
        Verdict::Found => Feasibility::Found(search.arcs.into_iter().map(Option::unwrap).collect()),
        Verdict::Refuted => Feasibility::Refuted,
        Verdict::Stopped => Feasibility::OutOfBudget,
    }
}

/// Edges grouped vertex by vertex (DFS discovery order), so vertices
/// saturate early and the adjacent-distinct prune fires close to the root
/// of the search tree.
fn edge_order(g: &Graph) -> Vec<usize> {
    let mut listed = vec![false; g.edge_count()];
    let mut seen = vec![false; g.vertex_count() as usize];
    let mut order = Vec::with_capacity(g.edge_count());
    let mut stack = Vec::new();
    for root in g.vertices() {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        stack.push(root);
        while let Some(v) = stack.pop() {
            for &(u, e) in g.neighbors(v) {
                if !listed[e] {
                    listed[e] = true;
                    order.push(e);
                }
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
    }
    debug_assert_eq!(order.len(), g.edge_count());
    order
}

fn degree_vector(g: &Graph) -> Vec<u32> {
    g.vertices().map(|v| g.degree(v) as u32).collect()
}

enum Verdict {
    Found,
    Refuted,
    Stopped,
}

struct EdgeSearch<'a> {
    g: &'a Graph,
    menu: &'static [u32],
    cap: u32,
    order: Vec<usize>,
    arcs: Vec<Option<Arc>>,
    in_weight: Vec<u32>,
    /// Unassigned incident edges per vertex; zero means saturated, at which
    /// point the vertex's in-weight is final and comparable to neighbors.
    remaining: Vec<u32>,
    unflushed: u64,
    meter: &'a Meter,
}

impl EdgeSearch<'_> {
    fn assign_from(&mut self, depth: usize) -> Verdict {
        if depth == self.order.len() {
            return Verdict::Found;
        }
        let edge = self.order[depth];
        let (u, v) = self.g.endpoints(edge);
        for head in [u, v] {
            for &weight in self.menu {
                self.unflushed += 1;
                if self.unflushed >= POLL_INTERVAL
                    && !self.meter.spend(std::mem::take(&mut self.unflushed))
                {
                    return Verdict::Stopped;
                }
                if self.in_weight[head as usize] + weight > self.cap {
                    continue;
                }
                self.arcs[edge] = Some(Arc { head, weight });
                self.in_weight[head as usize] += weight;
                self.remaining[u as usize] -= 1;
                self.remaining[v as usize] -= 1;
                if self.saturation_consistent(u) && self.saturation_consistent(v) {
                    match self.assign_from(depth + 1) {
                        Verdict::Found => return Verdict::Found,
                        Verdict::Stopped => return Verdict::Stopped,
                        Verdict::Refuted => {}
                    }
                }
                self.remaining[u as usize] += 1;
                self.remaining[v as usize] += 1;
                self.in_weight[head as usize] -= weight;
                self.arcs[edge] = None;
            }
        }
        Verdict::Refuted
    }

    /// If `v` just became saturated, its in-weight must differ from every
    /// already-saturated neighbor.
    fn saturation_consistent(&self, v: Vertex) -> bool {
        if self.remaining[v as usize] != 0 {
            return true;
        }
        let w = self.in_weight[v as usize];
        self.g
            .neighbors(v)
            .iter()
            .all(|&(u, _)| self.remaining[u as usize] != 0 || self.in_weight[u as usize] != w)
    }
}
