//! Independent audit of the bound chain
//! `omega - 1 <= chi - 1 <= chi_s <= chi_proper <= max_degree`.
//!
//! All five quantities are computed from scratch on one graph, so a broken
//! solver (or a broken expectation) shows up as a failed chain rather than
//! silently propagating.

use serde::Serialize;

use super::{chi_s_brute, ArcWeights, Budget, ExactError, SearchStats};
use crate::graph::{max_degree, Graph};

/// Hard guards keeping the audit at desk scale.
const MAX_VERTICES: u32 = 10;
const MAX_EDGES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InequalityAudit {
    /// Largest clique size.
    pub omega: u32,
    /// Chromatic number.
    pub chi: u32,
    /// Weighted orientation number (weights 1 and 2).
    pub chi_s: u32,
    /// Proper orientation number (all weights 1).
    pub chi_proper: u32,
    pub max_degree: u32,
    /// omega - 1 <= chi - 1 <= chi_s <= chi_proper <= max_degree.
    pub chain_holds: bool,
    pub stats: SearchStats,
}

/// Computes all five chain members exactly and checks the inequalities.
pub fn inequality_audit(g: &Graph, budget: &Budget) -> Result<InequalityAudit, ExactError> {
    if g.vertex_count() == 0 || g.vertex_count() > MAX_VERTICES || g.edge_count() > MAX_EDGES {
        return Err(ExactError::TooLarge {
            solver: "inequality_audit",
            detail: format!(
                "needs 1..={MAX_VERTICES} vertices and at most {MAX_EDGES} edges, got {} and {}",
                g.vertex_count(),
                g.edge_count()
            ),
        });
    }
    let omega = clique_number(g);
    let chi = chromatic_number(g, omega);
    // In-weights never exceed 2(n-1), and the unit witness for chi_proper
    // bounds chi_s too, so a cap of 2n always leaves the ladder room to
    // find the true value if one exists at all.
    let cap = 2 * g.vertex_count();
    let weighted = chi_s_brute(g, ArcWeights::UpToTwo, cap, budget)?;
    let unit = chi_s_brute(g, ArcWeights::Unit, cap, budget)?;
    let (Some(chi_s), Some(chi_proper)) = (weighted.value(), unit.value()) else {
        return Err(ExactError::BudgetExhausted {
            solver: "inequality_audit",
        });
    };
    let degree = max_degree(g).expect("guard admits only graphs with vertices");
    let chain_holds = omega <= chi
        && chi - 1 <= chi_s
        && chi_s <= chi_proper
        && chi_proper <= degree;
    Ok(InequalityAudit {
        omega,
        chi,
        chi_s,
        chi_proper,
        max_degree: degree,
        chain_holds,
        stats: SearchStats {
            nodes: weighted.stats.nodes + unit.stats.nodes,
            flow_checks: 0,
            elapsed_millis: weighted.stats.elapsed_millis + unit.stats.elapsed_millis,
        },
    })
}

/// Largest clique by subset enumeration over adjacency bitmasks.
fn clique_number(g: &Graph) -> u32 {
    let n = g.vertex_count() as usize;
    debug_assert!(n <= MAX_VERTICES as usize);
    let mut adjacent = vec![0u32; n];
    for &(u, v) in g.edges() {
        adjacent[u as usize] |= 1 << v;
        adjacent[v as usize] |= 1 << u;
    }
    let mut best = 0;
    for subset in 0u32..(1 << n) {
        if subset.count_ones() <= best {
            continue;
        }
        let is_clique = (0..n)
            .filter(|&v| subset & (1 << v) != 0)
            .all(|v| subset & !adjacent[v] & !(1 << v) == 0);
        if is_clique {
            best = subset.count_ones();
        }
    }
    best
}

/// Smallest k admitting a proper k-coloring, searched upward from omega.
fn chromatic_number(g: &Graph, omega: u32) -> u32 {
    let n = g.vertex_count();
    for k in omega.max(1)..=n.max(1) {
        let mut colors = vec![u32::MAX; n as usize];
        if colorable(g, k, 0, &mut colors) {
            return k;
        }
    }
    n.max(1)
}

fn colorable(g: &Graph, k: u32, v: u32, colors: &mut Vec<u32>) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    // Only the first unused color is worth trying (color symmetry).
    let used = colors[..v as usize].iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().any(|&(u, _)| colors[u as usize] == c) {
            continue;
        }
        colors[v as usize] = c;
        if colorable(g, k, v + 1, colors) {
            return true;
        }
        colors[v as usize] = u32::MAX;
    }
    false
}
