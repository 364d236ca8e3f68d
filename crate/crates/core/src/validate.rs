//! Independent orientation checker.
//!
//! Everything here recomputes in-weights from the raw arc list; nothing is
//! shared with the construction code, so a bug there cannot hide from a bug
//! here. The checker accepts iff every edge carries exactly one positively
//! weighted arc between its own endpoints, adjacent vertices end up with
//! distinct in-weights, and any requested cap / weight-domain holds.

use serde::Serialize;

use crate::gadget::WeightDomain;
use crate::graph::{Arc, Graph, Orientation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ArcCountMismatch { expected: usize, actual: usize },
    HeadOffEdge { edge: usize, head: Vertex },
    NonpositiveWeight { edge: usize },
    WeightOutsideDomain { edge: usize, weight: u32 },
    AdjacentInWeightsEqual { edge: usize, u: Vertex, v: Vertex, in_weight: u32 },
    CapExceeded { vertex: Vertex, in_weight: u32, cap: u32 },
}

#[derive(Debug, Clone, Default)]
pub struct ValidateOptions {
    /// Reject if any in-weight exceeds this.
    pub mu_bound: Option<u32>,
    /// Reject weights outside this domain.
    pub weight_domain: Option<WeightDomain>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub mu: u32,
    pub violations: Vec<Violation>,
}

/// Checks a raw arc list against a graph. The arc at index i orients edge
/// i of `g`. All violations are collected, not just the first.
pub fn validate(g: &Graph, arcs: &[Arc], opts: &ValidateOptions) -> Verdict {
    let mut violations = Vec::new();
    if arcs.len() != g.edge_count() {
        violations.push(Violation::ArcCountMismatch {
            expected: g.edge_count(),
            actual: arcs.len(),
        });
        return Verdict {
            accepted: false,
            mu: 0,
            violations,
        };
    }

    let mut in_weight = vec![0u32; g.vertex_count() as usize];
    let mut structural_ok = true;
    for (e, arc) in arcs.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        if arc.head != u && arc.head != v {
            violations.push(Violation::HeadOffEdge {
                edge: e,
                head: arc.head,
            });
            structural_ok = false;
            continue;
        }
        if arc.weight == 0 {
            violations.push(Violation::NonpositiveWeight { edge: e });
            structural_ok = false;
            continue;
        }
        if let Some(domain) = opts.weight_domain {
            if !domain.contains(arc.weight) {
                violations.push(Violation::WeightOutsideDomain {
                    edge: e,
                    weight: arc.weight,
                });
            }
        }
        in_weight[arc.head as usize] += arc.weight;
    }

    let mu = in_weight.iter().copied().max().unwrap_or(0);
    if structural_ok {
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if in_weight[u as usize] == in_weight[v as usize] {
                violations.push(Violation::AdjacentInWeightsEqual {
                    edge: e,
                    u,
                    v,
                    in_weight: in_weight[u as usize],
                });
            }
        }
        if let Some(cap) = opts.mu_bound {
            for v in g.vertices() {
                if in_weight[v as usize] > cap {
                    violations.push(Violation::CapExceeded {
                        vertex: v,
                        in_weight: in_weight[v as usize],
                        cap,
                    });
                }
            }
        }
    }

    Verdict {
        accepted: violations.is_empty(),
        mu,
        violations,
    }
}

/// Convenience wrapper for an already-built Orientation.
pub fn validate_orientation(g: &Graph, o: &Orientation, opts: &ValidateOptions) -> Verdict {
    validate(g, o.arcs(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn figure_cactus() -> Graph {
        parse_graph("6 7\n0 1\n0 2\n1 2\n2 3\n3 4\n3 5\n4 5\n").unwrap()
    }

    fn arc(head: Vertex, weight: u32) -> Arc {
        Arc { head, weight }
    }

    #[test]
    fn accepts_a_hand_checked_orientation_of_the_tight_cactus() {
        let g = figure_cactus();
        // In-weights come out as [0, 1, 2, 3, 0, 2].
        let arcs = vec![
            arc(1, 1),
            arc(2, 1),
            arc(2, 1),
            arc(3, 1),
            arc(3, 1),
            arc(3, 1),
            arc(5, 2),
        ];
        let verdict = validate(
            &g,
            &arcs,
            &ValidateOptions {
                mu_bound: Some(3),
                weight_domain: Some(WeightDomain::OneTwo),
            },
        );
        assert!(verdict.accepted, "{:?}", verdict.violations);
        assert_eq!(verdict.mu, 3);
    }

    #[test]
    fn rejects_the_rotating_triangle() {
        // All weights 1 around a directed 3-cycle: every vertex has
        // in-weight 1, so all three edges violate distinctness.
        let g = parse_graph("3 3\n0 1\n0 2\n1 2\n").unwrap();
        let arcs = vec![arc(1, 1), arc(0, 1), arc(2, 1)];
        let verdict = validate(&g, &arcs, &ValidateOptions::default());
        assert!(!verdict.accepted);
        assert_eq!(verdict.violations.len(), 3);
        assert!(verdict
            .violations
            .iter()
            .all(|v| matches!(v, Violation::AdjacentInWeightsEqual { .. })));
    }

    #[test]
    fn flags_cap_and_domain_violations() {
        let g = parse_graph("2 1\n0 1\n").unwrap();
        let verdict = validate(
            &g,
            &[arc(1, 3)],
            &ValidateOptions {
                mu_bound: Some(2),
                weight_domain: Some(WeightDomain::OneTwo),
            },
        );
        assert!(!verdict.accepted);
        assert!(verdict
            .violations
            .contains(&Violation::WeightOutsideDomain { edge: 0, weight: 3 }));
        assert!(verdict.violations.contains(&Violation::CapExceeded {
            vertex: 1,
            in_weight: 3,
            cap: 2
        }));
    }

    #[test]
    fn flags_structural_problems() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let verdict = validate(
            &g,
            &[arc(2, 1), arc(1, 1)],
            &ValidateOptions::default(),
        );
        assert!(!verdict.accepted);
        assert!(verdict
            .violations
            .contains(&Violation::HeadOffEdge { edge: 0, head: 2 }));

        let verdict = validate(&g, &[arc(1, 1)], &ValidateOptions::default());
        assert_eq!(
            verdict.violations,
            vec![Violation::ArcCountMismatch {
                expected: 2,
                actual: 1
            }]
        );

        let verdict = validate(&g, &[arc(1, 0), arc(2, 1)], &ValidateOptions::default());
        assert!(verdict
            .violations
            .contains(&Violation::NonpositiveWeight { edge: 0 }));
    }

    #[test]
    fn zero_weight_bound_accepts_empty_graphs() {
        let g = parse_graph("1 0\n").unwrap();
        let verdict = validate(&g, &[], &ValidateOptions::default());
        assert!(verdict.accepted);
        assert_eq!(verdict.mu, 0);
    }
}
