//! Exact solvers for the two orientation numbers at desk scale.
//!
//! Two independent routes compute the weighted orientation number:
//!
//! * [`chi_s_brute`] enumerates every (direction, weight) choice per edge;
//! * [`chi_s_labeling`] enumerates proper in-weight labelings and checks
//!   realizability of each complete labeling with a max-flow circulation.
//!
//! The routes share no search code, so agreement between them is meaningful
//! evidence of correctness. [`chi_proper`] is the unit-weight variant, and
//! [`inequality_audit`] checks the chain
//! `omega - 1 <= chi - 1 <= chi_s <= chi_proper <= max_degree`
//! with all five quantities computed from scratch.
//!
//! Every search is budgeted (wall clock and node count); running out of
//! budget is an explicit report outcome, never a panic or a wrong answer.

pub mod flow;

mod audit;
mod brute;
mod labeling;

pub use audit::{inequality_audit, InequalityAudit};

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Arc, Graph, Orientation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    /// The instance exceeds the solver's hard size guard.
    #[error("{solver}: instance too large ({detail})")]
    TooLarge {
        solver: &'static str,
        detail: String,
    },
    /// A report was requested for an orientation outside the {1,2} domain.
    #[error("edge {edge} carries weight {weight}, outside {{1,2}}")]
    WeightOutsideDomain { edge: usize, weight: u32 },
    /// The budget ran out inside a solver that must finish to be useful.
    #[error("{solver}: budget exhausted")]
    BudgetExhausted { solver: &'static str },
}

/// Weight menu for the brute-force edge search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcWeights {
    /// All arcs weigh 1 (the proper orientation number).
    Unit,
    /// Arcs weigh 1 or 2 (sufficient for the weighted optimum).
    UpToTwo,
    /// Arcs weigh 1, 2 or 3 (used to confirm 3 never helps).
    UpToThree,
}

impl ArcWeights {
    pub fn values(self) -> &'static [u32] {
        match self {
            ArcWeights::Unit => &[1],
            ArcWeights::UpToTwo => &[1, 2],
            ArcWeights::UpToThree => &[1, 2, 3],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ArcWeights::Unit => "unit",
            ArcWeights::UpToTwo => "up_to_two",
            ArcWeights::UpToThree => "up_to_three",
        }
    }
}

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_millis: None,
    };

    pub fn with_millis(millis: u64) -> Self {
        Budget {
            max_nodes: None,
            max_millis: Some(millis),
        }
    }

    pub fn with_nodes(nodes: u64) -> Self {
        Budget {
            max_nodes: Some(nodes),
            max_millis: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveKind {
    ChiSBrute,
    ChiSLabeling,
    ChiProper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveOutcome {
    /// Proven minimum; the report carries a witness orientation.
    Exact { value: u32 },
    /// Proof that no orientation in the searched family stays within `cap`.
    ExceedsCap { cap: u32 },
    /// Budget ran out. Caps below the recorded bound are refuted; the
    /// remaining caps are undecided.
    BudgetExhausted { proven_infeasible_below: u32 },
}

/// Deterministic search effort counters (single-threaded runs reproduce
/// node counts exactly; multi-worker runs only reproduce the outcome).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub flow_checks: u64,
    pub elapsed_millis: u64,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub kind: SolveKind,
    pub outcome: SolveOutcome,
    /// Present exactly when the outcome is `Exact`.
    pub witness: Option<Orientation>,
    pub stats: SearchStats,
}

impl SolveReport {
    /// The proven minimum, if the search finished with one.
    pub fn value(&self) -> Option<u32> {
        match self.outcome {
            SolveOutcome::Exact { value } => Some(value),
            _ => None,
        }
    }

    pub fn budget_exhausted(&self) -> bool {
        matches!(self.outcome, SolveOutcome::BudgetExhausted { .. })
    }
}

/// Shared effort meter: batches node counts from workers and trips a stop
/// flag when the budget runs out or another worker already found a witness.
pub(crate) struct Meter {
    start: Instant,
    max_nodes: Option<u64>,
    max_millis: Option<u64>,
    nodes: AtomicU64,
    flow_checks: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: &Budget) -> Self {
        Meter {
            start: Instant::now(),
            max_nodes: budget.max_nodes,
            max_millis: budget.max_millis,
            nodes: AtomicU64::new(0),
            flow_checks: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Records `batch` explored nodes; returns false when the search must
    /// stop (budget out, or a concurrent worker finished the job).
    pub(crate) fn spend(&self, batch: u64) -> bool {
        let total = self.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.max_nodes.is_some_and(|cap| total > cap);
        let over_time = self
            .max_millis
            .is_some_and(|cap| self.start.elapsed().as_millis() as u64 > cap);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn count_flow_check(&self) {
        self.flow_checks.fetch_add(1, Ordering::Relaxed);
    }

    /// Stops all workers without marking the budget exhausted (a witness
    /// was found; remaining work is moot).
    pub(crate) fn halt(&self) {
        self.stop.store(true, Ordering::Relaxed);
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            flow_checks: self.flow_checks.load(Ordering::Relaxed),
            elapsed_millis: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Verdict of one fixed-cap feasibility question.
pub(crate) enum Feasibility {
    Found(Vec<Arc>),
    Refuted,
    OutOfBudget,
}

/// Exact weighted orientation number by per-edge enumeration.
///
/// Tries caps 0..=mu_cap in order; the first feasible cap is the minimum.
/// Size guards: 16 edges for the {1,2} menu, 12 for {1,2,3}, 20 for unit.
pub fn chi_s_brute(
    g: &Graph,
    weights: ArcWeights,
    mu_cap: u32,
    budget: &Budget,
) -> Result<SolveReport, ExactError> {
    let limit = match weights {
        ArcWeights::Unit => 20,
        ArcWeights::UpToTwo => 16,
        ArcWeights::UpToThree => 12,
    };
    if g.edge_count() > limit {
        return Err(ExactError::TooLarge {
            solver: "chi_s_brute",
            detail: format!(
                "{} edges exceeds the {} limit for the {} weight menu",
                g.edge_count(),
                limit,
                weights.label()
            ),
        });
    }
    let kind = if weights == ArcWeights::Unit {
        SolveKind::ChiProper
    } else {
        SolveKind::ChiSBrute
    };
    let meter = Meter::new(budget);
    let outcome = cap_ladder(g, mu_cap, &meter, |cap| {
        brute::feasible_orientation(g, weights.values(), cap, &meter)
    });
    Ok(finish(g, kind, outcome, &meter))
}

/// Exact proper orientation number (all weights 1). Guard: 20 edges.
pub fn chi_proper(g: &Graph, mu_cap: u32, budget: &Budget) -> Result<SolveReport, ExactError> {
    chi_s_brute(g, ArcWeights::Unit, mu_cap, budget)
}

/// Exact weighted orientation number by proper-labeling enumeration plus a
/// flow realizability check per complete labeling. No size guard: the
/// search is budgeted instead. `workers > 1` splits the search by fixing
/// the first few label choices; the outcome stays deterministic but node
/// counts do not.
pub fn chi_s_labeling(g: &Graph, mu_cap: u32, budget: &Budget, workers: usize) -> SolveReport {
    let meter = Meter::new(budget);
    let outcome = cap_ladder(g, mu_cap, &meter, |cap| {
        labeling::feasible_labeling(g, cap, &meter, workers)
    });
    finish(g, SolveKind::ChiSLabeling, outcome, &meter)
}

/// Runs the fixed-cap feasibility question for caps 0..=mu_cap ascending.
fn cap_ladder<F>(g: &Graph, mu_cap: u32, meter: &Meter, mut feasible_at: F) -> LadderOutcome
where
    F: FnMut(u32) -> Feasibility,
{
    // An edgeless graph is feasible at cap 0 with no arcs at all.
    if g.edge_count() == 0 {
        return LadderOutcome::Found(0, Vec::new());
    }
    // Any graph with an edge puts weight >= 1 somewhere.
    for cap in 1..=mu_cap {
        if meter.stopped() {
            // A previous rung finished its answer but drained the budget.
            return LadderOutcome::OutOfBudget(cap);
        }
        match feasible_at(cap) {
            Feasibility::Found(arcs) => return LadderOutcome::Found(cap, arcs),
            Feasibility::Refuted => continue,
            Feasibility::OutOfBudget => return LadderOutcome::OutOfBudget(cap),
        }
    }
    LadderOutcome::AllRefuted(mu_cap)
}

enum LadderOutcome {
    Found(u32, Vec<Arc>),
    AllRefuted(u32),
    OutOfBudget(u32),
}

fn finish(g: &Graph, kind: SolveKind, outcome: LadderOutcome, meter: &Meter) -> SolveReport {
    let (outcome, witness) = match outcome {
        LadderOutcome::Found(value, arcs) => {
            let witness = Orientation::new(g, arcs);
            debug_assert_eq!(witness.mu(), value);
            (SolveOutcome::Exact { value }, Some(witness))
        }
        LadderOutcome::AllRefuted(cap) => (SolveOutcome::ExceedsCap { cap }, None),
        LadderOutcome::OutOfBudget(cap) => (
            SolveOutcome::BudgetExhausted {
                proven_infeasible_below: cap,
            },
            None,
        ),
    };
    SolveReport {
        kind,
        outcome,
        witness,
        stats: meter.stats(),
    }
}

/// How an orientation spends its in-weight: per-value vertex class sizes,
/// the total, and the surcharge above one unit per edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub mu: u32,
    /// `class_sizes[i]` = number of vertices with in-weight exactly i.
    pub class_sizes: Vec<u64>,
    /// Sum of all in-weights; always `edge_count + weight_two_arcs`.
    pub total_in_weight: u64,
    pub edge_count: u64,
    pub weight_two_arcs: u64,
}

/// Accounts for the in-weight budget of a {1,2}-weighted orientation.
pub fn tightness_report(g: &Graph, o: &Orientation) -> Result<TightnessReport, ExactError> {
    for (edge, arc) in o.arcs().iter().enumerate() {
        if arc.weight != 1 && arc.weight != 2 {
            return Err(ExactError::WeightOutsideDomain {
                edge,
                weight: arc.weight,
            });
        }
    }
    let mu = o.mu();
    let mut class_sizes = vec![0u64; mu as usize + 1];
    let mut total = 0u64;
    for &w in o.in_weights() {
        class_sizes[w as usize] += 1;
        total += w as u64;
    }
    let report = TightnessReport {
        mu,
        class_sizes,
        total_in_weight: total,
        edge_count: g.edge_count() as u64,
        weight_two_arcs: o.weight_two_count() as u64,
    };
    debug_assert_eq!(
        report.total_in_weight,
        report.edge_count + report.weight_two_arcs
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family, GeneratorSpec};
    use crate::graph::parse_graph;
    use crate::validate::{validate_orientation, ValidateOptions};

    fn graph(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    /// The worked example: two triangles joined by a bridge, the smallest
    /// cactus needing maximum in-weight 3.
    fn figure_cactus() -> Graph {
        graph("6 7\n0 1\n0 2\n1 2\n2 3\n3 4\n3 5\n4 5\n")
    }

    fn bowtie() -> Graph {
        graph("5 6\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n")
    }

    fn solve(g: &Graph, weights: ArcWeights) -> SolveReport {
        chi_s_brute(g, weights, 8, &Budget::UNLIMITED).unwrap()
    }

    fn check_witness(g: &Graph, report: &SolveReport) {
        let witness = report.witness.as_ref().expect("exact outcome has witness");
        let verdict = validate_orientation(
            g,
            witness,
            &ValidateOptions {
                mu_bound: report.value(),
                weight_domain: None,
            },
        );
        assert!(verdict.accepted, "witness rejected: {:?}", verdict.violations);
    }

    #[test]
    fn brute_matches_hand_computed_values() {
        // (graph, weighted value, unit value) both verified by hand.
        let cases: Vec<(&str, Graph, u32, u32)> = vec![
            ("p3", graph("3 2\n0 1\n1 2\n"), 1, 1),
            ("p4", graph("4 3\n0 1\n1 2\n2 3\n"), 2, 2),
            ("c4", graph("4 4\n0 1\n1 2\n2 3\n3 0\n"), 2, 2),
            ("c5", graph("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"), 2, 2),
            ("k3", graph("3 3\n0 1\n0 2\n1 2\n"), 2, 2),
            ("k4", graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"), 3, 3),
            ("star", graph("5 4\n0 1\n0 2\n0 3\n0 4\n"), 1, 1),
            ("bowtie", bowtie(), 2, 2),
        ];
        for (name, g, weighted, unit) in cases {
            let report = solve(&g, ArcWeights::UpToTwo);
            assert_eq!(report.value(), Some(weighted), "weighted value for {name}");
            check_witness(&g, &report);
            let report = chi_proper(&g, 8, &Budget::UNLIMITED).unwrap();
            assert_eq!(report.value(), Some(unit), "unit value for {name}");
            check_witness(&g, &report);
        }
    }

    #[test]
    fn worked_example_needs_three() {
        let g = figure_cactus();
        let report = solve(&g, ArcWeights::UpToTwo);
        assert_eq!(report.value(), Some(3));
        check_witness(&g, &report);
    }

    #[test]
    fn edgeless_graph_solves_at_zero() {
        let g = graph("3 0\n");
        let report = solve(&g, ArcWeights::UpToTwo);
        assert_eq!(report.value(), Some(0));
        assert_eq!(report.witness.as_ref().unwrap().arcs().len(), 0);
    }

    #[test]
    fn exceeding_the_cap_is_reported_as_a_certificate() {
        let g = graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        let report = chi_s_brute(&g, ArcWeights::UpToTwo, 2, &Budget::UNLIMITED).unwrap();
        assert_eq!(report.outcome, SolveOutcome::ExceedsCap { cap: 2 });
        assert!(report.witness.is_none());
    }

    #[test]
    fn size_guards_reject_oversized_instances() {
        let big = generate(&GeneratorSpec {
            family: Family::Cycle { vertices: 21 },
            seed: 0,
        })
        .unwrap()
        .graph;
        assert!(matches!(
            chi_s_brute(&big, ArcWeights::UpToTwo, 3, &Budget::UNLIMITED),
            Err(ExactError::TooLarge { .. })
        ));
        let thirteen = generate(&GeneratorSpec {
            family: Family::Cycle { vertices: 13 },
            seed: 0,
        })
        .unwrap()
        .graph;
        assert!(matches!(
            chi_s_brute(&thirteen, ArcWeights::UpToThree, 3, &Budget::UNLIMITED),
            Err(ExactError::TooLarge { .. })
        ));
        // The same instance passes under the wider {1,2} guard.
        assert!(chi_s_brute(&thirteen, ArcWeights::UpToTwo, 3, &Budget::UNLIMITED).is_ok());
    }

    #[test]
    fn node_budget_exhaustion_is_an_outcome_not_an_error() {
        let g = figure_cactus();
        let report = chi_s_brute(&g, ArcWeights::UpToTwo, 3, &Budget::with_nodes(4)).unwrap();
        assert!(report.budget_exhausted());
        // The first rung (cap 1) completes its refutation before the first
        // budget poll, so cap 2 is where the search gives up.
        assert!(matches!(
            report.outcome,
            SolveOutcome::BudgetExhausted {
                proven_infeasible_below: 2
            }
        ));
    }

    #[test]
    fn node_counts_are_deterministic_across_runs() {
        let g = bowtie();
        let a = solve(&g, ArcWeights::UpToTwo);
        let b = solve(&g, ArcWeights::UpToTwo);
        assert_eq!(a.stats.nodes, b.stats.nodes);
        let a = chi_s_labeling(&g, 4, &Budget::UNLIMITED, 1);
        let b = chi_s_labeling(&g, 4, &Budget::UNLIMITED, 1);
        assert_eq!(a.stats.nodes, b.stats.nodes);
        assert_eq!(a.stats.flow_checks, b.stats.flow_checks);
    }

    #[test]
    fn labeling_agrees_with_brute_on_fixtures() {
        let fixtures = vec![
            graph("4 3\n0 1\n1 2\n2 3\n"),
            graph("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"),
            graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"),
            bowtie(),
            figure_cactus(),
        ];
        for g in fixtures {
            let brute = solve(&g, ArcWeights::UpToTwo);
            let labeled = chi_s_labeling(&g, 8, &Budget::UNLIMITED, 1);
            assert_eq!(brute.value(), labeled.value());
            check_witness(&g, &labeled);
        }
    }

    #[test]
    fn labeling_with_workers_matches_sequential_value() {
        let g = figure_cactus();
        let sequential = chi_s_labeling(&g, 8, &Budget::UNLIMITED, 1);
        let parallel = chi_s_labeling(&g, 8, &Budget::UNLIMITED, 3);
        assert_eq!(sequential.value(), parallel.value());
        assert_eq!(sequential.value(), Some(3));
        check_witness(&g, &parallel);
    }

    #[test]
    fn labeling_certifies_infeasible_caps() {
        let g = graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        let report = chi_s_labeling(&g, 2, &Budget::UNLIMITED, 1);
        assert_eq!(report.outcome, SolveOutcome::ExceedsCap { cap: 2 });
    }

    #[test]
    fn three_weights_never_beat_two_on_small_graphs() {
        // Spot fixtures; the wider randomized sweep lives in the
        // acceptance suite.
        for g in [
            figure_cactus(),
            bowtie(),
            graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"),
            graph("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"),
        ] {
            let two = solve(&g, ArcWeights::UpToTwo);
            let three = solve(&g, ArcWeights::UpToThree);
            assert_eq!(two.value(), three.value());
        }
    }

    #[test]
    fn tightness_accounts_for_every_unit_of_in_weight() {
        let g = figure_cactus();
        let report = solve(&g, ArcWeights::UpToTwo);
        let o = report.witness.unwrap();
        let t = tightness_report(&g, &o).unwrap();
        assert_eq!(t.mu, 3);
        assert_eq!(t.class_sizes.iter().sum::<u64>(), 6);
        assert_eq!(t.total_in_weight, t.edge_count + t.weight_two_arcs);
        assert!(t.total_in_weight >= t.edge_count);
    }

    #[test]
    fn tightness_rejects_weights_outside_the_domain() {
        let g = graph("2 1\n0 1\n");
        let o = Orientation::new(
            &g,
            vec![Arc {
                head: 1,
                weight: 3,
            }],
        );
        assert_eq!(
            tightness_report(&g, &o),
            Err(ExactError::WeightOutsideDomain { edge: 0, weight: 3 })
        );
    }
}
