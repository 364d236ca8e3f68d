//! Path gadgets: orientations of a path with prescribed or forbidden
//! in-weights at chosen positions.
//!
//! A gadget orients the path `p0 p1 ... p(n-1)` and assigns each edge a
//! weight from a small domain so that adjacent positions get distinct
//! in-weights. The cycle and ear orienters consume gadgets whose two ends
//! are pinned to in-weight 0, which lets a gadget be grafted onto existing
//! vertices without disturbing them.
//!
//! Synthesis is a complete search over per-edge `(direction, weight)`
//! choices with dead-state memoization, so a `None` answer is a proof that
//! no gadget satisfies the spec at this length/domain/cap. Ties are broken
//! by the lexicographically smallest arc vector, where per edge
//! `(forward, 1) < (forward, 2) < (backward, 1) < (backward, 2)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Allowed edge weights for a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightDomain {
    /// Weights are all 1.
    Unit,
    /// Weights are 1 or 2.
    OneTwo,
}

impl WeightDomain {
    pub fn weights(self) -> &'static [u32] {
        match self {
            WeightDomain::Unit => &[1],
            WeightDomain::OneTwo => &[1, 2],
        }
    }

    pub fn contains(self, w: u32) -> bool {
        self.weights().contains(&w)
    }
}

/// Constraints for a path gadget. Positions are 0-based vertex indices
/// along the path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    pub length: usize,
    pub weight_domain: WeightDomain,
    pub mu_cap: u32,
    pub require: BTreeMap<usize, u32>,
    pub avoid: BTreeMap<usize, BTreeSet<u32>>,
}

impl GadgetSpec {
    pub fn new(length: usize, weight_domain: WeightDomain, mu_cap: u32) -> Self {
        assert!(length >= 2, "a path needs at least two vertices");
        GadgetSpec {
            length,
            weight_domain,
            mu_cap,
            require: BTreeMap::new(),
            avoid: BTreeMap::new(),
        }
    }

    /// Pin position `pos` to in-weight `value`.
    pub fn require(mut self, pos: usize, value: u32) -> Self {
        assert!(pos < self.length, "position out of range");
        assert!(value <= self.mu_cap, "required value above cap");
        assert!(
            !self.avoid.get(&pos).is_some_and(|s| s.contains(&value)),
            "position both required and avoided at the same value"
        );
        self.require.insert(pos, value);
        self
    }

    /// Forbid in-weight `value` at position `pos`.
    pub fn avoid(mut self, pos: usize, value: u32) -> Self {
        assert!(pos < self.length, "position out of range");
        assert!(
            self.require.get(&pos) != Some(&value),
            "position both required and avoided at the same value"
        );
        self.avoid.entry(pos).or_default().insert(value);
        self
    }

    pub fn avoid_all<I: IntoIterator<Item = u32>>(mut self, pos: usize, values: I) -> Self {
        for v in values {
            self = self.avoid(pos, v);
        }
        self
    }

    /// Both ends pinned to in-weight 0, the usual grafting contract.
    pub fn with_zero_ends(self) -> Self {
        let n = self.length;
        self.require(0, 0).require(n - 1, 0)
    }

    fn allows(&self, pos: usize, value: u32) -> bool {
        if value > self.mu_cap {
            return false;
        }
        if let Some(&req) = self.require.get(&pos) {
            if req != value {
                return false;
            }
        }
        if let Some(set) = self.avoid.get(&pos) {
            if set.contains(&value) {
                return false;
            }
        }
        true
    }
}

/// One oriented path edge: `forward` points from position `i` to `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathArc {
    pub forward: bool,
    pub weight: u32,
}

/// A concrete path orientation satisfying its spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub spec: GadgetSpec,
    pub arcs: Vec<PathArc>,
    pub in_profile: Vec<u32>,
}

impl Gadget {
    /// In-weights implied by the arcs, independent of `in_profile`.
    pub fn recompute_profile(&self) -> Vec<u32> {
        profile_of(self.spec.length, &self.arcs)
    }
}

fn profile_of(length: usize, arcs: &[PathArc]) -> Vec<u32> {
    let mut profile = vec![0u32; length];
    for (i, arc) in arcs.iter().enumerate() {
        let head = if arc.forward { i + 1 } else { i };
        profile[head] += arc.weight;
    }
    profile
}

/// Finds the lexicographically smallest gadget for `spec`, or proves none
/// exists. The search is complete: every `(direction, weight)` assignment
/// is covered, with memoized dead states keeping long paths linear.
pub fn synthesize(spec: &GadgetSpec) -> Option<Gadget> {
    let n = spec.length;
    let weights = spec.weight_domain.weights();
    let mut arcs: Vec<PathArc> = Vec::with_capacity(n - 1);
    let mut dead: HashSet<(usize, u32, Option<u32>)> = HashSet::new();

    // Search over edges 0..n-1; edge i finalizes vertex i's in-weight
    // (carry from edge i-1 plus this edge's backward contribution).
    fn descend(
        spec: &GadgetSpec,
        weights: &[u32],
        edge: usize,
        carry: u32,
        prev: Option<u32>,
        arcs: &mut Vec<PathArc>,
        dead: &mut HashSet<(usize, u32, Option<u32>)>,
    ) -> bool {
        let n = spec.length;
        if edge == n - 1 {
            // All edges placed; the carry is the last vertex's in-weight.
            let last = carry;
            return spec.allows(n - 1, last) && prev != Some(last);
        }
        if dead.contains(&(edge, carry, prev)) {
            return false;
        }
        for &forward in &[true, false] {
            for &w in weights {
                let here = carry + if forward { 0 } else { w };
                if !spec.allows(edge, here) || prev == Some(here) {
                    continue;
                }
                let next_carry = if forward { w } else { 0 };
                arcs.push(PathArc { forward, weight: w });
                if descend(spec, weights, edge + 1, next_carry, Some(here), arcs, dead) {
                    return true;
                }
                arcs.pop();
            }
        }
        dead.insert((edge, carry, prev));
        false
    }

    if descend(spec, weights, 0, 0, None, &mut arcs, &mut dead) {
        let in_profile = profile_of(n, &arcs);
        Some(Gadget {
            spec: spec.clone(),
            arcs,
            in_profile,
        })
    } else {
        None
    }
}

/// The same gadget walked from the other end: positions, constraints and
/// arcs all reversed.
pub fn reverse(g: &Gadget) -> Gadget {
    let n = g.spec.length;
    let mut spec = GadgetSpec::new(n, g.spec.weight_domain, g.spec.mu_cap);
    for (&pos, &v) in &g.spec.require {
        spec = spec.require(n - 1 - pos, v);
    }
    for (&pos, set) in &g.spec.avoid {
        for &v in set {
            spec = spec.avoid(n - 1 - pos, v);
        }
    }
    let arcs: Vec<PathArc> = g
        .arcs
        .iter()
        .rev()
        .map(|a| PathArc {
            forward: !a.forward,
            weight: a.weight,
        })
        .collect();
    let in_profile = profile_of(n, &arcs);
    Gadget {
        spec,
        arcs,
        in_profile,
    }
}

/// Long all-weight-one pattern with near-end in-weights (2, 2) and a 0 two
/// before the far end. Valid for `n >= 7`.
pub fn long_pattern_a(n: usize) -> GadgetSpec {
    assert!(n >= 7);
    GadgetSpec::new(n, WeightDomain::Unit, 2)
        .with_zero_ends()
        .require(1, 2)
        .require(n - 3, 0)
        .require(n - 2, 2)
}

/// Long all-weight-one pattern with near-end in-weights (1, 1). Valid for
/// `n >= 7`.
pub fn long_pattern_b(n: usize) -> GadgetSpec {
    assert!(n >= 7);
    GadgetSpec::new(n, WeightDomain::Unit, 2)
        .with_zero_ends()
        .require(1, 1)
        .require(2, 2)
        .require(n - 4, 0)
        .require(n - 3, 2)
        .require(n - 2, 1)
}

/// Long all-weight-one pattern with near-end in-weights (1, 2). Valid for
/// `n >= 7`.
pub fn long_pattern_c(n: usize) -> GadgetSpec {
    assert!(n >= 7);
    GadgetSpec::new(n, WeightDomain::Unit, 2)
        .with_zero_ends()
        .require(1, 1)
        .require(n - 3, 0)
        .require(n - 2, 2)
}

/// A named entry of the fixed pattern catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: GadgetSpec,
}

/// The catalog of path patterns the orienters draw from: zero-ended paths
/// with pinned interior profiles. Names encode length and variant; `u` means
/// unit weights, `w` means weights in {1, 2}.
pub fn catalog() -> Vec<CatalogEntry> {
    let zero = |n, dom, cap| GadgetSpec::new(n, dom, cap).with_zero_ends();
    vec![
        CatalogEntry {
            name: "u7a",
            spec: long_pattern_a(7),
        },
        CatalogEntry {
            name: "u7b",
            spec: long_pattern_b(7),
        },
        CatalogEntry {
            name: "u7c",
            spec: long_pattern_c(7),
        },
        CatalogEntry {
            name: "u6a",
            spec: zero(6, WeightDomain::Unit, 2)
                .require(1, 2)
                .require(2, 0)
                .require(3, 1)
                .require(4, 2),
        },
        CatalogEntry {
            name: "u6b",
            spec: zero(6, WeightDomain::Unit, 2)
                .require(1, 1)
                .require(2, 2)
                .require(3, 0)
                .require(4, 2),
        },
        CatalogEntry {
            name: "u5a",
            spec: zero(5, WeightDomain::Unit, 2)
                .require(1, 1)
                .require(2, 2)
                .require(3, 1),
        },
        CatalogEntry {
            name: "u5b",
            spec: zero(5, WeightDomain::Unit, 2)
                .require(1, 2)
                .require(2, 0)
                .require(3, 2),
        },
        CatalogEntry {
            name: "u4",
            spec: zero(4, WeightDomain::Unit, 2).require(1, 1).require(2, 2),
        },
        CatalogEntry {
            name: "u3",
            spec: zero(3, WeightDomain::Unit, 2).require(1, 2),
        },
        CatalogEntry {
            name: "w3a",
            spec: zero(3, WeightDomain::OneTwo, 3).require(1, 3),
        },
        CatalogEntry {
            name: "w3b",
            spec: zero(3, WeightDomain::OneTwo, 4).require(1, 4),
        },
        CatalogEntry {
            name: "w4a",
            spec: zero(4, WeightDomain::OneTwo, 3)
                .require(1, 2)
                .require(2, 3),
        },
        CatalogEntry {
            name: "w4b",
            spec: zero(4, WeightDomain::OneTwo, 3)
                .require(1, 1)
                .require(2, 3),
        },
        CatalogEntry {
            name: "w5",
            spec: zero(5, WeightDomain::OneTwo, 3)
                .require(1, 2)
                .require(2, 0)
                .require(3, 3),
        },
        CatalogEntry {
            name: "w6",
            spec: zero(6, WeightDomain::OneTwo, 3)
                .require(1, 1)
                .require(2, 3)
                .require(3, 2)
                .require(4, 1),
        },
    ]
}

/// Catalog lookup by name. Panics on unknown names; the orienter only asks
/// for entries it spelled itself.
pub fn catalog_spec(name: &str) -> GadgetSpec {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("unknown catalog entry {name}"))
        .spec
}
