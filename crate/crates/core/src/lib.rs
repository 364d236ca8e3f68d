//! Semi-proper orientations of cacti and ear-peelable graphs.
//!
//! A semi-proper orientation of an undirected graph assigns every edge a
//! direction and a positive integer weight so that adjacent vertices have
//! distinct in-weights (the in-weight of v is the total weight of arcs
//! pointing at v). This crate constructs such orientations with small
//! maximum in-weight for two graph classes, and ships exact solvers to
//! certify that the bounds cannot be improved:
//!
//! - cacti (every block an edge or a cycle): maximum in-weight <= 3, and
//!   there is a 6-vertex cactus where 3 is necessary;
//! - ear-peelable graphs (every block reduces to a cycle by repeatedly
//!   removing degree-2 chains with adjacent attachments — a superclass of
//!   the 2-connected outerplanar graphs): maximum in-weight <= 4.
//!
//! Modules, bottom up: [`graph`] holds the graph/orientation types and file
//! formats; [`gadget`] synthesizes oriented paths with prescribed in-weight
//! profiles; [`decompose`] computes block-cut structure and ear peelings;
//! [`generate`] builds seeded test families; [`validate`] is the
//! independent checker everything is tested against; [`orient`] implements
//! the constructive algorithms; [`exact`] has the brute-force and
//! labeling-plus-flow solvers used for tightness certification.

pub mod decompose;
pub mod exact;
pub mod gadget;
pub mod generate;
pub mod graph;
pub mod orient;
pub mod validate;
