//! Power-cost Hamiltonian cycles, paths, spanning trees and matchings for
//! point sets in the unit cube.
//!
//! For a graph `G` on points of `[0,1]^k` the cost is `S_k(G) = Σ |e|^k`, and
//! `s_k(G) = S_k(G)^{1/k}`. The crate builds tours with provable bounds on
//! `s_k` (MST plus cube-of-tree traversal, greedy path merging, a two-phase
//! combination, Newman's planar recursion), solves small instances exactly,
//! and checks the supporting inequalities instance by instance.
//!
//! ```
//! use powertour::{constructions, mst_sekanina_tour};
//!
//! let points = constructions::uniform_cube(3, 50, 7).unwrap();
//! let (tour, report) = mst_sekanina_tour(&points, 3).unwrap();
//! assert_eq!(tour.len(), 50);
//! assert!(report.all_certified_pass());
//! ```

pub mod constructions;
pub mod dsu;
pub mod error;
pub mod geometry;
pub mod graphs;
pub mod greedy;
pub mod io;
pub mod mst;
pub mod oracle;
pub mod planar;
pub mod sekanina;
pub mod two_phase;
pub mod verifiers;

pub use error::{Error, Result};
pub use geometry::{
    named_bounds, power_cost, Container, Edge, NamedBounds, Point, PointSet, PowerCost, Tolerance,
};
pub use graphs::{
    close_path, cycle_to_matchings, validate, HamPath, Matching, PathSystem, SpanningTree, Tour,
    Validate, Violation,
};
pub use greedy::{greedy_edge_count_by_length, greedy_ham_path, GreedyRun};
pub use mst::{build_mst, build_threshold_forest, mst_ball_packing_check};
pub use oracle::{exact_min_matching, exact_min_path, exact_min_tour};
pub use planar::newman_square_tour;
pub use sekanina::{mst_sekanina_tour, tree_cube_cycle, tree_to_cycle_cost_bound, UsageCertificate};
pub use two_phase::{two_phase_tour, PhaseReport};
pub use verifiers::{bound_report, Algorithm, AlgorithmResult, BoundReport};
