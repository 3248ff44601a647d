//! Greedy path merging: repeatedly add the cheapest edge whose insertion keeps
//! the graph a vertex-disjoint union of paths, until one Hamiltonian path is left.
//!
//! An edge that cannot be inserted now can never be inserted later (degrees
//! only grow and components only merge), so scanning all endpoint pairs once in
//! `(weight, min index, max index)` order picks, at every step, the minimum
//! admissible edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Edge, PointSet};
use crate::graphs::{EdgeListRecord, HamPath, PathSystem, Validate};
use crate::mst::sorted_candidates;

/// Output of [`greedy_ham_path`]: the path and the inserted edges in order.
#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub path: HamPath,
    pub trace: Vec<Edge>,
}

impl GreedyRun {
    pub fn trace_record(&self) -> EdgeListRecord {
        EdgeListRecord::new(&self.trace, None)
    }
}

/// Greedy Hamiltonian path, optionally continuing from an existing path system.
pub fn greedy_ham_path(points: &PointSet, warm_start: Option<PathSystem>) -> Result<GreedyRun> {
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid("the greedy path needs at least 2 points"));
    }
    let mut system = match warm_start {
        Some(sys) => {
            let problems = sys.violations(points);
            if !problems.is_empty() {
                return Err(Error::invalid(format!(
                    "invalid warm start: {}",
                    problems.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
                )));
            }
            sys
        }
        None => PathSystem::new(n),
    };
    let endpoints: Vec<usize> = (0..n).filter(|&v| system.is_endpoint(v)).collect();
    let mut trace = Vec::with_capacity(system.path_count().saturating_sub(1));
    if system.path_count() > 1 {
        for (w, u, v) in sorted_candidates(points, &endpoints, |_| true) {
            let (u, v) = (u as usize, v as usize);
            if system.can_join(u, v) {
                let e = Edge { u, v, weight: w };
                system.join(e)?;
                trace.push(e);
                if system.path_count() == 1 {
                    break;
                }
            }
        }
    }
    let path = system.to_ham_path(points)?;
    Ok(GreedyRun { path, trace })
}

/// Number of edges with `|e|² >= j`.
///
/// Squared lengths are compared with a `1e-9` slack so that integer squared
/// lengths on cube vertices are counted exactly.
pub fn greedy_edge_count_by_length(trace: &[Edge], j: u32) -> usize {
    let threshold = f64::from(j) - 1e-9;
    trace.iter().filter(|e| e.weight * e.weight >= threshold).count()
}

/// Edge counts by squared length relative to `k`: short `<= k/5`, medium
/// `<= 3k/5`, long `<= 2k/3`, very long above.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClasses {
    pub short: usize,
    pub medium: usize,
    pub long: usize,
    pub very_long: usize,
}

pub fn classify_edges(edges: &[Edge], k: u32) -> EdgeClasses {
    let kf = f64::from(k);
    let slack = 1e-9 * kf.max(1.0);
    let mut classes = EdgeClasses::default();
    for e in edges {
        let sq = e.weight * e.weight;
        if sq <= kf / 5.0 + slack {
            classes.short += 1;
        } else if sq <= 3.0 * kf / 5.0 + slack {
            classes.medium += 1;
        } else if sq <= 2.0 * kf / 3.0 + slack {
            classes.long += 1;
        } else {
            classes.very_long += 1;
        }
    }
    classes
}

/// [`classify_edges`] over a path.
pub fn classify_path(path: &HamPath, k: u32) -> EdgeClasses {
    classify_edges(path.edges(), k)
}
