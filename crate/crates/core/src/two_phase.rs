//! Two-phase tour: a threshold forest is turned into one cube-of-tree cycle per
//! tree, each cycle loses its heaviest edge, and the greedy path builder
//! finishes from that path system before the path is closed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::graphs::{close_path, CostBlock, PathSystem, Tour};
use crate::greedy::greedy_ham_path;
use crate::mst::build_threshold_forest;
use crate::sekanina::tree_to_cycle_cost_bound;

/// Per-phase costs of a two-phase run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub cutoff: f64,
    pub tree_count: usize,
    /// Trees with at least 3 vertices, converted to cycles.
    pub cycle_count: usize,
    /// Σ S_k(T_i) over the threshold forest.
    pub forest: CostBlock,
    /// Σ S_k(H_i) over the per-tree cycles.
    pub cycles: CostBlock,
    /// The warm-start path system F_0.
    pub warm_start: CostBlock,
    /// Edges added by the greedy phase.
    pub greedy_added: CostBlock,
    pub path: CostBlock,
    pub tour: CostBlock,
}

/// Default forest threshold `k^{-1/4}`.
pub fn default_cutoff(k: u32) -> f64 {
    f64::from(k.max(1)).powf(-0.25)
}

/// Runs both phases and closes the resulting path.
pub fn two_phase_tour(
    points: &PointSet,
    k: u32,
    cutoff: Option<f64>,
) -> Result<(Tour, PhaseReport)> {
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    if points.len() < 2 {
        return Err(Error::invalid("a tour needs at least 2 points"));
    }
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(k));
    if cutoff.is_nan() || cutoff < 0.0 {
        return Err(Error::invalid("cutoff must be a nonnegative number"));
    }

    let forest = build_threshold_forest(points, cutoff);
    let mut forest_edges = Vec::new();
    let mut cycle_edges = Vec::new();
    let mut paths = Vec::with_capacity(forest.len());
    let mut cycle_count = 0;
    for tree in &forest {
        forest_edges.extend_from_slice(tree.edges());
        match tree.n() {
            1 => paths.push(tree.vertices().to_vec()),
            2 => paths.push(tree.vertices().to_vec()),
            _ => {
                let cb = tree_to_cycle_cost_bound(tree, points, k)?;
                cycle_count += 1;
                cycle_edges.extend_from_slice(cb.tour.edges());
                // Drop the heaviest edge; the first one wins ties.
                let heaviest = cb
                    .tour
                    .edges()
                    .iter()
                    .enumerate()
                    .fold(0, |best, (i, e)| {
                        if e.weight > cb.tour.edges()[best].weight {
                            i
                        } else {
                            best
                        }
                    });
                paths.push(cb.tour.open_at(points, heaviest)?.order().to_vec());
            }
        }
    }
    let warm = PathSystem::from_paths(points, &paths)?;
    let warm_cost = warm.cost(k);
    let run = greedy_ham_path(points, Some(warm))?;
    let tour = close_path(&run.path, points)?;

    let cost = |edges: &[crate::geometry::Edge]| {
        CostBlock::from(&crate::geometry::PowerCost::of_edges(k, edges))
    };
    let report = PhaseReport {
        cutoff,
        tree_count: forest.len(),
        cycle_count,
        forest: cost(&forest_edges),
        cycles: cost(&cycle_edges),
        warm_start: CostBlock::from(&warm_cost),
        greedy_added: cost(&run.trace),
        path: CostBlock::from(&run.path.cost(k)),
        tour: CostBlock::from(&tour.cost(k)),
    };
    Ok((tour, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Container;
    use crate::graphs::Validate;
    use crate::greedy::greedy_ham_path;

    fn pts(rows: Vec<Vec<f64>>) -> PointSet {
        PointSet::from_rows(rows, Container::UnitCube).unwrap()
    }

    #[test]
    fn spread_points_reduce_to_plain_greedy() {
        let p = pts(vec![vec![0., 0.], vec![1., 0.], vec![1., 1.], vec![0., 1.]]);
        let (tour, report) = two_phase_tour(&p, 2, None).unwrap();
        assert_eq!(report.tree_count, 4);
        assert_eq!(report.warm_start.unscaled, Some(0.0));
        let greedy = close_path(&greedy_ham_path(&p, None).unwrap().path, &p).unwrap();
        assert_eq!(tour, greedy);
    }

    #[test]
    fn degenerate_inputs_give_valid_tours() {
        let p = pts(vec![vec![0.3, 0.3], vec![0.3, 0.3], vec![0.3, 0.3]]);
        let (tour, report) = two_phase_tour(&p, 2, None).unwrap();
        assert!(tour.is_valid(&p));
        assert_eq!(report.tree_count, 1);
        let p = pts(vec![vec![0.1, 0.9], vec![0.8, 0.2]]);
        let (tour, _) = two_phase_tour(&p, 2, None).unwrap();
        assert_eq!(tour.len(), 2);
        assert!(two_phase_tour(&p, 2, Some(f64::NAN)).is_err());
    }

    #[test]
    fn default_cutoff_value() {
        assert!((default_cutoff(16) - 0.5).abs() < 1e-15);
    }
}
