//! Euclidean minimum spanning trees and threshold-restricted forests.
//!
//! Kruskal over all `n(n-1)/2` pairs. Edges are ordered by
//! `(weight, min index, max index)`, which is a strict total order, so the
//! resulting tree is unique and reproducible.

use std::cmp::Ordering;

use crate::dsu::DisjointSets;
use crate::geometry::{squared_distance, Edge, PointSet, Tolerance};
use crate::graphs::SpanningTree;

/// Candidate edge `(weight, u, v)` with `u < v`.
pub(crate) type Candidate = (f64, u32, u32);

pub(crate) fn candidate_order(a: &Candidate, b: &Candidate) -> Ordering {
    a.0.total_cmp(&b.0)
        .then(a.1.cmp(&b.1))
        .then(a.2.cmp(&b.2))
}

/// Every pair among `vertices` whose distance passes `keep`, sorted.
pub(crate) fn sorted_candidates(
    points: &PointSet,
    vertices: &[usize],
    keep: impl Fn(f64) -> bool,
) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (a, &u) in vertices.iter().enumerate() {
        let pu = points.point(u).coords();
        for &v in &vertices[a + 1..] {
            let w = squared_distance(pu, points.point(v).coords()).sqrt();
            if keep(w) {
                let (lo, hi) = (u.min(v), u.max(v));
                out.push((w, lo as u32, hi as u32));
            }
        }
    }
    out.sort_unstable_by(candidate_order);
    out
}

fn kruskal(points: &PointSet, cutoff: Option<f64>) -> (DisjointSets, Vec<Edge>) {
    let n = points.len();
    let all: Vec<usize> = (0..n).collect();
    let candidates = sorted_candidates(points, &all, |w| cutoff.is_none_or(|c| w <= c));
    let mut dsu = DisjointSets::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (w, u, v) in candidates {
        if edges.len() + 1 == n {
            break;
        }
        let (u, v) = (u as usize, v as usize);
        if dsu.union(u, v) {
            edges.push(Edge { u, v, weight: w });
        }
    }
    (dsu, edges)
}

/// Minimum spanning tree of the whole point set.
pub fn build_mst(points: &PointSet) -> SpanningTree {
    let (_, edges) = kruskal(points, None);
    SpanningTree::from_parts((0..points.len()).collect(), edges)
}

/// Kruskal restricted to edges of length at most `cutoff`: one tree per
/// component, ordered by smallest vertex. Singleton components are included.
pub fn build_threshold_forest(points: &PointSet, cutoff: f64) -> Vec<SpanningTree> {
    let cutoff = cutoff.max(0.0);
    let (mut dsu, edges) = kruskal(points, Some(cutoff));
    let n = points.len();
    let mut slot = vec![usize::MAX; n];
    let mut groups: Vec<(Vec<usize>, Vec<Edge>)> = Vec::new();
    for v in 0..n {
        let r = dsu.find(v);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push((Vec::new(), Vec::new()));
        }
        groups[slot[r]].0.push(v);
    }
    for e in edges {
        let r = dsu.find(e.u);
        groups[slot[r]].1.push(e);
    }
    groups
        .into_iter()
        .map(|(vertices, edges)| SpanningTree::from_parts(vertices, edges))
        .collect()
}

/// Pairs of tree edges `(i, j)`, `i < j`, whose open mid-balls of radius `|e|/4`
/// overlap. Empty for every minimum spanning tree.
pub fn mst_ball_packing_check(tree: &SpanningTree, points: &PointSet) -> Vec<(usize, usize)> {
    mst_ball_packing_check_with(tree, points, Tolerance::default())
}

pub fn mst_ball_packing_check_with(
    tree: &SpanningTree,
    points: &PointSet,
    tol: Tolerance,
) -> Vec<(usize, usize)> {
    let centers: Vec<Vec<f64>> = tree
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (points.point(e.u).coords(), points.point(e.v).coords());
            a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
        })
        .collect();
    let edges = tree.edges();
    let mut bad = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let gap = squared_distance(&centers[i], &centers[j]).sqrt();
            let radii = 0.25 * (edges[i].weight + edges[j].weight);
            if !tol.ge(gap, radii) {
                bad.push((i, j));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Container;
    use crate::graphs::Validate;

    fn pts(rows: Vec<Vec<f64>>) -> PointSet {
        PointSet::from_rows(rows, Container::UnitCube).unwrap()
    }

    #[test]
    fn unit_square_mst_weighs_three() {
        let p = pts(vec![vec![0., 0.], vec![1., 0.], vec![1., 1.], vec![0., 1.]]);
        let t = build_mst(&p);
        assert!(t.violations(&p).is_empty());
        assert!((t.total_weight() - 3.0).abs() < 1e-12);
        // Ties resolve by (min, max) index: (0,1), (0,3), (1,2).
        let keys: Vec<_> = t.edges().iter().map(|e| e.key()).collect();
        assert_eq!(keys, vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn small_cases() {
        let p = pts(vec![vec![0.2, 0.3], vec![0.9, 0.1]]);
        let t = build_mst(&p);
        assert_eq!(t.edges().len(), 1);
        let p = pts(vec![vec![0.0], vec![1.0], vec![0.5]]);
        let t = build_mst(&p);
        let keys: Vec<_> = t.edges().iter().map(|e| e.key()).collect();
        assert_eq!(keys, vec![(0, 2), (1, 2)]);
        assert!((t.total_weight() - 1.0).abs() < 1e-12);
        let p = pts(vec![vec![0.4, 0.4]]);
        assert_eq!(build_mst(&p).n(), 1);
    }

    #[test]
    fn threshold_extremes() {
        let p = pts(vec![vec![0.1, 0.1], vec![0.5, 0.2], vec![0.9, 0.8], vec![0.3, 0.7]]);
        let forest = build_threshold_forest(&p, 0.0);
        assert_eq!(forest.len(), 4);
        assert!(forest.iter().all(|t| t.n() == 1 && t.edges().is_empty()));
        let full = build_threshold_forest(&p, 2f64.sqrt());
        assert_eq!(full.len(), 1);
        assert_eq!(full[0], build_mst(&p));
    }

    #[test]
    fn two_clusters_split_at_half() {
        // Cluster A: x = 0.0..0.3 step 0.1 on y = 0; cluster B shifted by 0.9 + 0.3.
        let mut rows: Vec<Vec<f64>> = (0..4).map(|i| vec![0.1 * i as f64, 0.0]).collect();
        rows.extend((0..4).map(|i| vec![0.1 * i as f64, 0.9]));
        let p = pts(rows);
        let forest = build_threshold_forest(&p, 0.5);
        assert_eq!(forest.len(), 2);
        assert_eq!(forest[0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(forest[1].vertices(), &[4, 5, 6, 7]);
        assert!(forest.iter().all(|t| t.edges().len() == 3));
    }

    #[test]
    fn ball_packing_flags_a_bad_tree() {
        let p = pts(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.01]]);
        assert!(mst_ball_packing_check(&build_mst(&p), &p).is_empty());
        let bad = SpanningTree::new(
            vec![0, 1, 2],
            vec![Edge::between(&p, 0, 1), Edge::between(&p, 0, 2)],
        )
        .unwrap();
        assert_eq!(mst_ball_packing_check(&bad, &p), vec![(0, 1)]);
    }

    #[test]
    fn single_edge_has_no_pairs() {
        let p = pts(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
        assert!(mst_ball_packing_check(&build_mst(&p), &p).is_empty());
    }
}
