//! Worked examples with frozen values.

use powertour::constructions::{
    diagonal_pair, even_weight_code, figure1_sets, k3_code4, k4_even_weight_code, lemma5_tight_vectors,
};
use powertour::graphs::Validate;
use powertour::oracle::{closest_pair_bound_check, exact_min_matching, exact_min_path, exact_min_tour, lemma7_max_pair_sum};
use powertour::planar::{non_obtuse_cycle, Diagonal};
use powertour::verifiers::{hamming_min_distance, lemma5_check, nearest_neighbor_sum_check, singleton_check};
use powertour::{
    build_mst, build_threshold_forest, close_path, cycle_to_matchings, greedy_ham_path, mst_ball_packing_check,
    mst_sekanina_tour, named_bounds, newman_square_tour, tree_to_cycle_cost_bound, two_phase_tour, Container, Edge,
    PointSet, SpanningTree, Tour,
};

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

fn pts(rows: Vec<Vec<f64>>) -> PointSet {
    PointSet::from_rows(rows, Container::UnitCube).unwrap()
}

#[test]
fn named_bounds_frozen() {
    // Closed forms evaluated in 50-digit arithmetic.
    let b3 = named_bounds(3, 10).unwrap();
    assert!(rel_close(b3.certified, 10.150_087_774_487_463, 1e-14));
    assert!(rel_close(b3.bollobas_meir, 13.617_771_744_806_114, 1e-14));
    assert!(rel_close(b3.k3_lower.unwrap(), 2.244_924_096_618_746, 1e-14));
    let b6 = named_bounds(6, 200).unwrap();
    assert!(rel_close(b6.certified, 15.357_953_166_968_595, 1e-14));
    assert!(rel_close(named_bounds(2, 4).unwrap().conjectured, 2.0, 1e-15));
}

#[test]
fn tight_tours() {
    for set in figure1_sets() {
        let (_, cost) = exact_min_tour(&set, 2).unwrap();
        assert!(rel_close(cost.unscaled().unwrap(), 4.0, 1e-9));
    }
    let (_, c3) = exact_min_tour(&k3_code4(), 3).unwrap();
    assert!(rel_close(c3.unscaled().unwrap(), 4.0 * 2f64.powf(1.5), 1e-9));
    assert!(rel_close(c3.scaled(), 2f64.powf(7.0 / 6.0), 1e-9));
    let (_, c4) = exact_min_tour(&k4_even_weight_code(), 4).unwrap();
    assert!(rel_close(c4.unscaled().unwrap(), 32.0, 1e-9));
    for k in [1u32, 3, 4, 9] {
        let (_, c) = exact_min_tour(&diagonal_pair(k).unwrap(), k).unwrap();
        let expected = 2.0 * f64::from(k).powf(f64::from(k) / 2.0);
        assert!(rel_close(c.unscaled().unwrap(), expected, 1e-9));
    }
}

#[test]
fn five_point_oracle_visits_centre_between_adjacent_corners() {
    let five = &figure1_sets()[2];
    let (tour, _) = exact_min_tour(five, 2).unwrap();
    let order = tour.order();
    let at = order.iter().position(|&v| v == 4).unwrap();
    let (prev, next) = (order[(at + 4) % 5], order[(at + 1) % 5]);
    assert!((five.dist_sq(prev, next) - 1.0).abs() < 1e-12);
}

#[test]
fn matchings() {
    let (_, m) = exact_min_matching(&k3_code4(), 3).unwrap();
    assert!(rel_close(m.unscaled().unwrap(), 2.0 * 2f64.powf(1.5), 1e-12));
    let four = &figure1_sets()[0];
    let (_, m) = exact_min_matching(four, 2).unwrap();
    assert!(rel_close(m.unscaled().unwrap(), 2.0, 1e-12));
    let tour = Tour::new(four, vec![0, 1, 2, 3]).unwrap();
    let (a, b) = cycle_to_matchings(&tour, 2).unwrap();
    assert!(rel_close(a.cost(2).unscaled().unwrap(), 2.0, 1e-12));
    assert!(rel_close(b.cost(2).unscaled().unwrap(), 2.0, 1e-12));
}

#[test]
fn paths() {
    let (_, p) = exact_min_path(&k3_code4(), 3).unwrap();
    assert!(rel_close(p.unscaled().unwrap(), 3.0 * 2f64.powf(1.5), 1e-12));
    assert!(rel_close(p.scaled(), 3f64.cbrt() * 2f64.sqrt(), 1e-12));
    assert_eq!(even_weight_code(3).unwrap(), k3_code4());
    let (_, p) = exact_min_path(&diagonal_pair(7).unwrap(), 7).unwrap();
    assert!(rel_close(p.unscaled().unwrap(), 7f64.powf(3.5), 1e-12));
    let run = greedy_ham_path(&figure1_sets()[0], None).unwrap();
    assert!(rel_close(run.path.cost(2).unscaled().unwrap(), 3.0, 1e-12));
}

#[test]
fn two_clusters_give_two_trees() {
    let mut rows = Vec::new();
    for i in 0..4 {
        rows.push(vec![0.0, 0.1 * f64::from(i)]);
        rows.push(vec![0.9, 0.1 * f64::from(i)]);
    }
    let forest = build_threshold_forest(&pts(rows), 0.5);
    assert_eq!(forest.len(), 2);
    assert!(forest.iter().all(|t| t.n() == 4));
}

#[test]
fn ball_packing_detects_a_bad_tree() {
    let p = pts(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.01]]);
    let bad = SpanningTree::new(vec![0, 1, 2], vec![Edge::between(&p, 0, 1), Edge::between(&p, 0, 2)]).unwrap();
    assert_eq!(mst_ball_packing_check(&bad, &p), vec![(0, 1)]);
    assert!(mst_ball_packing_check(&build_mst(&p), &p).is_empty());
    let single = SpanningTree::new(vec![0, 1], vec![Edge::between(&p, 0, 1)]).unwrap();
    assert!(mst_ball_packing_check(&single, &p).is_empty());
}

#[test]
fn tree_cycles_on_named_shapes() {
    // Star with centre 0 and unit legs.
    let star = pts(vec![vec![0.5, 0.5], vec![0.5, 1.0], vec![0.0, 0.5], vec![1.0, 0.5]]);
    let t = SpanningTree::new((0..4).collect(), (1..4).map(|v| Edge::between(&star, 0, v)).collect()).unwrap();
    let cb = tree_to_cycle_cost_bound(&t, &star, 2).unwrap();
    assert_eq!(cb.certificate.usage, vec![2, 2, 2]);
    assert!(cb.holds());

    // Spine a-b-c-d-e with the branch c-f-g.
    let rows: Vec<Vec<f64>> = [[0.0, 0.0], [0.2, 0.0], [0.4, 0.0], [0.6, 0.0], [0.8, 0.0], [0.4, 0.2], [0.4, 0.4]]
        .iter()
        .map(|r| r.to_vec())
        .collect();
    let p = pts(rows);
    let pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)];
    let t = SpanningTree::new((0..7).collect(), pairs.iter().map(|&(u, v)| Edge::between(&p, u, v)).collect()).unwrap();
    let cb = tree_to_cycle_cost_bound(&t, &p, 3).unwrap();
    assert!(cb.certificate.usage.iter().all(|&u| u == 2));
    assert!(cb.tour.violations(&p).is_empty());
    // Some tree edge carries two different hops.
    let shared = (0..pairs.len()).any(|id| cb.certificate.hops.iter().filter(|h| h.contains(&id)).count() == 2
        && cb.certificate.hops.iter().all(|h| h.len() != 1 || h[0] != id));
    assert!(shared);

    // Three collinear points: cycle (d, d, 2d).
    let line = pts(vec![vec![0.0], vec![0.25], vec![0.5]]);
    let t = SpanningTree::new(vec![0, 1, 2], vec![Edge::between(&line, 0, 1), Edge::between(&line, 1, 2)]).unwrap();
    let cb = tree_to_cycle_cost_bound(&t, &line, 2).unwrap();
    assert!(rel_close(cb.cycle_cost.unscaled().unwrap(), 6.0 * 0.0625, 1e-12));
}

#[test]
fn one_tight_cluster_two_phase() {
    let rows: Vec<Vec<f64>> = (0..12)
        .map(|i| {
            let t = f64::from(i) * 0.52;
            vec![0.5 + 0.1 * t.cos(), 0.5 + 0.1 * t.sin(), 0.5 + 0.01 * f64::from(i)]
        })
        .collect();
    let p = pts(rows);
    let (tour, report) = two_phase_tour(&p, 3, None).unwrap();
    assert_eq!((report.tree_count, report.cycle_count), (1, 1));
    assert_eq!(report.greedy_added.unscaled, Some(0.0));
    let bound = tree_to_cycle_cost_bound(&build_mst(&p), &p, 3).unwrap();
    assert!(tour.cost(3).log_unscaled() <= bound.log_bound);
    assert!(tour.cost(3).log_unscaled() <= bound.cycle_cost.log_unscaled() + 1e-12);
}

#[test]
fn spread_points_two_phase_is_plain_greedy() {
    let p = k4_even_weight_code();
    let (tour, report) = two_phase_tour(&p, 4, None).unwrap();
    assert_eq!(report.tree_count, 8);
    let greedy = close_path(&greedy_ham_path(&p, None).unwrap().path, &p).unwrap();
    assert_eq!(tour, greedy);
}

#[test]
fn random_instances_respect_the_certified_bound() {
    let p = powertour::constructions::uniform_cube(3, 100, 42).unwrap();
    let (tour, report) = mst_sekanina_tour(&p, 3).unwrap();
    assert!(tour.cost(3).scaled() <= named_bounds(3, 100).unwrap().certified);
    assert!(report.all_certified_pass());
    let p = powertour::constructions::uniform_cube(6, 200, 6).unwrap();
    let (tour, _) = two_phase_tour(&p, 6, None).unwrap();
    assert!(tour.cost(6).scaled() <= named_bounds(6, 200).unwrap().certified);
}

#[test]
fn planar_tight_examples() {
    for set in figure1_sets() {
        let tour = newman_square_tour(&set, Diagonal::Main).unwrap();
        assert!(rel_close(tour.cost(2).unscaled().unwrap(), 4.0, 1e-12));
        let nn = nearest_neighbor_sum_check(&set, &tour).unwrap();
        assert!(nn.ok);
    }
    let h = 3f64.sqrt() / 2.0;
    let tri = [[0.0, 0.0], [1.0, 0.0], [0.5, h]];
    let p = PointSet::from_rows(tri.iter().map(|r| r.to_vec()).collect(), Container::PlanarTriangle).unwrap();
    let cycle = non_obtuse_cycle(tri, &p).unwrap();
    assert!(rel_close(cycle.cost(2).unscaled().unwrap(), 3.0, 1e-12));
}

#[test]
fn lemma5_tight_values() {
    for (k, value) in [(5u32, 1.25), (10, 1.767_766_952_966_368_8)] {
        let (u, v) = lemma5_tight_vectors(k).unwrap();
        let c = lemma5_check(&u, &v).unwrap();
        assert!(rel_close(c.lhs, value, 1e-12) && rel_close(c.rhs, value, 1e-12));
    }
}

#[test]
fn pair_sum_and_closest_pair() {
    assert_eq!(lemma7_max_pair_sum(2).unwrap().value, 1.0);
    assert_eq!(lemma7_max_pair_sum(5).unwrap().value, 6.0);
    assert_eq!(lemma7_max_pair_sum(4).unwrap().witness, vec![0.0, 0.0, 1.0, 1.0]);
    let c = closest_pair_bound_check(&figure1_sets()[0], 4, None).unwrap();
    assert!(rel_close(c.min_sq, 1.0, 1e-12) && rel_close(c.bound, 4.0 / 3.0, 1e-12) && c.ok);
}

#[test]
fn code_checks() {
    let code = k4_even_weight_code();
    assert_eq!(hamming_min_distance(&code).unwrap(), 2);
    assert!(singleton_check(4, 2, code.len()).unwrap().ok);
    assert_eq!(singleton_check(4, 2, code.len()).unwrap().bound, 8.0);
    for i in 0..8 {
        for j in i + 1..8 {
            let d = code.dist_sq(i, j);
            assert!(d == 2.0 || d == 4.0);
        }
    }
    assert_eq!(hamming_min_distance(&k3_code4()).unwrap(), 2);
}
