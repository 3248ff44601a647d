//! Instance-level checkers and the bound comparison report.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{named_bounds, NamedBounds, Point, PointSet, PowerCost, Tolerance};
use crate::graphs::{CostBlock, Tour};

/// Version of the JSON layout of [`BoundReport`] and the CLI outputs.
pub const SCHEMA_VERSION: u32 = 1;

/// Result of the half-cube inequality `|u+v|/2 + |u-v|/4 <= (√5/4)√k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma5Check {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

pub fn lemma5_check(u: &Point, v: &Point) -> Result<Lemma5Check> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    if u.dim() == 0 {
        return Err(Error::invalid("points must have at least one coordinate"));
    }
    for (index, p) in [u, v].into_iter().enumerate() {
        if p.coords().iter().any(|c| c.is_nan() || c.abs() > 0.5 + 1e-12) {
            return Err(Error::OutsideContainer {
                index,
                container: "half_cube".into(),
            });
        }
    }
    let (mut plus, mut minus) = (0.0, 0.0);
    for (a, b) in u.coords().iter().zip(v.coords()) {
        plus += (a + b) * (a + b);
        minus += (a - b) * (a - b);
    }
    let lhs = plus.sqrt() / 2.0 + minus.sqrt() / 4.0;
    let rhs = 5f64.sqrt() / 4.0 * (u.dim() as f64).sqrt();
    Ok(Lemma5Check {
        lhs,
        rhs,
        ok: lhs <= rhs + 1e-9,
    })
}

/// Minimum pairwise Hamming distance of a set of cube vertices (at least 2 points).
pub fn hamming_min_distance(points: &PointSet) -> Result<usize> {
    if !points.is_cube_vertex_set() {
        return Err(Error::invalid("Hamming distance needs 0/1 coordinates"));
    }
    if points.len() < 2 {
        return Err(Error::invalid("Hamming distance needs at least 2 points"));
    }
    let rows = points.points();
    let mut best = usize::MAX;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let d = rows[i]
                .coords()
                .iter()
                .zip(rows[j].coords())
                .filter(|(a, b)| a != b)
                .count();
            best = best.min(d);
        }
    }
    Ok(best)
}

/// A claimed code size compared with `2^{k-d+1}` and, when `3d < 2k`, with
/// `2^{k-3d/2+2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingletonCheck {
    pub bound: f64,
    pub ok: bool,
    pub improved_bound: Option<f64>,
    pub improved_ok: Option<bool>,
}

pub fn singleton_check(k: u32, d: u32, size: usize) -> Result<SingletonCheck> {
    if d == 0 || d > k {
        return Err(Error::invalid(format!("need 1 <= d <= k, got d = {d}, k = {k}")));
    }
    let (kf, df) = (f64::from(k), f64::from(d));
    let bound = 2f64.powf(kf - df + 1.0);
    let improved_bound = (3 * d < 2 * k).then(|| 2f64.powf(kf - 1.5 * df + 2.0));
    let fits = |b: f64| size as f64 <= b;
    Ok(SingletonCheck {
        bound,
        ok: fits(bound),
        improved_bound,
        improved_ok: improved_bound.map(fits),
    })
}

/// `Σ d_i²` over nearest-neighbour distances in the plane, compared with the
/// tour cost (each point's outgoing tour edge is at least `d_i`) and with 4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearestNeighborCheck {
    pub sum_sq: f64,
    pub tour_cost: f64,
    pub dominated: bool,
    pub ok: bool,
}

pub fn nearest_neighbor_sum_check(points: &PointSet, tour: &Tour) -> Result<NearestNeighborCheck> {
    if points.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: points.dimension(),
        });
    }
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid("nearest neighbours need at least 2 points"));
    }
    let sum_sq: f64 = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| points.dist_sq(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    let tour_cost = tour.cost(2).unscaled().unwrap_or(f64::INFINITY);
    let tol = Tolerance::default();
    Ok(NearestNeighborCheck {
        sum_sq,
        tour_cost,
        dominated: tol.le(sum_sq, tour_cost),
        ok: tol.le(sum_sq, 4.0),
    })
}

/// Algorithms that produce tours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    MstSekanina,
    Greedy,
    TwoPhase,
    Newman2d,
    Oracle,
    Other,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::MstSekanina,
        Algorithm::Greedy,
        Algorithm::TwoPhase,
        Algorithm::Newman2d,
        Algorithm::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::MstSekanina => "mst-sekanina",
            Algorithm::Greedy => "greedy",
            Algorithm::TwoPhase => "two-phase",
            Algorithm::Newman2d => "newman2d",
            Algorithm::Oracle => "oracle",
            Algorithm::Other => "other",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algorithm `{s}`")))
    }
}

/// One algorithm's tour cost, as fed to [`bound_report`].
#[derive(Debug, Clone)]
pub struct AlgorithmResult {
    pub algorithm: Algorithm,
    pub name: String,
    pub cost: PowerCost,
    pub wall_time: Option<Duration>,
}

impl AlgorithmResult {
    pub fn new(algorithm: Algorithm, cost: PowerCost) -> Self {
        AlgorithmResult {
            algorithm,
            name: algorithm.name().to_string(),
            cost,
            wall_time: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_wall_time(mut self, t: Duration) -> Self {
        self.wall_time = Some(t);
        self
    }
}

/// `s_k <= bound` (or `>=`) for one algorithm. `certified` marks bounds that
/// are theorems for that algorithm; only those count as violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub relation: Relation,
    pub bound: f64,
    pub certified: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    fn holds(&self, value: f64, bound: f64) -> bool {
        let tol = Tolerance::default();
        match self {
            Relation::AtMost => tol.le(value, bound),
            Relation::AtLeast => tol.ge(value, bound),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmReport {
    pub name: String,
    pub algorithm: Algorithm,
    #[serde(flatten)]
    pub cost: CostBlock,
    pub checks: Vec<BoundCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// Costs of several algorithms on one instance against the named bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub instance: String,
    pub k: u32,
    pub dimension: usize,
    pub n: usize,
    /// Absent for `k = 1`.
    pub bounds: Option<NamedBounds>,
    pub algorithms: Vec<AlgorithmReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl BoundReport {
    /// True when every stored `pass` agrees with a recomputation from the
    /// stored `s_k` and bound.
    pub fn recheck(&self) -> bool {
        self.algorithms.iter().all(|a| {
            a.checks
                .iter()
                .all(|c| c.pass == c.relation.holds(a.cost.scaled, c.bound))
        })
    }

    /// Failing certified checks, as `(algorithm, check)` names.
    pub fn certified_failures(&self) -> Vec<(String, String)> {
        self.algorithms
            .iter()
            .flat_map(|a| {
                a.checks
                    .iter()
                    .filter(|c| c.certified && !c.pass)
                    .map(|c| (a.name.clone(), c.name.clone()))
            })
            .collect()
    }

    pub fn all_certified_pass(&self) -> bool {
        self.certified_failures().is_empty()
    }

    /// Drops all wall-clock fields.
    pub fn without_timing(mut self) -> Self {
        self.wall_time_ms = None;
        for a in &mut self.algorithms {
            a.wall_time_ms = None;
        }
        self
    }

    pub fn with_wall_time(mut self, t: Duration) -> Self {
        self.wall_time_ms = Some(t.as_secs_f64() * 1e3);
        self
    }
}

/// `s_k` value of `ln S_k = log_unscaled`.
fn scaled_bound(log_unscaled: f64, k: u32) -> f64 {
    (log_unscaled / f64::from(k)).exp()
}

/// `(2 + (8/3)^{k/2})·k^{k/2}` on the `s_k` scale; holds for closed greedy
/// tours when `n <= 2^k + 2`, since all but the last greedy edge satisfy
/// `|e|² <= 2k/3`.
pub fn greedy_small_n_bound(k: u32) -> f64 {
    let kf = f64::from(k);
    let a = kf / 2.0 * (8.0f64 / 3.0).ln();
    let ln_factor = a + (2.0 * (-a).exp()).ln_1p();
    scaled_bound(ln_factor + kf / 2.0 * kf.ln(), k)
}

/// Assembles the comparison table. When an oracle result is present, every
/// other algorithm is also checked against the optimum from below.
pub fn bound_report(
    points: &PointSet,
    k: u32,
    instance: &str,
    results: Vec<AlgorithmResult>,
) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    let n = points.len();
    let bounds = if k >= 2 { Some(named_bounds(k, n)?) } else { None };
    let optimum = results
        .iter()
        .find(|r| r.algorithm == Algorithm::Oracle)
        .map(|r| r.cost.scaled());
    let vertex_set = points.is_cube_vertex_set() && points.dimension() == k as usize;
    let algorithms = results
        .into_iter()
        .map(|r| {
            let s = r.cost.scaled();
            let mut checks = Vec::new();
            let mut push = |name: &str, relation: Relation, bound: f64, certified: bool| {
                checks.push(BoundCheck {
                    name: name.to_string(),
                    relation,
                    bound,
                    certified,
                    pass: relation.holds(s, bound),
                });
            };
            let mst = r.algorithm == Algorithm::MstSekanina && k >= 3;
            if let Some(b) = &bounds {
                push("bollobas_meir", Relation::AtMost, b.bollobas_meir, mst);
                push("certified", Relation::AtMost, b.certified, mst);
                push("conjectured_cycle", Relation::AtMost, b.conjectured_cycle, false);
            }
            if r.algorithm == Algorithm::Newman2d && k == 2 {
                push("newman", Relation::AtMost, 2.0, true);
            }
            if r.algorithm == Algorithm::Greedy && (k >= 63 || n as u64 <= (1u64 << k) + 2) {
                push("greedy_small_n", Relation::AtMost, greedy_small_n_bound(k), true);
            }
            if r.algorithm == Algorithm::Greedy && vertex_set && k >= 30 {
                push("vertex_subset", Relation::AtMost, scaled_bound(2f64.ln() + f64::from(k) / 2.0 * f64::from(k).ln(), k), false);
            }
            if let (Some(opt), false) = (optimum, r.algorithm == Algorithm::Oracle) {
                push("oracle_optimum", Relation::AtLeast, opt, true);
            }
            AlgorithmReport {
                name: r.name,
                algorithm: r.algorithm,
                cost: CostBlock::from(&r.cost),
                checks,
                wall_time_ms: r.wall_time.map(|t| t.as_secs_f64() * 1e3),
            }
        })
        .collect();
    Ok(BoundReport {
        schema_version: SCHEMA_VERSION,
        instance: instance.to_string(),
        k,
        dimension: points.dimension(),
        n,
        bounds,
        algorithms,
        wall_time_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{diagonal_pair, figure1_sets, k3_code4, k4_even_weight_code, lemma5_tight_vectors};
    use crate::geometry::Container;

    #[test]
    fn lemma5_examples() {
        let (u, v) = lemma5_tight_vectors(5).unwrap();
        let c = lemma5_check(&u, &v).unwrap();
        assert!((c.lhs - 1.25).abs() < 1e-12 && (c.rhs - 1.25).abs() < 1e-12 && c.ok);
        let c = lemma5_check(&v, &u).unwrap();
        assert!((c.lhs - 1.25).abs() < 1e-12);
        let zero = Point::new(vec![0.0; 4]);
        assert!(lemma5_check(&zero, &zero).unwrap().lhs == 0.0);
        let out = Point::new(vec![0.7, 0.0, 0.0, 0.0]);
        assert!(lemma5_check(&out, &zero).is_err());
    }

    #[test]
    fn codes() {
        assert_eq!(hamming_min_distance(&k4_even_weight_code()).unwrap(), 2);
        assert_eq!(hamming_min_distance(&k3_code4()).unwrap(), 2);
        let s = singleton_check(4, 2, 8).unwrap();
        assert_eq!(s.bound, 8.0);
        assert!(s.ok);
        assert_eq!(s.improved_bound, Some(2f64.powf(3.0)));
        let s = singleton_check(3, 2, 4).unwrap();
        assert_eq!((s.bound, s.improved_bound), (4.0, None));
        assert!(!singleton_check(4, 2, 9).unwrap().ok);
        assert!(hamming_min_distance(&figure1_sets()[2]).is_err());
    }

    #[test]
    fn nearest_neighbours() {
        let corners = &figure1_sets()[0];
        let tour = Tour::new(corners, vec![0, 1, 2, 3]).unwrap();
        let c = nearest_neighbor_sum_check(corners, &tour).unwrap();
        assert_eq!(c.sum_sq, 4.0);
        assert!(c.ok && c.dominated);
        let two = PointSet::from_rows(vec![vec![0.1, 0.1], vec![0.4, 0.5]], Container::UnitCube).unwrap();
        let tour = Tour::new(&two, vec![0, 1]).unwrap();
        let c = nearest_neighbor_sum_check(&two, &tour).unwrap();
        assert!((c.sum_sq - 0.5).abs() < 1e-12);
    }

    #[test]
    fn report_contents() {
        let p = diagonal_pair(5).unwrap();
        let r = bound_report(&p, 5, "diag", vec![]).unwrap();
        assert!(r.algorithms.is_empty());
        assert!(r.bounds.is_some());
        let doubled = PowerCost::of_weights(5, [5f64.sqrt(); 2]);
        let results = vec![
            AlgorithmResult::new(Algorithm::MstSekanina, doubled.clone()),
            AlgorithmResult::new(Algorithm::Oracle, doubled.clone()),
        ];
        let r = bound_report(&p, 5, "diag", results).unwrap();
        assert!(r.recheck());
        assert!(r.all_certified_pass());
        let conj = r.bounds.unwrap().conjectured;
        assert!((r.algorithms[0].cost.scaled - conj).abs() < 1e-12);

        let mut tampered = r.clone();
        tampered.algorithms[0].checks[0].pass = false;
        assert!(!tampered.recheck());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert_eq!(json["algorithms"][0]["algorithm"], "mst-sekanina");
        assert!(json["algorithms"][0]["S_k"].is_number());
        assert_eq!(json["algorithms"][0]["checks"][0]["relation"], "<=");
    }

    #[test]
    fn failing_certified_bound_is_reported() {
        let p = diagonal_pair(3).unwrap();
        let huge = PowerCost::of_weights(3, [100.0]);
        let r = bound_report(&p, 3, "x", vec![AlgorithmResult::new(Algorithm::MstSekanina, huge)]).unwrap();
        assert_eq!(
            r.certified_failures(),
            vec![
                ("mst-sekanina".to_string(), "bollobas_meir".to_string()),
                ("mst-sekanina".to_string(), "certified".to_string())
            ]
        );
    }

    #[test]
    fn greedy_bound_value() {
        // k = 2: (2 + 8/3)·2 = 28/3.
        assert!((greedy_small_n_bound(2) - (28.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }
}
