//! Points, distances and power-cost arithmetic.
//!
//! For an edge set `G` and exponent `k` the unscaled cost is `S_k(G) = Σ |e|^k`
//! and the scaled cost is `s_k(G) = S_k(G)^{1/k}`. Costs are accumulated in the
//! log domain so that `k` in the hundreds with edges of length up to `√k`
//! still produce a finite scaled cost.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative/absolute tolerance pair used for floating comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    /// `a <= b` up to tolerance.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.slack(b)
    }

    /// `a >= b` up to tolerance.
    pub fn ge(&self, a: f64, b: f64) -> bool {
        self.le(b, a)
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.slack(a.abs().max(b.abs()))
    }

    fn slack(&self, scale: f64) -> f64 {
        (self.rel * scale.abs()).max(self.abs)
    }

    /// Compare two quantities given by their natural logarithms: `exp(la) <= exp(lb)`.
    pub fn log_le(&self, la: f64, lb: f64) -> bool {
        if la == f64::NEG_INFINITY {
            return true;
        }
        la <= lb + self.rel.ln_1p()
    }
}

/// A point in `R^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point(v.to_vec())
    }
}

/// Region a point set is declared to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Container {
    /// `[0,1]^k`
    UnitCube,
    /// `[-1/2,1/2]^k`
    HalfCube,
    PlanarTriangle,
    PlanarRegion,
    Unconstrained,
}

impl Container {
    pub fn name(&self) -> &'static str {
        match self {
            Container::UnitCube => "unit_cube",
            Container::HalfCube => "half_cube",
            Container::PlanarTriangle => "planar_triangle",
            Container::PlanarRegion => "planar_region",
            Container::Unconstrained => "unconstrained",
        }
    }

    /// Coordinate interval for box containers.
    fn interval(&self) -> Option<(f64, f64)> {
        match self {
            Container::UnitCube => Some((0.0, 1.0)),
            Container::HalfCube => Some((-0.5, 0.5)),
            _ => None,
        }
    }
}

impl fmt::Display for Container {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Container {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit_cube" => Ok(Container::UnitCube),
            "half_cube" => Ok(Container::HalfCube),
            "planar_triangle" => Ok(Container::PlanarTriangle),
            "planar_region" => Ok(Container::PlanarRegion),
            "unconstrained" => Ok(Container::Unconstrained),
            other => Err(Error::Parse(format!("unknown container `{other}`"))),
        }
    }
}

/// Membership tolerance for box containers.
pub const CONTAINMENT_TOL: f64 = 1e-12;

/// An ordered, non-empty list of points of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dimension: usize,
    points: Vec<Point>,
    container: Container,
}

impl PointSet {
    /// Builds a point set, checking dimensions and (for box containers) membership.
    pub fn new(dimension: usize, points: Vec<Point>, container: Container) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if points.is_empty() {
            return Err(Error::invalid("a point set needs at least one point"));
        }
        for p in &points {
            if p.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: p.dim(),
                });
            }
            if p.coords().iter().any(|c| !c.is_finite()) {
                return Err(Error::invalid("coordinates must be finite"));
            }
        }
        if matches!(container, Container::PlanarTriangle | Container::PlanarRegion)
            && dimension != 2
        {
            return Err(Error::invalid(format!(
                "{container} requires dimension 2, got {dimension}"
            )));
        }
        let set = PointSet {
            dimension,
            points,
            container,
        };
        if let Some(index) = set.first_outside(container) {
            return Err(Error::OutsideContainer {
                index,
                container: container.to_string(),
            });
        }
        Ok(set)
    }

    /// Builds a point set from raw rows, taking the dimension from the first row.
    pub fn from_rows(rows: Vec<Vec<f64>>, container: Container) -> Result<Self> {
        let dimension = rows.first().map(Vec::len).unwrap_or(0);
        PointSet::new(dimension, rows.into_iter().map(Point).collect(), container)
    }

    /// Like [`PointSet::from_rows`] but picks `UnitCube` when every coordinate lies
    /// in `[0,1]` and `Unconstrained` otherwise.
    pub fn from_rows_detect(rows: Vec<Vec<f64>>) -> Result<Self> {
        let inside = rows.iter().flatten().all(|&c| {
            (-CONTAINMENT_TOL..=1.0 + CONTAINMENT_TOL).contains(&c)
        });
        let container = if inside {
            Container::UnitCube
        } else {
            Container::Unconstrained
        };
        PointSet::from_rows(rows, container)
    }

    fn first_outside(&self, container: Container) -> Option<usize> {
        let (lo, hi) = container.interval()?;
        self.points.iter().position(|p| {
            p.coords()
                .iter()
                .any(|&c| c < lo - CONTAINMENT_TOL || c > hi + CONTAINMENT_TOL)
        })
    }

    /// True when every point lies in the given box container (non-box containers
    /// always answer `false`).
    pub fn fits_in(&self, container: Container) -> bool {
        container.interval().is_some() && self.first_outside(container).is_none()
    }

    /// True when every coordinate is exactly 0 or 1.
    pub fn is_cube_vertex_set(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.coords().iter().all(|&c| c == 0.0 || c == 1.0))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn container(&self) -> Container {
        self.container
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// Euclidean distance between points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist_sq(i, j).sqrt()
    }

    pub fn dist_sq(&self, i: usize, j: usize) -> f64 {
        squared_distance(self.points[i].coords(), self.points[j].coords())
    }

    /// The subset of points at the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<PointSet> {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        PointSet::new(self.dimension, points, self.container)
    }

    /// Rows of coordinates.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.coords().to_vec()).collect()
    }
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Euclidean norm of `a - b`.
pub fn euclidean_distance(a: &Point, b: &Point) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(squared_distance(a.coords(), b.coords()).sqrt())
}

/// An undirected edge between two point indices, weighted by Euclidean length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    /// The edge `uv` with its weight measured on `points`.
    pub fn between(points: &PointSet, u: usize, v: usize) -> Edge {
        Edge {
            u,
            v,
            weight: points.dist(u, v),
        }
    }

    /// Endpoints as `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Unscaled and scaled power cost of an edge set.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerCost {
    exponent: u32,
    /// `k·ln|e|` for each nonzero edge, sorted descending.
    log_terms: Vec<f64>,
    zero_edges: usize,
    log_unscaled: f64,
}

impl PowerCost {
    /// Cost of a list of edge lengths.
    ///
    /// # Panics
    /// Panics if `k == 0`.
    pub fn of_weights<I: IntoIterator<Item = f64>>(k: u32, weights: I) -> PowerCost {
        assert!(k >= 1, "power cost exponent must be at least 1");
        let kf = f64::from(k);
        let mut log_terms = Vec::new();
        let mut zero_edges = 0;
        for w in weights {
            debug_assert!(w >= 0.0, "edge weight must be nonnegative");
            if w > 0.0 {
                log_terms.push(kf * w.ln());
            } else {
                zero_edges += 1;
            }
        }
        log_terms.sort_by(|a, b| b.total_cmp(a));
        let log_unscaled = log_sum_exp(&log_terms);
        PowerCost {
            exponent: k,
            log_terms,
            zero_edges,
            log_unscaled,
        }
    }

    pub fn of_edges(k: u32, edges: &[Edge]) -> PowerCost {
        PowerCost::of_weights(k, edges.iter().map(|e| e.weight))
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn log_terms(&self) -> &[f64] {
        &self.log_terms
    }

    pub fn zero_edges(&self) -> usize {
        self.zero_edges
    }

    pub fn edge_count(&self) -> usize {
        self.log_terms.len() + self.zero_edges
    }

    /// `ln S_k`; negative infinity when every edge has zero length.
    pub fn log_unscaled(&self) -> f64 {
        self.log_unscaled
    }

    /// `S_k`, or `None` when it overflows `f64`.
    pub fn unscaled(&self) -> Option<f64> {
        let s = self.log_unscaled.exp();
        s.is_finite().then_some(s)
    }

    pub fn is_overflow(&self) -> bool {
        self.unscaled().is_none()
    }

    /// `s_k = S_k^{1/k}`.
    pub fn scaled(&self) -> f64 {
        (self.log_unscaled / f64::from(self.exponent)).exp()
    }

    /// `ln s_k`.
    pub fn log_scaled(&self) -> f64 {
        self.log_unscaled / f64::from(self.exponent)
    }

    /// Cost of the union of two edge multisets with the same exponent.
    pub fn merged(&self, other: &PowerCost) -> PowerCost {
        assert_eq!(self.exponent, other.exponent, "exponents differ");
        let mut log_terms = self.log_terms.clone();
        log_terms.extend_from_slice(&other.log_terms);
        log_terms.sort_by(|a, b| b.total_cmp(a));
        let log_unscaled = log_sum_exp(&log_terms);
        PowerCost {
            exponent: self.exponent,
            log_terms,
            zero_edges: self.zero_edges + other.zero_edges,
            log_unscaled,
        }
    }
}

/// Numerically stable `ln Σ exp(t)` over terms already sorted descending.
pub(crate) fn log_sum_exp(sorted_desc: &[f64]) -> f64 {
    let Some(&max) = sorted_desc.first() else {
        return f64::NEG_INFINITY;
    };
    let sum: f64 = sorted_desc.iter().map(|t| (t - max).exp()).sum();
    max + sum.ln()
}

/// Power cost of an edge list.
pub fn power_cost(edges: &[Edge], k: u32) -> Result<PowerCost> {
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    Ok(PowerCost::of_edges(k, edges))
}

/// Closed-form values of the named bounds on `s_k` for Hamiltonian cycles and paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NamedBounds {
    pub k: u32,
    pub n: usize,
    /// `2^{1/k}√k`: the diagonal-pair value, conjectured optimal.
    pub conjectured: f64,
    /// `9·(2/3)^{1/k}√k = 3^{2-1/k}·2^{1/k}√k`.
    pub bollobas_meir: f64,
    /// `3√5·(2/3)^{1/k}√k`, realized by the MST-based tour.
    pub certified: f64,
    /// `2^{7/6}` lower bound, reported for `k = 3` only.
    pub k3_lower: Option<f64>,
    /// Revised cycle conjecture: 2 for k=2, `2^{7/6}` for k=3, `2^{1/k}√k` otherwise.
    pub conjectured_cycle: f64,
    /// Path conjecture: `√3` (k=2), `(2^{k-1}-1)^{1/k}√2` (k=3..6), `√k` (k≥7).
    pub conjectured_path: f64,
}

/// Evaluates the named bounds for dimension `k`.
pub fn named_bounds(k: u32, n: usize) -> Result<NamedBounds> {
    if k < 2 {
        return Err(Error::invalid("named bounds are defined for k >= 2"));
    }
    let kf = f64::from(k);
    let root_k = kf.sqrt();
    let two_thirds = (2.0f64 / 3.0).powf(1.0 / kf);
    let conjectured = 2f64.powf(1.0 / kf) * root_k;
    let k3_lower = 2f64.powf(7.0 / 6.0);
    let conjectured_cycle = match k {
        3 => k3_lower,
        _ => conjectured,
    };
    let conjectured_path = match k {
        2 => 3f64.sqrt(),
        3..=6 => (2f64.powi(k as i32 - 1) - 1.0).powf(1.0 / kf) * 2f64.sqrt(),
        _ => root_k,
    };
    Ok(NamedBounds {
        k,
        n,
        conjectured,
        bollobas_meir: 9.0 * two_thirds * root_k,
        certified: 3.0 * 5f64.sqrt() * two_thirds * root_k,
        k3_lower: (k == 3).then_some(k3_lower),
        conjectured_cycle,
        conjectured_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn distances() {
        let d = euclidean_distance(&[0.0, 0.0, 0.0].into(), &[1.0, 1.0, 1.0].into()).unwrap();
        assert!(rel_close(d, 3f64.sqrt(), 1e-15));
        let d = euclidean_distance(&[0.0, 0.0, 0.0].into(), &[0.0, 1.0, 1.0].into()).unwrap();
        assert!(rel_close(d, 2f64.sqrt(), 1e-15));
        let d = euclidean_distance(&[0.3, 0.7].into(), &[0.3, 0.7].into()).unwrap();
        assert_eq!(d, 0.0);
        let err = euclidean_distance(&[0.0].into(), &[0.0, 1.0].into()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn unit_square_cost() {
        let c = PowerCost::of_weights(2, [1.0; 4]);
        assert!(rel_close(c.unscaled().unwrap(), 4.0, 1e-12));
        assert!(rel_close(c.scaled(), 2.0, 1e-12));
    }

    #[test]
    fn diagonal_edges_cost() {
        let c = PowerCost::of_weights(3, [3f64.sqrt(); 2]);
        assert!(rel_close(c.unscaled().unwrap(), 10.392304845413264, 1e-12));
    }

    #[test]
    fn empty_and_zero_edges() {
        let c = power_cost(&[], 5).unwrap();
        assert_eq!(c.unscaled(), Some(0.0));
        assert_eq!(c.scaled(), 0.0);
        let c = PowerCost::of_weights(3, [0.0, 0.0, 2.0]);
        assert_eq!(c.zero_edges(), 2);
        assert_eq!(c.log_terms().len(), 1);
        assert!(rel_close(c.unscaled().unwrap(), 8.0, 1e-12));
        assert!(power_cost(&[], 0).is_err());
    }

    #[test]
    fn huge_exponent_overflows_only_unscaled() {
        let k = 1000;
        let w = (f64::from(k)).sqrt();
        let c = PowerCost::of_weights(k, [w, w, 0.5 * w]);
        assert!(c.is_overflow());
        // s_k = √k · (2 + 2^-k)^{1/k}
        let expected = w * 2f64.powf(1.0 / 1000.0);
        assert!(rel_close(c.scaled(), expected, 1e-12));
    }

    #[test]
    fn merged_matches_direct() {
        let a = PowerCost::of_weights(4, [0.5, 1.5]);
        let b = PowerCost::of_weights(4, [0.0, 1.0]);
        let m = a.merged(&b);
        let direct = PowerCost::of_weights(4, [0.5, 1.5, 0.0, 1.0]);
        assert_eq!(m, direct);
    }

    #[test]
    fn bound_values() {
        // Frozen from a 30-digit evaluation of the closed forms.
        let b2 = named_bounds(2, 2).unwrap();
        assert!(rel_close(b2.conjectured, 2.0, 1e-14));
        let b3 = named_bounds(3, 4).unwrap();
        assert!(rel_close(b3.k3_lower.unwrap(), 2.244_924_096_618_746, 1e-14));
        assert!(rel_close(b3.certified, 10.150_087_774_487_463, 1e-14));
        assert!(rel_close(b3.bollobas_meir, 13.617_771_744_806_114, 1e-14));
        assert!(rel_close(b3.conjectured_path, 2.039_648_902_655_505_6, 1e-14));
        let b6 = named_bounds(6, 200).unwrap();
        assert!(rel_close(b6.certified, 15.357_953_166_968_595, 1e-14));
        assert!(named_bounds(1, 2).is_err());
        assert!(named_bounds(5, 2).unwrap().k3_lower.is_none());
    }

    #[test]
    fn containment_is_checked() {
        let err = PointSet::from_rows(vec![vec![0.5, 1.2]], Container::UnitCube).unwrap_err();
        assert_eq!(
            err,
            Error::OutsideContainer {
                index: 0,
                container: "unit_cube".into()
            }
        );
        assert!(PointSet::from_rows(vec![vec![-0.5, 0.5]], Container::HalfCube).is_ok());
        assert!(PointSet::from_rows(vec![], Container::UnitCube).is_err());
        assert!(
            PointSet::new(2, vec![vec![0.1, 0.2].into(), vec![0.3].into()], Container::UnitCube)
                .is_err()
        );
        assert!(PointSet::from_rows(vec![vec![0.0, 0.0, 0.0]], Container::PlanarRegion).is_err());
    }

    #[test]
    fn tolerance_helpers() {
        let t = Tolerance::default();
        assert!(t.le(4.0 + 1e-12, 4.0));
        assert!(!t.le(4.0 + 1e-6, 4.0));
        assert!(t.eq(0.0, 1e-13));
        assert!(t.log_le(f64::NEG_INFINITY, -5.0));
        assert!(t.log_le(2.0, 2.0));
        assert!(!t.log_le(2.0 + 1e-6, 2.0));
    }
}
