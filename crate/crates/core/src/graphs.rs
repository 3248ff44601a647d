//! Edge structures over point indices: spanning trees, tours, Hamiltonian
//! paths, vertex-disjoint path systems and matchings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::geometry::{Edge, PointSet, PowerCost};

const WEIGHT_REL_TOL: f64 = 1e-12;

/// A broken invariant, as reported by [`Validate::violations`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub message: String,
}

impl Violation {
    fn new(invariant: &'static str, message: impl Into<String>) -> Self {
        Violation {
            invariant,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Structures whose type invariants can be checked against a point set.
pub trait Validate {
    /// Every violated invariant; empty iff the structure is valid.
    fn violations(&self, points: &PointSet) -> Vec<Violation>;

    fn is_valid(&self, points: &PointSet) -> bool {
        self.violations(points).is_empty()
    }
}

pub fn validate<S: Validate + ?Sized>(structure: &S, points: &PointSet) -> Vec<Violation> {
    structure.violations(points)
}

fn weight_violations(edges: &[Edge], points: &PointSet, out: &mut Vec<Violation>) {
    for e in edges {
        if e.u >= points.len() || e.v >= points.len() {
            out.push(Violation::new(
                "index range",
                format!("edge ({}, {}) references a missing point", e.u, e.v),
            ));
            continue;
        }
        if e.u == e.v {
            out.push(Violation::new("u != v", format!("self-loop at vertex {}", e.u)));
        }
        let d = points.dist(e.u, e.v);
        if (e.weight - d).abs() > WEIGHT_REL_TOL * d.max(1.0) {
            out.push(Violation::new(
                "edge weight",
                format!(
                    "edge ({}, {}) has weight {} but the points are {} apart",
                    e.u, e.v, e.weight, d
                ),
            ));
        }
    }
}

fn permutation_violations(order: &[usize], n: usize, out: &mut Vec<Violation>) {
    let mut seen = vec![0usize; n];
    for &v in order {
        if v >= n {
            out.push(Violation::new(
                "permutation",
                format!("order not a permutation: vertex {v} out of range"),
            ));
        } else {
            seen[v] += 1;
        }
    }
    for (v, &count) in seen.iter().enumerate() {
        match count {
            1 => {}
            0 => out.push(Violation::new(
                "permutation",
                format!("order not a permutation: vertex {v} missing"),
            )),
            2 => out.push(Violation::new(
                "permutation",
                format!("order not a permutation: vertex {v} twice"),
            )),
            c => out.push(Violation::new(
                "permutation",
                format!("order not a permutation: vertex {v} appears {c} times"),
            )),
        }
    }
}

fn consecutive_violations(order: &[usize], edges: &[Edge], closed: bool, out: &mut Vec<Violation>) {
    let hops = if closed {
        order.len()
    } else {
        order.len().saturating_sub(1)
    };
    if edges.len() != hops {
        out.push(Violation::new(
            "edge count",
            format!("expected {hops} edges, found {}", edges.len()),
        ));
        return;
    }
    for (i, e) in edges.iter().enumerate() {
        let (a, b) = (order[i], order[(i + 1) % order.len()]);
        if e.key() != (a.min(b), a.max(b)) {
            out.push(Violation::new(
                "consecutive edges",
                format!("edge {i} is ({}, {}) but the order joins {a} and {b}", e.u, e.v),
            ));
        }
    }
}

fn check_indices(order: &[usize], points: &PointSet) -> Result<()> {
    match order.iter().find(|&&v| v >= points.len()) {
        Some(v) => Err(Error::invalid(format!(
            "vertex {v} out of range for {} points",
            points.len()
        ))),
        None => Ok(()),
    }
}

fn edges_along(order: &[usize], points: &PointSet, closed: bool) -> Vec<Edge> {
    let mut edges: Vec<Edge> = order
        .windows(2)
        .map(|w| Edge::between(points, w[0], w[1]))
        .collect();
    if closed {
        let (&first, &last) = (order.first().unwrap(), order.last().unwrap());
        edges.push(Edge::between(points, last, first));
    }
    edges
}

/// A tree over a set of point indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl SpanningTree {
    /// Builds a tree, checking that `edges` connect `vertices` without cycles.
    pub fn new(mut vertices: Vec<usize>, edges: Vec<Edge>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let tree = SpanningTree { vertices, edges };
        let problems = tree.structural_violations();
        if problems.is_empty() {
            Ok(tree)
        } else {
            Err(Error::invalid(join_violations(&problems)))
        }
    }

    pub(crate) fn from_parts(vertices: Vec<usize>, edges: Vec<Edge>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        SpanningTree { vertices, edges }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Sorted vertex indices.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn cost(&self, k: u32) -> PowerCost {
        PowerCost::of_edges(k, &self.edges)
    }

    /// Position of a vertex in [`SpanningTree::vertices`].
    pub fn local_index(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Per-vertex neighbor lists indexed by local position; entries are
    /// `(local neighbor, edge id)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (id, e) in self.edges.iter().enumerate() {
            let (Some(a), Some(b)) = (self.local_index(e.u), self.local_index(e.v)) else {
                continue;
            };
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        adj
    }

    fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.vertices.len();
        if m == 0 {
            out.push(Violation::new("non-empty", "tree has no vertices"));
            return out;
        }
        if self.edges.len() != m - 1 {
            out.push(Violation::new(
                "edge count",
                format!("tree on {m} vertices has {} edges", self.edges.len()),
            ));
        }
        let mut dsu = DisjointSets::new(m);
        for e in &self.edges {
            match (self.local_index(e.u), self.local_index(e.v)) {
                (Some(a), Some(b)) => {
                    if !dsu.union(a, b) {
                        out.push(Violation::new(
                            "acyclic",
                            format!("edge ({}, {}) closes a cycle", e.u, e.v),
                        ));
                    }
                }
                _ => out.push(Violation::new(
                    "vertex set",
                    format!("edge ({}, {}) leaves the vertex set", e.u, e.v),
                )),
            }
        }
        if dsu.set_count() != 1 {
            out.push(Violation::new(
                "connected",
                format!("tree has {} components", dsu.set_count()),
            ));
        }
        out
    }
}

impl Validate for SpanningTree {
    fn violations(&self, points: &PointSet) -> Vec<Violation> {
        let mut out = self.structural_violations();
        weight_violations(&self.edges, points, &mut out);
        if self.vertices.len() != points.len() || self.vertices.last() >= Some(&points.len()) {
            out.push(Violation::new(
                "spanning",
                format!("tree spans {} of {} points", self.vertices.len(), points.len()),
            ));
        }
        out
    }
}

/// A Hamiltonian cycle, stored as a visiting order plus its closing-inclusive edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    order: Vec<usize>,
    edges: Vec<Edge>,
}

impl Tour {
    /// The cycle visiting `order` and returning to its start. A two-vertex tour is
    /// the doubled edge.
    pub fn new(points: &PointSet, order: Vec<usize>) -> Result<Tour> {
        if order.len() < 2 {
            return Err(Error::invalid("a tour needs at least 2 vertices"));
        }
        check_indices(&order, points)?;
        let edges = edges_along(&order, points, true);
        Ok(Tour { order, edges })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn cost(&self, k: u32) -> PowerCost {
        PowerCost::of_edges(k, &self.edges)
    }

    /// The Hamiltonian path left after deleting edge `i` (joining `order[i]` and `order[i+1]`).
    pub fn open_at(&self, points: &PointSet, i: usize) -> Result<HamPath> {
        let n = self.order.len();
        let order: Vec<usize> = (0..n).map(|j| self.order[(i + 1 + j) % n]).collect();
        HamPath::new(points, order)
    }

    pub fn to_record(&self, k: Option<u32>) -> OrderRecord {
        OrderRecord {
            order: self.order.clone(),
            cost: k.map(|k| CostBlock::from(&self.cost(k))),
        }
    }
}

impl Validate for Tour {
    fn violations(&self, points: &PointSet) -> Vec<Violation> {
        let mut out = Vec::new();
        permutation_violations(&self.order, points.len(), &mut out);
        consecutive_violations(&self.order, &self.edges, true, &mut out);
        weight_violations(&self.edges, points, &mut out);
        out
    }
}

/// A Hamiltonian path.
#[derive(Debug, Clone, PartialEq)]
pub struct HamPath {
    order: Vec<usize>,
    edges: Vec<Edge>,
}

impl HamPath {
    pub fn new(points: &PointSet, order: Vec<usize>) -> Result<HamPath> {
        if order.is_empty() {
            return Err(Error::invalid("a path needs at least 1 vertex"));
        }
        check_indices(&order, points)?;
        let edges = edges_along(&order, points, false);
        Ok(HamPath { order, edges })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.order[0], *self.order.last().unwrap())
    }

    pub fn cost(&self, k: u32) -> PowerCost {
        PowerCost::of_edges(k, &self.edges)
    }

    pub fn to_record(&self, k: Option<u32>) -> OrderRecord {
        OrderRecord {
            order: self.order.clone(),
            cost: k.map(|k| CostBlock::from(&self.cost(k))),
        }
    }
}

impl Validate for HamPath {
    fn violations(&self, points: &PointSet) -> Vec<Violation> {
        let mut out = Vec::new();
        permutation_violations(&self.order, points.len(), &mut out);
        consecutive_violations(&self.order, &self.edges, false, &mut out);
        weight_violations(&self.edges, points, &mut out);
        out
    }
}

/// Closes a Hamiltonian path into a tour by joining its endpoints.
pub fn close_path(path: &HamPath, points: &PointSet) -> Result<Tour> {
    if path.len() < 2 {
        return Err(Error::invalid("cannot close a path on fewer than 2 vertices"));
    }
    let mut edges = path.edges.clone();
    let (a, b) = path.endpoints();
    edges.push(Edge::between(points, b, a));
    Ok(Tour {
        order: path.order.clone(),
        edges,
    })
}

/// A set of vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: Vec<Edge>) -> Result<Matching> {
        let m = Matching { edges };
        if let Some(v) = m.repeated_vertex() {
            return Err(Error::invalid(format!("vertex {v} is matched twice")));
        }
        Ok(m)
    }

    fn repeated_vertex(&self) -> Option<usize> {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .flat_map(|e| [e.u, e.v])
            .find(|&v| !seen.insert(v))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        2 * self.edges.len() == n
    }

    pub fn cost(&self, k: u32) -> PowerCost {
        PowerCost::of_edges(k, &self.edges)
    }

    pub fn to_record(&self, k: Option<u32>) -> EdgeListRecord {
        EdgeListRecord::new(&self.edges, k)
    }
}

impl Validate for Matching {
    fn violations(&self, points: &PointSet) -> Vec<Violation> {
        let mut out = Vec::new();
        if let Some(v) = self.repeated_vertex() {
            out.push(Violation::new("vertex disjoint", format!("vertex {v} is matched twice")));
        }
        weight_violations(&self.edges, points, &mut out);
        out
    }
}

/// Splits an even tour into its two alternating perfect matchings, cheaper first.
///
/// The two matchings partition the tour's edges, so their costs add up to the
/// tour cost. For a 2-vertex tour both matchings are the single pair.
pub fn cycle_to_matchings(tour: &Tour, k: u32) -> Result<(Matching, Matching)> {
    let n = tour.len();
    if n < 2 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "splitting a tour into perfect matchings needs an even n >= 2, got {n}"
        )));
    }
    let even: Vec<Edge> = tour.edges.iter().step_by(2).copied().collect();
    let odd: Vec<Edge> = tour.edges.iter().skip(1).step_by(2).copied().collect();
    let (a, b) = (Matching::new(even)?, Matching::new(odd)?);
    if b.cost(k).log_unscaled() < a.cost(k).log_unscaled() {
        Ok((b, a))
    } else {
        Ok((a, b))
    }
}

const NONE: usize = usize::MAX;

/// A vertex-disjoint union of simple paths covering `0..n`.
///
/// Every vertex of degree below 2 is an endpoint; `partner[v]` holds the opposite
/// endpoint of `v`'s path (an isolated vertex is its own partner).
#[derive(Debug, Clone)]
pub struct PathSystem {
    nbrs: Vec<[usize; 2]>,
    partner: Vec<usize>,
    components: DisjointSets,
    edges: Vec<Edge>,
}

impl PathSystem {
    /// `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        PathSystem {
            nbrs: vec![[NONE; 2]; n],
            partner: (0..n).collect(),
            components: DisjointSets::new(n),
            edges: Vec::new(),
        }
    }

    /// A path system from explicit vertex sequences; uncovered vertices stay isolated.
    pub fn from_paths(points: &PointSet, paths: &[Vec<usize>]) -> Result<Self> {
        let mut sys = PathSystem::new(points.len());
        let mut used = vec![false; points.len()];
        for path in paths {
            for &v in path {
                if v >= points.len() {
                    return Err(Error::invalid(format!("vertex {v} out of range")));
                }
                if std::mem::replace(&mut used[v], true) {
                    return Err(Error::invalid(format!("vertex {v} lies on two paths")));
                }
            }
            for w in path.windows(2) {
                sys.join(Edge::between(points, w[0], w[1]))?;
            }
        }
        Ok(sys)
    }

    /// A path system from an edge list, rejecting anything that is not a disjoint
    /// union of paths.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let problems = path_system_violations(n, edges);
        if !problems.is_empty() {
            return Err(Error::invalid(join_violations(&problems)));
        }
        let mut sys = PathSystem::new(n);
        for &e in edges {
            sys.join(e)?;
        }
        Ok(sys)
    }

    pub fn n(&self) -> usize {
        self.nbrs.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].iter().filter(|&&x| x != NONE).count()
    }

    pub fn is_endpoint(&self, v: usize) -> bool {
        self.nbrs[v][1] == NONE
    }

    /// The opposite endpoint of `v`'s path, if `v` is an endpoint.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.is_endpoint(v).then(|| self.partner[v])
    }

    pub fn path_count(&self) -> usize {
        self.n() - self.edges.len()
    }

    /// `(a, b)` for every path, with `a <= b`; isolated vertices give `(v, v)`.
    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .filter(|&v| self.is_endpoint(v) && v <= self.partner[v])
            .map(|v| (v, self.partner[v]))
            .collect()
    }

    /// True if adding `uv` keeps the structure a union of paths.
    pub fn can_join(&self, u: usize, v: usize) -> bool {
        u != v && self.is_endpoint(u) && self.is_endpoint(v) && self.partner[u] != v
    }

    /// Adds an edge between endpoints of two different paths.
    pub fn join(&mut self, e: Edge) -> Result<()> {
        let (u, v) = (e.u, e.v);
        if u >= self.n() || v >= self.n() {
            return Err(Error::invalid(format!("edge ({u}, {v}) out of range")));
        }
        if !self.can_join(u, v) {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) does not join endpoints of two different paths"
            )));
        }
        let (a, b) = (self.partner[u], self.partner[v]);
        for (x, y) in [(u, v), (v, u)] {
            let slot = if self.nbrs[x][0] == NONE { 0 } else { 1 };
            self.nbrs[x][slot] = y;
        }
        self.partner[a] = b;
        self.partner[b] = a;
        self.components.union(u, v);
        self.edges.push(e);
        Ok(())
    }

    /// Component id of a vertex.
    pub fn component(&mut self, v: usize) -> usize {
        self.components.find(v)
    }

    /// Vertex sequence of every path, each starting at its smaller endpoint.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        self.endpoints()
            .into_iter()
            .map(|(a, _)| self.walk_from(a))
            .collect()
    }

    fn walk_from(&self, start: usize) -> Vec<usize> {
        let mut seq = vec![start];
        let (mut prev, mut cur) = (NONE, start);
        loop {
            let next = self.nbrs[cur].iter().copied().find(|&x| x != NONE && x != prev);
            match next {
                Some(x) => {
                    seq.push(x);
                    prev = cur;
                    cur = x;
                }
                None => return seq,
            }
        }
    }

    /// The single remaining path as a [`HamPath`].
    pub fn to_ham_path(&self, points: &PointSet) -> Result<HamPath> {
        if self.path_count() != 1 {
            return Err(Error::invalid(format!(
                "path system still has {} paths",
                self.path_count()
            )));
        }
        let start = (0..self.n()).find(|&v| self.is_endpoint(v)).unwrap();
        HamPath::new(points, self.walk_from(start))
    }

    pub fn cost(&self, k: u32) -> PowerCost {
        PowerCost::of_edges(k, &self.edges)
    }

    pub fn to_record(&self, k: Option<u32>) -> EdgeListRecord {
        EdgeListRecord::new(&self.edges, k)
    }
}

impl Validate for PathSystem {
    fn violations(&self, points: &PointSet) -> Vec<Violation> {
        let mut out = path_system_violations(self.n(), &self.edges);
        if self.n() != points.len() {
            out.push(Violation::new(
                "vertex count",
                format!("path system has {} vertices, point set has {}", self.n(), points.len()),
            ));
        }
        weight_violations(&self.edges, points, &mut out);
        out
    }
}

/// Checks that an edge list over `0..n` forms a vertex-disjoint union of paths.
pub fn path_system_violations(n: usize, edges: &[Edge]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut degree = vec![0usize; n];
    let mut dsu = DisjointSets::new(n);
    for e in edges {
        if e.u >= n || e.v >= n {
            out.push(Violation::new(
                "index range",
                format!("edge ({}, {}) out of range", e.u, e.v),
            ));
            continue;
        }
        if e.u == e.v {
            out.push(Violation::new("u != v", format!("self-loop at vertex {}", e.u)));
            continue;
        }
        degree[e.u] += 1;
        degree[e.v] += 1;
        if !dsu.union(e.u, e.v) {
            out.push(Violation::new(
                "acyclic",
                format!("edge ({}, {}) closes a cycle", e.u, e.v),
            ));
        }
    }
    for (v, &d) in degree.iter().enumerate() {
        if d > 2 {
            out.push(Violation::new("degree <= 2", format!("degree > 2 at vertex {v}")));
        }
    }
    out
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.message.as_str()).collect::<Vec<_>>().join("; ")
}

/// Cost block attached to serialized structures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostBlock {
    pub k: u32,
    /// `null` when the unscaled cost overflows.
    #[serde(rename = "S_k")]
    pub unscaled: Option<f64>,
    #[serde(rename = "s_k")]
    pub scaled: f64,
    /// `null` when every edge has zero length.
    #[serde(rename = "log_S_k")]
    pub log_unscaled: Option<f64>,
}

impl From<&PowerCost> for CostBlock {
    fn from(c: &PowerCost) -> Self {
        CostBlock {
            k: c.exponent(),
            unscaled: c.unscaled(),
            scaled: c.scaled(),
            log_unscaled: c.log_unscaled().is_finite().then(|| c.log_unscaled()),
        }
    }
}

/// `{"order": [...], "cost": {...}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub order: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostBlock>,
}

impl OrderRecord {
    pub fn to_tour(&self, points: &PointSet) -> Result<Tour> {
        Tour::new(points, self.order.clone())
    }

    pub fn to_path(&self, points: &PointSet) -> Result<HamPath> {
        HamPath::new(points, self.order.clone())
    }
}

/// `{"edges": [[u, v], ...], "cost": {...}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeListRecord {
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostBlock>,
}

impl EdgeListRecord {
    pub fn new(edges: &[Edge], k: Option<u32>) -> Self {
        EdgeListRecord {
            edges: edges.iter().map(|e| [e.u, e.v]).collect(),
            cost: k.map(|k| CostBlock::from(&PowerCost::of_edges(k, edges))),
        }
    }

    /// Re-measures the edges on `points`.
    pub fn to_edges(&self, points: &PointSet) -> Result<Vec<Edge>> {
        self.edges
            .iter()
            .map(|&[u, v]| {
                if u >= points.len() || v >= points.len() {
                    Err(Error::invalid(format!("edge ({u}, {v}) out of range")))
                } else {
                    Ok(Edge::between(points, u, v))
                }
            })
            .collect()
    }
}

impl SpanningTree {
    pub fn to_record(&self, k: Option<u32>) -> EdgeListRecord {
        EdgeListRecord::new(&self.edges, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Container;

    fn square() -> PointSet {
        PointSet::from_rows(
            vec![vec![0., 0.], vec![1., 0.], vec![1., 1.], vec![0., 1.]],
            Container::UnitCube,
        )
        .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn closing_a_square_path() {
        let pts = square();
        let path = HamPath::new(&pts, vec![0, 1, 2, 3]).unwrap();
        assert!(close(path.cost(2).unscaled().unwrap(), 3.0));
        let tour = close_path(&path, &pts).unwrap();
        assert!(tour.violations(&pts).is_empty());
        assert!(close(tour.cost(2).unscaled().unwrap(), 4.0));
    }

    #[test]
    fn closing_two_points_doubles_the_edge() {
        let pts = PointSet::from_rows(vec![vec![0.1, 0.2], vec![0.4, 0.6]], Container::UnitCube)
            .unwrap();
        let tour = close_path(&HamPath::new(&pts, vec![0, 1]).unwrap(), &pts).unwrap();
        assert_eq!(tour.edges().len(), 2);
        assert!(close(tour.cost(3).unscaled().unwrap(), 2.0 * 0.5f64.powi(3)));
        assert!(tour.violations(&pts).is_empty());
    }

    #[test]
    fn closing_the_k3_code() {
        let pts = PointSet::from_rows(
            vec![
                vec![0., 0., 0.],
                vec![0., 1., 1.],
                vec![1., 0., 1.],
                vec![1., 1., 0.],
            ],
            Container::UnitCube,
        )
        .unwrap();
        let tour = close_path(&HamPath::new(&pts, vec![0, 1, 2, 3]).unwrap(), &pts).unwrap();
        assert!(close(tour.cost(3).unscaled().unwrap(), 11.313708498984761));
    }

    #[test]
    fn one_point_paths_cannot_close() {
        let pts = square();
        let p = HamPath::new(&pts, vec![2]).unwrap();
        assert!(close_path(&p, &pts).is_err());
        assert!(Tour::new(&pts, vec![1]).is_err());
    }

    #[test]
    fn square_tour_splits_into_two_unit_matchings() {
        let pts = square();
        let tour = Tour::new(&pts, vec![0, 1, 2, 3]).unwrap();
        let (m1, m2) = cycle_to_matchings(&tour, 2).unwrap();
        assert!(m1.is_perfect(4) && m2.is_perfect(4));
        assert!(close(m1.cost(2).unscaled().unwrap(), 2.0));
        assert!(close(m2.cost(2).unscaled().unwrap(), 2.0));
        assert!(m1.violations(&pts).is_empty());
    }

    #[test]
    fn two_point_tour_splits_into_identical_pairs() {
        let pts = square();
        let sub = pts.subset(&[0, 2]).unwrap();
        let tour = Tour::new(&sub, vec![0, 1]).unwrap();
        let (m1, m2) = cycle_to_matchings(&tour, 2).unwrap();
        assert_eq!(m1.edges()[0].key(), m2.edges()[0].key());
        assert!(close(m1.cost(2).unscaled().unwrap(), 2.0));
    }

    #[test]
    fn odd_tours_are_rejected() {
        let pts = square();
        let tour = Tour::new(&pts, vec![0, 1, 2]).unwrap();
        assert!(cycle_to_matchings(&tour, 2).is_err());
    }

    #[test]
    fn validation_messages() {
        let pts = PointSet::from_rows(
            (0..5).map(|i| vec![i as f64 / 5.0, 0.5]).collect(),
            Container::UnitCube,
        )
        .unwrap();
        let ok = Tour::new(&pts, vec![0, 2, 4, 1, 3]).unwrap();
        assert!(validate(&ok, &pts).is_empty());
        let bad = Tour::new(&pts, vec![0, 3, 1, 3, 2]).unwrap();
        let msgs: Vec<String> = validate(&bad, &pts).iter().map(|v| v.to_string()).collect();
        assert!(msgs.contains(&"order not a permutation: vertex 3 twice".to_string()));
        assert!(msgs.contains(&"order not a permutation: vertex 4 missing".to_string()));

        let star: Vec<Edge> = [6, 8, 9]
            .iter()
            .map(|&v| Edge {
                u: 7,
                v,
                weight: 1.0,
            })
            .collect();
        let msgs: Vec<String> = path_system_violations(10, &star)
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(msgs, vec!["degree > 2 at vertex 7".to_string()]);
        assert!(PathSystem::from_edges(10, &star).is_err());
    }

    #[test]
    fn path_system_joins() {
        let pts = PointSet::from_rows(
            (0..6).map(|i| vec![i as f64 / 6.0]).collect(),
            Container::UnitCube,
        )
        .unwrap();
        let mut sys = PathSystem::new(6);
        assert_eq!(sys.path_count(), 6);
        sys.join(Edge::between(&pts, 0, 1)).unwrap();
        sys.join(Edge::between(&pts, 1, 2)).unwrap();
        assert_eq!(sys.path_count(), 4);
        assert_eq!(sys.partner(0), Some(2));
        assert_eq!(sys.partner(1), None);
        assert!(!sys.can_join(0, 2));
        assert!(sys.join(Edge::between(&pts, 2, 0)).is_err());
        assert!(sys.join(Edge::between(&pts, 1, 3)).is_err());
        sys.join(Edge::between(&pts, 4, 3)).unwrap();
        assert_eq!(sys.endpoints(), vec![(0, 2), (3, 4), (5, 5)]);
        sys.join(Edge::between(&pts, 2, 4)).unwrap();
        sys.join(Edge::between(&pts, 5, 3)).unwrap();
        assert_eq!(sys.path_count(), 1);
        let path = sys.to_ham_path(&pts).unwrap();
        assert_eq!(path.order(), &[0, 1, 2, 4, 3, 5]);
        assert!(path.violations(&pts).is_empty());
        assert!(sys.violations(&pts).is_empty());
    }

    #[test]
    fn from_paths_rejects_overlap() {
        let pts = square();
        assert!(PathSystem::from_paths(&pts, &[vec![0, 1], vec![1, 2]]).is_err());
        let sys = PathSystem::from_paths(&pts, &[vec![3, 1, 0]]).unwrap();
        assert_eq!(sys.path_count(), 2);
        assert_eq!(sys.paths(), vec![vec![0, 1, 3], vec![2]]);
    }

    #[test]
    fn tree_checks() {
        let pts = square();
        let e = |u, v| Edge::between(&pts, u, v);
        assert!(SpanningTree::new(vec![0, 1, 2, 3], vec![e(0, 1), e(1, 2), e(2, 3)]).is_ok());
        assert!(SpanningTree::new(vec![0, 1, 2, 3], vec![e(0, 1), e(1, 2), e(2, 0)]).is_err());
        assert!(SpanningTree::new(vec![0, 1, 2, 3], vec![e(0, 1), e(2, 3)]).is_err());
        let part = SpanningTree::new(vec![1, 2], vec![e(1, 2)]).unwrap();
        let msgs = part.violations(&pts);
        assert_eq!(msgs.len(), 1);
        assert_eq!(msgs[0].to_string(), "tree spans 2 of 4 points");
    }

    #[test]
    fn records_round_trip() {
        let pts = square();
        let tour = Tour::new(&pts, vec![0, 1, 2, 3]).unwrap();
        let json = serde_json::to_string(&tour.to_record(Some(2))).unwrap();
        assert!(json.starts_with(r#"{"order":[0,1,2,3],"cost":{"k":2,"S_k":"#));
        let back: OrderRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_tour(&pts).unwrap(), tour);
        let m = Matching::new(vec![Edge::between(&pts, 0, 2)]).unwrap();
        let rec = m.to_record(None);
        assert_eq!(serde_json::to_string(&rec).unwrap(), r#"{"edges":[[0,2]]}"#);
        assert_eq!(rec.to_edges(&pts).unwrap(), m.edges());
    }
}
