//! Hamiltonian cycles in the cube of a tree, and the MST-based tour.
//!
//! Root the tree at the anchor and walk it depth-first. A vertex at even depth
//! is emitted when the walk first enters it, a vertex at odd depth when the
//! walk leaves it for the last time. Between two consecutive emissions the
//! walk climbs through at most one already-emitted vertex and descends at most
//! two levels, so consecutive vertices are at tree distance at most 3. The
//! closed walk crosses every tree edge once in each direction and never
//! backtracks between emissions, so every tree edge lies on exactly two of the
//! cycle's hop paths. The anchor's last child has odd depth and is emitted just
//! before the walk returns to the anchor, which makes the closing edge a tree
//! edge.
//!
//! The construction is trusted only through [`UsageCertificate`], which is
//! recomputed from scratch on a differently rooted copy of the tree.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::geometry::{PointSet, PowerCost, Tolerance};
use crate::graphs::{SpanningTree, Tour};
use crate::mst::build_mst;
use crate::verifiers::{bound_report, Algorithm, AlgorithmResult, BoundReport};

/// Which tree edges each cycle edge uses, and how often each tree edge is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageCertificate {
    /// For cycle edge `i` (from `order[i]` to `order[i+1]`), the ids of the tree
    /// edges on the tree path between its endpoints.
    pub hops: Vec<Vec<usize>>,
    /// Usage count per tree edge id.
    pub usage: Vec<u32>,
}

impl UsageCertificate {
    /// Measures a cyclic vertex order against a tree. Fails if some hop spans
    /// more than three tree edges.
    pub fn compute(tree: &SpanningTree, order: &[usize]) -> Result<UsageCertificate> {
        let m = tree.n();
        let adj = tree.adjacency();
        // BFS from local vertex 0.
        let mut parent = vec![usize::MAX; m];
        let mut parent_edge = vec![usize::MAX; m];
        let mut depth = vec![usize::MAX; m];
        depth[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &(y, id) in &adj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    parent_edge[y] = id;
                    queue.push_back(y);
                }
            }
        }
        let local = |v: usize| {
            tree.local_index(v)
                .ok_or_else(|| Error::certificate(format!("vertex {v} is not in the tree")))
        };
        let mut hops = Vec::with_capacity(order.len());
        let mut usage = vec![0u32; tree.edges().len()];
        for i in 0..order.len() {
            let (mut x, mut y) = (local(order[i])?, local(order[(i + 1) % order.len()])?);
            let mut path = Vec::new();
            while x != y {
                if path.len() == 3 {
                    return Err(Error::certificate(format!(
                        "hop {} -> {} spans more than 3 tree edges",
                        order[i],
                        order[(i + 1) % order.len()]
                    )));
                }
                if depth[x] >= depth[y] {
                    path.push(parent_edge[x]);
                    x = parent[x];
                } else {
                    path.push(parent_edge[y]);
                    y = parent[y];
                }
            }
            for &id in &path {
                usage[id] += 1;
            }
            hops.push(path);
        }
        Ok(UsageCertificate { hops, usage })
    }

    /// Checks every condition of the cube-of-a-tree traversal.
    pub fn verify(&self, tree: &SpanningTree, order: &[usize], anchor: usize) -> Result<()> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != tree.vertices() {
            return Err(Error::certificate("cycle is not a permutation of the tree's vertices"));
        }
        if let Some((i, h)) = self.hops.iter().enumerate().find(|(_, h)| !(1..=3).contains(&h.len()))
        {
            return Err(Error::certificate(format!(
                "cycle edge {i} uses {} tree edges",
                h.len()
            )));
        }
        if let Some((id, &u)) = self.usage.iter().enumerate().find(|(_, &u)| u != 2) {
            return Err(Error::certificate(format!("tree edge {id} is used {u} times")));
        }
        let total: u32 = self.usage.iter().sum();
        if total as usize != 2 * tree.edges().len() {
            return Err(Error::certificate("usage counts do not sum to 2(n-1)"));
        }
        let pos = order
            .iter()
            .position(|&v| v == anchor)
            .ok_or_else(|| Error::certificate("anchor missing from the cycle"))?;
        let before = (pos + order.len() - 1) % order.len();
        if self.hops[pos].len() != 1 && self.hops[before].len() != 1 {
            return Err(Error::certificate(format!(
                "no cycle edge at anchor {anchor} is a tree edge"
            )));
        }
        Ok(())
    }
}

/// Hamiltonian cycle in the cube of `tree` using every tree edge exactly twice,
/// with a tree edge incident to `anchor`.
pub fn tree_cube_cycle(
    tree: &SpanningTree,
    points: &PointSet,
    anchor: usize,
) -> Result<(Tour, UsageCertificate)> {
    let m = tree.n();
    if m < 3 {
        return Err(Error::invalid(format!(
            "the tree-cube traversal needs at least 3 vertices, got {m}"
        )));
    }
    let root = tree
        .local_index(anchor)
        .ok_or_else(|| Error::invalid(format!("anchor {anchor} is not a tree vertex")))?;
    let order = parity_traversal(tree, root);
    let certificate = UsageCertificate::compute(tree, &order)?;
    certificate.verify(tree, &order, anchor)?;
    let tour = Tour::new(points, order)?;
    Ok((tour, certificate))
}

/// Iterative depth-first walk emitting even-depth vertices on entry and
/// odd-depth vertices on exit. Children are visited in increasing index order.
fn parity_traversal(tree: &SpanningTree, root: usize) -> Vec<usize> {
    let mut adj = tree.adjacency();
    for list in &mut adj {
        list.sort_unstable();
    }
    let vertices = tree.vertices();
    let mut order = Vec::with_capacity(vertices.len());
    // (vertex, parent, next neighbor slot, depth is odd)
    let mut stack: Vec<(usize, usize, usize, bool)> = vec![(root, usize::MAX, 0, false)];
    order.push(vertices[root]);
    while let Some(top) = stack.last_mut() {
        let (v, parent, slot, odd) = *top;
        if slot < adj[v].len() {
            top.2 += 1;
            let child = adj[v][slot].0;
            if child == parent {
                continue;
            }
            if odd {
                order.push(vertices[child]);
            }
            stack.push((child, v, 0, !odd));
        } else {
            if odd {
                order.push(vertices[v]);
            }
            stack.pop();
        }
    }
    order
}

/// A cube-of-tree cycle together with its cost and the tree-based bound
/// `S_k(H) <= (2/3)·3^k·S_k(T)`.
#[derive(Debug, Clone)]
pub struct CycleBound {
    pub tour: Tour,
    pub certificate: UsageCertificate,
    pub cycle_cost: PowerCost,
    pub tree_cost: PowerCost,
    /// `ln((2/3)·3^k·S_k(T))`.
    pub log_bound: f64,
}

impl CycleBound {
    pub fn bound(&self) -> Option<f64> {
        let b = self.log_bound.exp();
        b.is_finite().then_some(b)
    }

    pub fn holds(&self) -> bool {
        Tolerance::default().log_le(self.cycle_cost.log_unscaled(), self.log_bound)
    }
}

/// Builds the cube-of-tree cycle and checks it against the tree-cost bound.
pub fn tree_to_cycle_cost_bound(
    tree: &SpanningTree,
    points: &PointSet,
    k: u32,
) -> Result<CycleBound> {
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    let anchor = tree.vertices()[0];
    let (tour, certificate) = tree_cube_cycle(tree, points, anchor)?;
    // Each hop is no longer than the tree path it uses.
    let tol = Tolerance::default();
    for (e, hop) in tour.edges().iter().zip(&certificate.hops) {
        let detour: f64 = hop.iter().map(|&id| tree.edges()[id].weight).sum();
        if !tol.le(e.weight, detour) {
            return Err(Error::certificate(format!(
                "hop ({}, {}) of length {} exceeds its tree path length {}",
                e.u, e.v, e.weight, detour
            )));
        }
    }
    let cycle_cost = tour.cost(k);
    let tree_cost = tree.cost(k);
    let log_bound = (2.0f64 / 3.0).ln() + f64::from(k) * 3f64.ln() + tree_cost.log_unscaled();
    let result = CycleBound {
        tour,
        certificate,
        cycle_cost,
        tree_cost,
        log_bound,
    };
    if !result.holds() {
        return Err(Error::certificate(format!(
            "cycle cost exp({}) exceeds the tree bound exp({})",
            result.cycle_cost.log_unscaled(),
            result.log_bound
        )));
    }
    Ok(result)
}

/// MST followed by the cube-of-tree traversal; two points give the doubled edge.
pub fn mst_sekanina_tour(points: &PointSet, k: u32) -> Result<(Tour, BoundReport)> {
    let started = std::time::Instant::now();
    let tour = match points.len() {
        0 | 1 => {
            return Err(Error::invalid("a tour needs at least 2 points"));
        }
        2 => Tour::new(points, vec![0, 1])?,
        _ => {
            let mst = build_mst(points);
            tree_to_cycle_cost_bound(&mst, points, k.max(1))?.tour
        }
    };
    let result = AlgorithmResult::new(Algorithm::MstSekanina, tour.cost(k.max(1)))
        .with_wall_time(started.elapsed());
    let report = bound_report(points, k, "mst-sekanina", vec![result])?;
    Ok((tour, report))
}
