//! Exhaustive optimization for small instances.
//!
//! Searches enumerate in lexicographic order and only replace the incumbent on
//! a strictly smaller cost, so among optimal solutions the lexicographically
//! first one is returned. Branches whose partial cost already reaches the
//! incumbent are cut; this never changes the answer since weights are
//! nonnegative.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Edge, PointSet, PowerCost};
use crate::graphs::{HamPath, Matching, Tour};

pub const MAX_TOUR_POINTS: usize = 12;
pub const MAX_PATH_POINTS: usize = 12;
pub const MAX_MATCHING_POINTS: usize = 14;
pub const MAX_LEMMA7_M: usize = 14;

/// `(|x_i - x_j| / D)^k` with `D` the diameter, so that sums stay in range.
struct Weights {
    n: usize,
    w: Vec<f64>,
}

impl Weights {
    fn new(points: &PointSet, k: u32) -> Weights {
        let n = points.len();
        let mut d = vec![0.0; n * n];
        let mut max = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let x = points.dist(i, j);
                d[i * n + j] = x;
                d[j * n + i] = x;
                max = max.max(x);
            }
        }
        if max > 0.0 {
            for x in &mut d {
                *x = (*x / max).powi(k as i32);
            }
        }
        Weights { n, w: d }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    Ok(())
}

fn check_size(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge {
            what,
            actual: n,
            limit,
        });
    }
    Ok(())
}

struct Search<'a> {
    w: &'a Weights,
    cur: Vec<usize>,
    used: Vec<bool>,
    best: f64,
    best_order: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(w: &'a Weights) -> Self {
        Search {
            w,
            cur: Vec::with_capacity(w.n),
            used: vec![false; w.n],
            best: f64::INFINITY,
            best_order: Vec::new(),
        }
    }

    /// Extends `cur`; `closed` adds the edge back to `cur[0]` at the leaves.
    fn extend(&mut self, cost: f64, closed: bool) {
        let n = self.w.n;
        let last = *self.cur.last().expect("search starts from a vertex");
        if self.cur.len() == n {
            // Each cycle or path is met in both directions; keep the one whose
            // second (cycle) or first (path) entry is smaller.
            let (lo, hi) = if closed { (self.cur[1], self.cur[n - 1]) } else { (self.cur[0], self.cur[n - 1]) };
            if lo > hi {
                return;
            }
            let total = if closed { cost + self.w.get(last, self.cur[0]) } else { cost };
            if total < self.best {
                self.best = total;
                self.best_order.clone_from(&self.cur);
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let c = cost + self.w.get(last, v);
            if c >= self.best {
                continue;
            }
            self.used[v] = true;
            self.cur.push(v);
            self.extend(c, closed);
            self.cur.pop();
            self.used[v] = false;
        }
    }
}

/// Minimum `S_k` Hamiltonian cycle, `2 <= n <= 12`.
pub fn exact_min_tour(points: &PointSet, k: u32) -> Result<(Tour, PowerCost)> {
    check_k(k)?;
    let n = points.len();
    check_size("tour oracle points", n, MAX_TOUR_POINTS)?;
    if n < 2 {
        return Err(Error::invalid("a tour needs at least 2 points"));
    }
    let order = if n <= 3 {
        (0..n).collect()
    } else {
        let w = Weights::new(points, k);
        let mut s = Search::new(&w);
        s.used[0] = true;
        s.cur.push(0);
        s.extend(0.0, true);
        s.best_order
    };
    let tour = Tour::new(points, order)?;
    let cost = tour.cost(k);
    Ok((tour, cost))
}

/// Minimum `S_k` Hamiltonian path, `1 <= n <= 12`.
pub fn exact_min_path(points: &PointSet, k: u32) -> Result<(HamPath, PowerCost)> {
    check_k(k)?;
    let n = points.len();
    check_size("path oracle points", n, MAX_PATH_POINTS)?;
    let order = if n == 1 {
        vec![0]
    } else {
        let w = Weights::new(points, k);
        let mut s = Search::new(&w);
        for start in 0..n {
            s.used[start] = true;
            s.cur.push(start);
            s.extend(0.0, false);
            s.cur.pop();
            s.used[start] = false;
        }
        s.best_order
    };
    let path = HamPath::new(points, order)?;
    let cost = path.cost(k);
    Ok((path, cost))
}

/// Minimum `S_k` perfect matching, even `n <= 14`.
pub fn exact_min_matching(points: &PointSet, k: u32) -> Result<(Matching, PowerCost)> {
    check_k(k)?;
    let n = points.len();
    check_size("matching oracle points", n, MAX_MATCHING_POINTS)?;
    if n % 2 == 1 {
        return Err(Error::invalid(format!("a perfect matching needs an even number of points, got {n}")));
    }
    let w = Weights::new(points, k);
    let mut used = vec![false; n];
    let mut cur = Vec::with_capacity(n / 2);
    let mut best = (f64::INFINITY, Vec::new());
    match_rec(&w, &mut used, &mut cur, 0.0, &mut best);
    let edges: Vec<Edge> = best.1.iter().map(|&(u, v)| Edge::between(points, u, v)).collect();
    let matching = Matching::new(edges)?;
    let cost = matching.cost(k);
    Ok((matching, cost))
}

/// Pairs the lowest unmatched vertex with every later one in turn.
fn match_rec(
    w: &Weights,
    used: &mut [bool],
    cur: &mut Vec<(usize, usize)>,
    cost: f64,
    best: &mut (f64, Vec<(usize, usize)>),
) {
    let Some(u) = used.iter().position(|&x| !x) else {
        if cost < best.0 {
            *best = (cost, cur.clone());
        }
        return;
    };
    used[u] = true;
    for v in u + 1..w.n {
        if used[v] {
            continue;
        }
        let c = cost + w.get(u, v);
        if c >= best.0 {
            continue;
        }
        used[v] = true;
        cur.push((u, v));
        match_rec(w, used, cur, c, best);
        cur.pop();
        used[v] = false;
    }
    used[u] = false;
}

/// Maximum of `Σ_{i<j} (q_i - q_j)²` over `q ∈ [0,1]^m` and the first
/// maximizing assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSumMax {
    pub value: f64,
    pub witness: Vec<f64>,
}

/// Brute-force maximum of the pair sum over `{0,1}^m`.
///
/// Restricting to 0/1 assignments loses nothing: with the other coordinates
/// fixed, the objective is a convex quadratic in `q_i`, so its maximum over
/// `[0,1]` sits at an endpoint. Pushing coordinates to endpoints one at a time
/// never decreases the objective, hence some maximizer lies in `{0,1}^m`.
/// Masks are enumerated in increasing order with `q_1` as the most
/// significant bit.
pub fn lemma7_max_pair_sum(m: usize) -> Result<PairSumMax> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    check_size("m", m, MAX_LEMMA7_M)?;
    let mut best = PairSumMax {
        value: f64::NEG_INFINITY,
        witness: Vec::new(),
    };
    for mask in 0u32..1 << m {
        let q: Vec<f64> = (0..m).map(|i| f64::from((mask >> (m - 1 - i)) & 1)).collect();
        let mut sum = 0.0;
        for i in 0..m {
            for j in i + 1..m {
                sum += (q[i] - q[j]).powi(2);
            }
        }
        if sum > best.value {
            best = PairSumMax { value: sum, witness: q };
        }
    }
    Ok(best)
}

/// Box `[0,δ]^{k1} × [0,γ]^{k2}` for the generalized closest-pair bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxShape {
    pub delta: f64,
    pub gamma: f64,
    pub k1: usize,
    pub k2: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosestPairCheck {
    pub pair: (usize, usize),
    pub min_sq: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Checks that the closest pair satisfies
/// `|p-q|² <= ⌊m/2⌋⌈m/2⌉ / C(m,2) · (δ²k1 + γ²k2)`; without a box this is the
/// unit cube, `δ = 1`, `k1 = k`.
pub fn closest_pair_bound_check(points: &PointSet, m: usize, shape: Option<BoxShape>) -> Result<ClosestPairCheck> {
    let n = points.len();
    if m < 2 || n < m {
        return Err(Error::invalid(format!("need |X| >= m >= 2, got |X| = {n}, m = {m}")));
    }
    let k = points.dimension();
    let shape = shape.unwrap_or(BoxShape {
        delta: 1.0,
        gamma: 1.0,
        k1: k,
        k2: 0,
    });
    if shape.k1 + shape.k2 != k {
        return Err(Error::DimensionMismatch {
            expected: shape.k1 + shape.k2,
            found: k,
        });
    }
    let slack = 1e-12;
    for (index, p) in points.points().iter().enumerate() {
        let inside = p.coords().iter().enumerate().all(|(j, &x)| {
            let side = if j < shape.k1 { shape.delta } else { shape.gamma };
            x >= -slack && x <= side + slack
        });
        if !inside {
            return Err(Error::OutsideContainer {
                index,
                container: "box".into(),
            });
        }
    }
    let mut pair = (0, 1);
    let mut min_sq = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let d = points.dist_sq(i, j);
            if d < min_sq {
                min_sq = d;
                pair = (i, j);
            }
        }
    }
    let (lo, hi) = (m / 2, m.div_ceil(2));
    let pairs = m * (m - 1) / 2;
    let extent = shape.delta.powi(2) * shape.k1 as f64 + shape.gamma.powi(2) * shape.k2 as f64;
    let bound = (lo * hi) as f64 / pairs as f64 * extent;
    let ok = min_sq <= bound * (1.0 + 1e-12) + 1e-15;
    Ok(ClosestPairCheck { pair, min_sq, bound, ok })
}
