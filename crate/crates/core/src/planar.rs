//! Planar constructions for `k = 2`: extended paths in right and non-obtuse
//! triangles, the envelope region of a square, and Newman's unit-square tour
//! with `Σ|e|² <= 4`.
//!
//! All of them rest on one recursion. The altitude from the right angle `C`
//! splits a right triangle `ABC` into two right triangles with hypotenuses
//! `AC` and `CB`; the two extended paths `A..C` and `C..B` are concatenated and
//! the anchor `C` is shortcut, which is allowed because the angle at `C` is at
//! most 90°. Every level checks its own `Σ|e|² <= c²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Container, PointSet, Tolerance};
use crate::graphs::{close_path, HamPath, Tour};

type Xy = [f64; 2];

/// Containment slack for triangles and the square.
pub const PLANAR_TOL: f64 = 1e-9;

/// Past this depth the recursion orders points by projection instead.
const MAX_DEPTH: usize = 2000;

fn sub(p: Xy, q: Xy) -> Xy {
    [p[0] - q[0], p[1] - q[1]]
}

fn dot(p: Xy, q: Xy) -> f64 {
    p[0] * q[0] + p[1] * q[1]
}

fn cross(p: Xy, q: Xy) -> f64 {
    p[0] * q[1] - p[1] * q[0]
}

fn dist_sq(p: Xy, q: Xy) -> f64 {
    let d = sub(p, q);
    dot(d, d)
}

/// True iff the angle at `q` in `p, q, r` is at most 90°, so that
/// `|pr|² <= |pq|² + |qr|²`. Degenerate angles (`q` equal to `p` or `r`) count
/// as allowed.
pub fn shortcut_ok(p: Xy, q: Xy, r: Xy) -> bool {
    dot(sub(p, q), sub(r, q)) >= 0.0
}

fn assert_shortcut(p: Xy, q: Xy, r: Xy) -> Result<()> {
    let (u, v) = (sub(p, q), sub(r, q));
    let slack = 1e-9 * dot(u, u).sqrt() * dot(v, v).sqrt() + 1e-15;
    if dot(u, v) >= -slack {
        Ok(())
    } else {
        Err(Error::certificate(format!(
            "obtuse shortcut at ({}, {})",
            q[0], q[1]
        )))
    }
}

/// Planar coordinates of a 2-dimensional point set.
pub fn planar_coords(points: &PointSet) -> Result<Vec<Xy>> {
    if points.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: points.dimension(),
        });
    }
    Ok(points
        .points()
        .iter()
        .map(|p| [p.coords()[0], p.coords()[1]])
        .collect())
}

/// A right triangle with its right angle at `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RightTriangle {
    a: Xy,
    b: Xy,
    c: Xy,
}

impl RightTriangle {
    pub fn new(a: Xy, b: Xy, c: Xy) -> Result<Self> {
        let hyp = dist_sq(a, b);
        if hyp == 0.0 {
            return Err(Error::invalid("degenerate triangle"));
        }
        let legs = dist_sq(a, c) + dist_sq(b, c);
        if (legs - hyp).abs() > 1e-9 * hyp || dist_sq(a, c) == 0.0 || dist_sq(b, c) == 0.0 {
            return Err(Error::invalid("the angle at C is not a right angle"));
        }
        Ok(RightTriangle { a, b, c })
    }

    pub fn vertices(&self) -> [Xy; 3] {
        [self.a, self.b, self.c]
    }

    /// Side lengths `a <= b <= c`.
    pub fn sides(&self) -> [f64; 3] {
        sorted_sides([self.a, self.b, self.c])
    }

    pub fn hypotenuse_sq(&self) -> f64 {
        dist_sq(self.a, self.b)
    }
}

fn sorted_sides(v: [Xy; 3]) -> [f64; 3] {
    let mut s = [
        dist_sq(v[0], v[1]).sqrt(),
        dist_sq(v[1], v[2]).sqrt(),
        dist_sq(v[2], v[0]).sqrt(),
    ];
    s.sort_by(f64::total_cmp);
    s
}

/// A path from `start` through every point of `X` to `end`. The anchors are
/// container points and need not belong to `X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendedPath {
    pub start: Xy,
    pub end: Xy,
    pub order: Vec<usize>,
}

impl ExtendedPath {
    /// `Σ|e|²` including both anchor edges.
    pub fn cost_sq(&self, xy: &[Xy]) -> f64 {
        walk_cost(self.start, &self.order, self.end, xy)
    }

    /// `Σ|e|²` over the edges between points of `X` only.
    pub fn interior_cost_sq(&self, xy: &[Xy]) -> f64 {
        self.order
            .windows(2)
            .map(|w| dist_sq(xy[w[0]], xy[w[1]]))
            .sum()
    }

    /// The Hamiltonian path left after dropping the anchors.
    pub fn to_ham_path(&self, points: &PointSet) -> Result<HamPath> {
        HamPath::new(points, self.order.clone())
    }
}

fn walk_cost(start: Xy, order: &[usize], end: Xy, xy: &[Xy]) -> f64 {
    let Some((&first, _)) = order.split_first() else {
        return dist_sq(start, end);
    };
    let last = order[order.len() - 1];
    let inner: f64 = order.windows(2).map(|w| dist_sq(xy[w[0]], xy[w[1]])).sum();
    dist_sq(start, xy[first]) + inner + dist_sq(xy[last], end)
}

fn check_level(start: Xy, order: &[usize], end: Xy, xy: &[Xy], bound: f64) -> Result<()> {
    let cost = walk_cost(start, order, end, xy);
    if Tolerance::default().le(cost, bound) {
        Ok(())
    } else {
        Err(Error::certificate(format!(
            "extended path costs {cost}, above its bound {bound}"
        )))
    }
}

/// Groups exactly coincident points; returns representatives (first occurrence)
/// and, per point, the representative it maps to.
struct Dedup {
    reps: Vec<usize>,
    members: Vec<Vec<usize>>,
    slot: Vec<usize>,
}

impl Dedup {
    fn new(xy: &[Xy], indices: &[usize]) -> Dedup {
        let mut sorted = indices.to_vec();
        sorted.sort_by(|&i, &j| {
            xy[i][0]
                .total_cmp(&xy[j][0])
                .then(xy[i][1].total_cmp(&xy[j][1]))
                .then(i.cmp(&j))
        });
        let mut slot = vec![usize::MAX; xy.len()];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (pos, &i) in sorted.iter().enumerate() {
            if pos > 0 && xy[sorted[pos - 1]] == xy[i] {
                groups.last_mut().expect("non-empty").push(i);
            } else {
                groups.push(vec![i]);
            }
        }
        groups.sort_by_key(|g| g[0]);
        let mut reps = Vec::with_capacity(groups.len());
        for (g, members) in groups.iter().enumerate() {
            reps.push(members[0]);
            for &m in members {
                slot[m] = g;
            }
        }
        Dedup {
            reps,
            members: groups,
            slot,
        }
    }

    /// Replaces each representative by its whole group, consecutively.
    fn expand(&self, order: &[usize]) -> Vec<usize> {
        order
            .iter()
            .flat_map(|&r| self.members[self.slot[r]].iter().copied())
            .collect()
    }
}

/// Extended path `a -> b` through `idx` inside the triangle with apex `c`
/// opposite `ab`, obtained by splitting at the altitude foot and shortcutting
/// at `c`. Requires the angle at `c` to be at most 90°.
fn split_at_apex(a: Xy, b: Xy, c: Xy, idx: Vec<usize>, xy: &[Xy], depth: usize) -> Result<Vec<usize>> {
    if idx.len() <= 1 {
        return Ok(idx);
    }
    let ab = sub(b, a);
    let len_sq = dot(ab, ab);
    let t = |p: Xy| dot(sub(p, a), ab) / len_sq;
    if len_sq == 0.0 || depth >= MAX_DEPTH {
        let mut idx = idx;
        if len_sq > 0.0 {
            idx.sort_by(|&i, &j| t(xy[i]).total_cmp(&t(xy[j])).then(i.cmp(&j)));
        }
        return Ok(idx);
    }
    let t_foot = t(c);
    let foot = [a[0] + t_foot * ab[0], a[1] + t_foot * ab[1]];
    // Points on the altitude go to the side of the first anchor.
    let (left, right): (Vec<usize>, Vec<usize>) = idx.into_iter().partition(|&i| t(xy[i]) <= t_foot);
    let left = right_path(a, c, foot, left, xy, depth + 1)?;
    let right = right_path(c, b, foot, right, xy, depth + 1)?;
    let p = left.last().map_or(a, |&i| xy[i]);
    let q = right.first().map_or(b, |&i| xy[i]);
    assert_shortcut(p, c, q)?;
    let mut order = left;
    order.extend(right);
    Ok(order)
}

/// [`split_at_apex`] for a right triangle, checked against `c²`.
fn right_path(a: Xy, b: Xy, c: Xy, idx: Vec<usize>, xy: &[Xy], depth: usize) -> Result<Vec<usize>> {
    let order = split_at_apex(a, b, c, idx, xy, depth)?;
    check_level(a, &order, b, xy, dist_sq(a, b))?;
    Ok(order)
}

/// Barycentric membership in a closed triangle, with slack.
fn in_triangle(p: Xy, v: [Xy; 3], slack: f64) -> bool {
    let area = cross(sub(v[1], v[0]), sub(v[2], v[0]));
    if area == 0.0 {
        return false;
    }
    let l0 = cross(sub(v[1], p), sub(v[2], p)) / area;
    let l1 = cross(sub(v[2], p), sub(v[0], p)) / area;
    let l2 = 1.0 - l0 - l1;
    l0 >= -slack && l1 >= -slack && l2 >= -slack
}

fn check_inside(xy: &[Xy], v: [Xy; 3], name: &str) -> Result<()> {
    match xy.iter().position(|&p| !in_triangle(p, v, PLANAR_TOL)) {
        Some(index) => Err(Error::OutsideContainer {
            index,
            container: name.to_string(),
        }),
        None => Ok(()),
    }
}

/// Extended path from `A` to `B` through every point of `xy`, with
/// `Σ|e|² <= |AB|²`.
pub fn right_triangle_path(tri: &RightTriangle, xy: &[Xy]) -> Result<ExtendedPath> {
    check_inside(xy, tri.vertices(), "right triangle")?;
    let all: Vec<usize> = (0..xy.len()).collect();
    let dedup = Dedup::new(xy, &all);
    let order = right_path(tri.a, tri.b, tri.c, dedup.reps.clone(), xy, 0)?;
    Ok(ExtendedPath {
        start: tri.a,
        end: tri.b,
        order: dedup.expand(&order),
    })
}

/// Labels a triangle so that `ab` is its longest side; ties keep the earlier vertices.
fn longest_side_first(v: [Xy; 3]) -> (Xy, Xy, Xy) {
    let opposite = (0..3)
        .max_by(|&i, &j| {
            let si = dist_sq(v[(i + 1) % 3], v[(i + 2) % 3]);
            let sj = dist_sq(v[(j + 1) % 3], v[(j + 2) % 3]);
            si.total_cmp(&sj).then(j.cmp(&i))
        })
        .expect("three vertices");
    let (mut x, mut y) = ((opposite + 1) % 3, (opposite + 2) % 3);
    if x > y {
        std::mem::swap(&mut x, &mut y);
    }
    (v[x], v[y], v[opposite])
}

fn check_non_obtuse(v: [Xy; 3]) -> Result<(Xy, Xy, Xy)> {
    let (a, b, c) = longest_side_first(v);
    if cross(sub(b, a), sub(c, a)) == 0.0 {
        return Err(Error::invalid("degenerate triangle"));
    }
    let slack = 1e-9 * dist_sq(a, b);
    if dot(sub(a, c), sub(b, c)) < -slack {
        return Err(Error::invalid("triangle is obtuse"));
    }
    Ok((a, b, c))
}

/// Extended path between the endpoints of the longest side of a non-obtuse
/// triangle, with `Σ|e|² <= a² + b²`.
pub fn non_obtuse_path(tri: [Xy; 3], xy: &[Xy]) -> Result<ExtendedPath> {
    let (a, b, c) = check_non_obtuse(tri)?;
    check_inside(xy, tri, "triangle")?;
    let all: Vec<usize> = (0..xy.len()).collect();
    let dedup = Dedup::new(xy, &all);
    let order = split_at_apex(a, b, c, dedup.reps.clone(), xy, 0)?;
    check_level(a, &order, b, xy, dist_sq(a, c) + dist_sq(b, c))?;
    Ok(ExtendedPath {
        start: a,
        end: b,
        order: dedup.expand(&order),
    })
}

/// Hamiltonian cycle in a non-obtuse triangle with `Σ|e|² <= a² + b² + c²`.
pub fn non_obtuse_cycle(tri: [Xy; 3], points: &PointSet) -> Result<Tour> {
    if points.len() < 2 {
        return Err(Error::invalid("a tour needs at least 2 points"));
    }
    let xy = planar_coords(points)?;
    let path = non_obtuse_path(tri, &xy)?;
    let tour = close_path(&path.to_ham_path(points)?, points)?;
    let [a, b, c] = sorted_sides(tri);
    let cost = tour.cost(2).unscaled().unwrap_or(f64::INFINITY);
    let bound = a * a + b * b + c * c;
    if !Tolerance::default().le(cost, bound) {
        return Err(Error::certificate(format!(
            "triangle cycle costs {cost}, above {bound}"
        )));
    }
    Ok(tour)
}

/// A side of the unit square `[0,1]²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

const CORNERS: [Xy; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
const CENTER: Xy = [0.5, 0.5];

fn in_square(p: Xy) -> bool {
    p.iter().all(|&c| (-PLANAR_TOL..=1.0 + PLANAR_TOL).contains(&c))
}

/// Hamiltonian path through points of the unit square outside the open
/// triangle spanned by the centre and `side`, from one end of `side` to the
/// other, with `Σ|e|² <= 3`.
///
/// The region splits into the half-square `a, d, c` (hypotenuse `ac`) and the
/// quarter `c, o, b` (hypotenuse `cb`), which meet at an angle of 90° at `c`.
pub fn envelope_path(side: Side, xy: &[Xy]) -> Result<ExtendedPath> {
    let i = side as usize;
    let (a, b, c, d) = (CORNERS[i], CORNERS[(i + 1) % 4], CORNERS[(i + 2) % 4], CORNERS[(i + 3) % 4]);
    let o = CENTER;
    for (index, &p) in xy.iter().enumerate() {
        let excluded = in_triangle(p, [o, a, b], -PLANAR_TOL);
        if !in_square(p) || excluded {
            return Err(Error::OutsideContainer {
                index,
                container: "envelope region".into(),
            });
        }
    }
    let all: Vec<usize> = (0..xy.len()).collect();
    let dedup = Dedup::new(xy, &all);
    let ac = sub(c, a);
    let d_side = cross(ac, sub(d, a));
    // Points on the diagonal ac belong to the half-square.
    let (half, quarter): (Vec<usize>, Vec<usize>) = dedup
        .reps
        .iter()
        .partition(|&&r| cross(ac, sub(xy[r], a)) * d_side >= -PLANAR_TOL);
    let first = right_path(a, c, d, half, xy, 0)?;
    let second = right_path(c, b, o, quarter, xy, 0)?;
    let p = first.last().map_or(a, |&r| xy[r]);
    let q = second.first().map_or(b, |&r| xy[r]);
    assert_shortcut(p, c, q)?;
    let mut order = first;
    order.extend(second);
    check_level(a, &order, b, xy, 3.0)?;
    Ok(ExtendedPath {
        start: a,
        end: b,
        order: dedup.expand(&order),
    })
}

/// Diagonal used to split the square into two right triangles.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagonal {
    /// `(0,0)-(1,1)`
    #[default]
    Main,
    /// `(1,0)-(0,1)`
    Anti,
}

enum Node {
    Anchor(Xy),
    Point(usize),
}

/// Newman's tour of points in the unit square with `Σ|e|² <= 4`.
///
/// The square is cut along `diagonal` into a lower triangle (containing the
/// corner below the diagonal, and every point on it) and an upper one. Their
/// extended paths `P..Q` and `Q..P` form a closed walk whose corner anchors are
/// then shortcut.
pub fn newman_square_tour(points: &PointSet, diagonal: Diagonal) -> Result<Tour> {
    if points.len() < 2 {
        return Err(Error::invalid("a tour needs at least 2 points"));
    }
    let xy = planar_coords(points)?;
    if let Some(index) = xy.iter().position(|&p| !in_square(p)) {
        return Err(Error::OutsideContainer {
            index,
            container: Container::UnitCube.to_string(),
        });
    }
    let (p_end, q_end, lower, upper) = match diagonal {
        Diagonal::Main => (CORNERS[0], CORNERS[2], CORNERS[1], CORNERS[3]),
        Diagonal::Anti => (CORNERS[1], CORNERS[3], CORNERS[0], CORNERS[2]),
    };
    let all: Vec<usize> = (0..xy.len()).collect();
    let dedup = Dedup::new(&xy, &all);
    let pq = sub(q_end, p_end);
    let lower_side = cross(pq, sub(lower, p_end));
    let (low, up): (Vec<usize>, Vec<usize>) = dedup
        .reps
        .iter()
        .partition(|&&r| cross(pq, sub(xy[r], p_end)) * lower_side >= 0.0);
    let low = right_path(p_end, q_end, lower, low, &xy, 0)?;
    let up = right_path(p_end, q_end, upper, up, &xy, 0)?;

    let mut walk = vec![Node::Anchor(p_end)];
    walk.extend(low.iter().map(|&r| Node::Point(r)));
    walk.push(Node::Anchor(q_end));
    walk.extend(up.iter().rev().map(|&r| Node::Point(r)));
    let at = |n: &Node| match *n {
        Node::Anchor(c) => c,
        Node::Point(r) => xy[r],
    };
    // Shortcut Q first, then P (which sits at position 0).
    for pos in [low.len() + 1, 0] {
        let m = walk.len();
        let prev = &walk[(pos + m - 1) % m];
        let next = &walk[(pos + 1) % m];
        assert_shortcut(at(prev), at(&walk[pos]), at(next))?;
        walk.remove(pos);
    }
    let order: Vec<usize> = walk
        .iter()
        .map(|n| match *n {
            Node::Point(r) => r,
            Node::Anchor(_) => unreachable!("anchors were removed"),
        })
        .collect();
    let tour = Tour::new(points, dedup.expand(&order))?;
    let cost = tour.cost(2).unscaled().unwrap_or(f64::INFINITY);
    if !Tolerance::default().le(cost, 4.0) {
        return Err(Error::certificate(format!("square tour costs {cost}, above 4")));
    }
    Ok(tour)
}
