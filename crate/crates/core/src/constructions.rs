//! Named point sets (tight and extremal configurations, binary codes) and
//! seeded random generators.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Container, Point, PointSet};

/// Identifier of the generator behind every seeded construction.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Largest `k` for which whole codes (`2^{k-1}` vectors) are materialized.
pub const MAX_CODE_DIMENSION: u32 = 24;

/// The seeded generator used throughout.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cube(rows: Vec<Vec<f64>>) -> PointSet {
    PointSet::from_rows(rows, Container::UnitCube).expect("named sets are valid")
}

fn check_k(k: u32) -> Result<usize> {
    if k == 0 {
        return Err(Error::invalid("dimension k must be at least 1"));
    }
    Ok(k as usize)
}

/// `{0^k, 1^k}`.
pub fn diagonal_pair(k: u32) -> Result<PointSet> {
    let k = check_k(k)?;
    Ok(cube(vec![vec![0.0; k], vec![1.0; k]]))
}

/// The 4-point code in `{0,1}^3` with all pairwise distances `√2`.
pub fn k3_code4() -> PointSet {
    cube(vec![
        vec![0., 0., 0.],
        vec![0., 1., 1.],
        vec![1., 0., 1.],
        vec![1., 1., 0.],
    ])
}

/// The eight even-weight vectors of `{0,1}^4`, in lexicographic order.
pub fn k4_even_weight_code() -> PointSet {
    cube(vec![
        vec![0., 0., 0., 0.],
        vec![0., 0., 1., 1.],
        vec![0., 1., 0., 1.],
        vec![0., 1., 1., 0.],
        vec![1., 0., 0., 1.],
        vec![1., 0., 1., 0.],
        vec![1., 1., 0., 0.],
        vec![1., 1., 1., 1.],
    ])
}

/// All even-weight vectors of `{0,1}^k` in lexicographic order (first
/// coordinate most significant).
pub fn even_weight_code(k: u32) -> Result<PointSet> {
    let kk = check_k(k)?;
    if k > MAX_CODE_DIMENSION {
        return Err(Error::TooLarge {
            what: "code dimension",
            actual: kk,
            limit: MAX_CODE_DIMENSION as usize,
        });
    }
    let rows = (0u64..1 << k)
        .filter(|w| w.count_ones() % 2 == 0)
        .map(|w| bits_to_row(w, kk))
        .collect();
    Ok(cube(rows))
}

fn bits_to_row(word: u64, k: usize) -> Vec<f64> {
    (0..k).map(|i| ((word >> (k - 1 - i)) & 1) as f64).collect()
}

/// The three tight sets of the unit square: 4 corners, 2 opposite corners, and
/// 4 corners plus the centre.
pub fn figure1_sets() -> [PointSet; 3] {
    let corners = vec![vec![0., 0.], vec![1., 0.], vec![1., 1.], vec![0., 1.]];
    let mut five = corners.clone();
    five.push(vec![0.5, 0.5]);
    [cube(corners), cube(vec![vec![0., 0.], vec![1., 1.]]), cube(five)]
}

/// Vectors `u, v` in `[-1/2,1/2]^k` attaining `|u+v|/2 + |u-v|/4 = (√5/4)√k`:
/// `u` is `+1/2` on its first `4k/5` coordinates and `-1/2` elsewhere, `v` is
/// all `+1/2`.
pub fn lemma5_tight_vectors(k: u32) -> Result<(Point, Point)> {
    let kk = check_k(k)?;
    if kk % 5 != 0 {
        return Err(Error::invalid(format!("k = {k} is not a multiple of 5")));
    }
    let u = (0..kk).map(|i| if i < 4 * kk / 5 { 0.5 } else { -0.5 }).collect();
    Ok((Point::new(u), Point::new(vec![0.5; kk])))
}

/// `n` points drawn uniformly from `[0,1)^k`.
pub fn uniform_cube(k: u32, n: usize, seed: u64) -> Result<PointSet> {
    let kk = check_k(k)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mut r = rng(seed);
    let rows = (0..n).map(|_| (0..kk).map(|_| r.gen::<f64>()).collect()).collect();
    PointSet::from_rows(rows, Container::UnitCube)
}

/// `n` distinct vertices of `{0,1}^k`, sampled uniformly without replacement.
pub fn cube_vertex_subset(k: u32, n: usize, seed: u64) -> Result<PointSet> {
    let kk = check_k(k)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if k < 64 && n as u128 > 1u128 << k {
        return Err(Error::invalid(format!(
            "cannot pick {n} distinct vertices of {{0,1}}^{k}"
        )));
    }
    let mut r = rng(seed);
    let rows = if k <= 20 {
        index::sample(&mut r, 1usize << k, n)
            .into_iter()
            .map(|w| bits_to_row(w as u64, kk))
            .collect()
    } else {
        let mut seen = HashSet::with_capacity(n);
        let mut rows = Vec::with_capacity(n);
        while rows.len() < n {
            let v: Vec<bool> = (0..kk).map(|_| r.gen()).collect();
            if seen.insert(v.clone()) {
                rows.push(v.into_iter().map(|b| if b { 1.0 } else { 0.0 }).collect());
            }
        }
        rows
    };
    PointSet::from_rows(rows, Container::UnitCube)
}

/// `n` points spread round-robin over `clusters` boxes of half-width `radius`
/// around uniform centres, clamped to the unit cube.
pub fn clustered(k: u32, n: usize, clusters: usize, radius: f64, seed: u64) -> Result<PointSet> {
    let kk = check_k(k)?;
    if n == 0 || clusters == 0 {
        return Err(Error::invalid("n and the cluster count must be at least 1"));
    }
    if !(0.0..=0.5).contains(&radius) {
        return Err(Error::invalid("radius must lie in [0, 0.5]"));
    }
    let mut r = rng(seed);
    let centers: Vec<Vec<f64>> = (0..clusters)
        .map(|_| (0..kk).map(|_| r.gen_range(radius..=1.0 - radius)).collect())
        .collect();
    let rows = (0..n)
        .map(|i| {
            centers[i % clusters]
                .iter()
                .map(|&c| {
                    let off = if radius > 0.0 { r.gen_range(-radius..=radius) } else { 0.0 };
                    (c + off).clamp(0.0, 1.0)
                })
                .collect()
        })
        .collect();
    PointSet::from_rows(rows, Container::UnitCube)
}
