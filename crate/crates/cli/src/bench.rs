//! Benchmark sweeps.
//!
//! Sweep CSV columns: `k,n,algo,seed,S_k,s_k,time_ms`. `S_k` is empty when it
//! overflows `f64`; `time_ms` is empty under `--no-timing`.
//!
//! Trend CSV columns: `k,n,trials,mean_s_k,mean_s_k_over_sqrt_k` for the
//! two-phase algorithm.

use std::io::Write;

use serde::Serialize;

use powertour::{constructions, PointSet};

use crate::parallel::{par_map, trial_seed};
use crate::tour::{solve, Options};
use crate::{Algo, BenchArgs, CliError, CliResult, Family};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub k: u32,
    pub n: usize,
    pub algo: String,
    pub seed: u64,
    #[serde(rename = "S_k")]
    pub unscaled: Option<f64>,
    #[serde(rename = "s_k")]
    pub scaled: f64,
    pub time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRow {
    pub k: u32,
    pub n: usize,
    pub trials: usize,
    pub mean_s_k: f64,
    pub mean_s_k_over_sqrt_k: f64,
}

/// Cluster layout used by the `clustered` family.
const CLUSTERS: usize = 4;
const CLUSTER_RADIUS: f64 = 0.05;

pub fn instance(family: Family, k: u32, n: usize, seed: u64) -> CliResult<PointSet> {
    Ok(match family {
        Family::Uniform => constructions::uniform_cube(k, n, seed)?,
        Family::Clustered => constructions::clustered(k, n, CLUSTERS, CLUSTER_RADIUS, seed)?,
        Family::CubeVertices => constructions::cube_vertex_subset(k, n, seed)?,
        Family::DiagonalPair => {
            if n != 2 {
                return Err(CliError::Usage(format!("the diagonal pair has n = 2, not {n}")));
            }
            constructions::diagonal_pair(k)?
        }
    })
}

fn check_grid(ks: &[u32], ns: &[usize], algos: &[Algo]) -> CliResult<()> {
    if ks.contains(&0) || ns.iter().any(|&n| n < 2) {
        return Err(CliError::Usage("bench needs k >= 1 and n >= 2".into()));
    }
    if algos.contains(&Algo::Newman2d) && ks.iter().any(|&k| k != 2) {
        return Err(CliError::Usage("newman2d runs only with k = 2".into()));
    }
    if algos.contains(&Algo::Oracle) && ns.iter().any(|&n| n > powertour::oracle::MAX_TOUR_POINTS) {
        return Err(CliError::Usage("oracle runs only with n <= 12".into()));
    }
    Ok(())
}

/// One row per `(k, n, algo, seed)`, in that nesting order.
pub fn sweep(
    ks: &[u32],
    ns: &[usize],
    algos: &[Algo],
    family: Family,
    trials: usize,
    seed: u64,
    timing: bool,
) -> CliResult<Vec<BenchRow>> {
    check_grid(ks, ns, algos)?;
    let mut cells = Vec::new();
    for &k in ks {
        for &n in ns {
            for &algo in algos {
                for t in 0..trials {
                    cells.push((k, n, algo, trial_seed(seed, t)));
                }
            }
        }
    }
    par_map(cells.len(), |i| {
        let (k, n, algo, seed) = cells[i];
        let points = instance(family, k, n, seed)?;
        let solved = solve(algo, &points, k, Options::default())?;
        let cost = solved.tour.cost(k);
        Ok(BenchRow {
            k,
            n,
            algo: algo.algorithm().name().to_string(),
            seed,
            unscaled: cost.unscaled(),
            scaled: cost.scaled(),
            time_ms: timing.then_some(solved.elapsed.as_secs_f64() * 1e3),
        })
    })
    .into_iter()
    .collect()
}

/// Mean `s_k/√k` of the two-phase tour per `k`, over `trials` seeds.
pub fn trend_table(ks: &[u32], n: usize, family: Family, trials: usize, seed: u64) -> CliResult<Vec<TrendRow>> {
    if trials == 0 {
        return Err(CliError::Usage("trials must be positive".into()));
    }
    let rows = sweep(ks, &[n], &[Algo::TwoPhase], family, trials, seed, false)?;
    Ok(ks
        .iter()
        .zip(rows.chunks(trials))
        .map(|(&k, chunk)| {
            let mean = chunk.iter().map(|r| r.scaled).sum::<f64>() / trials as f64;
            TrendRow {
                k,
                n,
                trials,
                mean_s_k: mean,
                mean_s_k_over_sqrt_k: mean / f64::from(k).sqrt(),
            }
        })
        .collect())
}

pub fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    out.write_all(&bytes)?;
    Ok(())
}

pub fn run(args: &BenchArgs, out: &mut dyn Write) -> CliResult<()> {
    let ks: Vec<u32> = args
        .k
        .values()
        .iter()
        .map(|&k| u32::try_from(k).map_err(|_| CliError::Usage(format!("k = {k} is too large"))))
        .collect::<CliResult<_>>()?;
    let ns: Vec<usize> = args.n.values().iter().map(|&n| n as usize).collect();
    let mut buf = Vec::new();
    if args.trend {
        let n = *ns.last().expect("non-empty list");
        write_csv(&mut buf, &trend_table(&ks, n, args.instance, args.trials, args.seed)?)?;
    } else {
        let rows = sweep(&ks, &ns, &args.algos, args.instance, args.trials, args.seed, !args.no_timing)?;
        write_csv(&mut buf, &rows)?;
    }
    match &args.output {
        Some(path) => std::fs::write(path, &buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(())
}
