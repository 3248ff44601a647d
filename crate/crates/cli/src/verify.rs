//! Verification suites. Random suites run `trials` trials per value of `k`;
//! trial `t` (counted across all `k`) draws everything from seed `seed + t`.

use std::io::Write;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use powertour::constructions::{self, rng};
use powertour::greedy::greedy_edge_count_by_length;
use powertour::oracle::{closest_pair_bound_check, lemma7_max_pair_sum, BoxShape};
use powertour::planar::Diagonal;
use powertour::verifiers::{lemma5_check, SCHEMA_VERSION};
use powertour::{
    bound_report, build_mst, exact_min_tour, greedy_ham_path, mst_ball_packing_check, named_bounds, Algorithm,
    AlgorithmResult, Container, Point, PointSet,
};

use crate::parallel::{par_map, trial_seed};
use crate::tour::{solve, Options};
use crate::{write_json, Algo, CliError, CliResult, IntRange, Suite, VerifyArgs};

/// One check evaluated on one trial.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub check: &'static str,
    pub ok: bool,
    /// Observed value over its bound, when meaningful.
    pub ratio: Option<f64>,
    pub detail: String,
}

impl Outcome {
    fn new(check: &'static str, ok: bool, ratio: Option<f64>, detail: impl Into<String>) -> Self {
        Outcome {
            check,
            ok,
            ratio,
            detail: detail.into(),
        }
    }

    /// `value <= bound` (with relative slack `1e-9`), reporting the ratio.
    fn at_most(check: &'static str, value: f64, bound: f64, detail: impl Into<String>) -> Self {
        let ok = value <= bound * (1.0 + 1e-9) + 1e-12;
        let ratio = if bound > 0.0 { value / bound } else { 0.0 };
        Outcome::new(check, ok, Some(ratio), detail)
    }

    fn equal(check: &'static str, value: f64, target: f64, tol: f64, detail: impl Into<String>) -> Self {
        let ok = (value - target).abs() <= tol * target.abs();
        Outcome::new(check, ok, Some(value / target), detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckSummary>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// Merges per-trial outcomes in trial order.
pub fn tally(trials: Vec<powertour::Result<Vec<Outcome>>>) -> CliResult<Vec<CheckSummary>> {
    let mut summaries: Vec<CheckSummary> = Vec::new();
    for trial in trials {
        for o in trial? {
            let pos = match summaries.iter().position(|s| s.name == o.check) {
                Some(p) => p,
                None => {
                    summaries.push(CheckSummary {
                        name: o.check.to_string(),
                        trials: 0,
                        failures: 0,
                        pass: true,
                        worst_ratio: None,
                        first_failure: None,
                    });
                    summaries.len() - 1
                }
            };
            let s = &mut summaries[pos];
            s.trials += 1;
            if let Some(r) = o.ratio {
                s.worst_ratio = Some(s.worst_ratio.map_or(r, |w: f64| w.max(r)));
            }
            if !o.ok {
                s.failures += 1;
                s.pass = false;
                if s.first_failure.is_none() {
                    s.first_failure = Some(o.detail);
                }
            }
        }
    }
    Ok(summaries)
}

/// Suite parameters after defaults are applied.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub ks: Vec<u32>,
    pub n: (usize, usize),
    pub tol: f64,
}

impl SuiteConfig {
    pub fn for_suite(suite: Suite, args: &VerifyArgs) -> CliResult<Self> {
        let (k_default, n_default) = match suite {
            Suite::Lemma1 => ((2, 8), (2, 200)),
            Suite::Lemma5 => ((2, 20), (2, 2)),
            Suite::Lemma9 => ((2, 10), (3, 200)),
            Suite::Bincode => ((3, 14), (3, 300)),
            Suite::BoundsSweep => ((3, 8), (2, 200)),
            Suite::Lemma7 | Suite::TightExamples => ((2, 2), (2, 2)),
        };
        let ks = args.k.clone().unwrap_or(IntRange::inclusive(k_default.0, k_default.1));
        let ns = args.n.clone().unwrap_or(IntRange::inclusive(n_default.0, n_default.1));
        let ks: Vec<u32> = ks
            .values()
            .iter()
            .map(|&k| u32::try_from(k).map_err(|_| CliError::Usage(format!("k = {k} is too large"))))
            .collect::<CliResult<_>>()?;
        if ks.contains(&0) {
            return Err(CliError::Usage("k must be at least 1".into()));
        }
        Ok(SuiteConfig {
            trials: args.trials,
            seed: args.seed,
            ks,
            n: (ns.min() as usize, ns.max() as usize),
            tol: args.tol,
        })
    }

    /// Runs `f(k, trial seed)` for every `k` and trial, in parallel.
    fn per_k<F>(&self, f: F) -> Vec<powertour::Result<Vec<Outcome>>>
    where
        F: Fn(u32, u64) -> powertour::Result<Vec<Outcome>> + Sync + Send,
    {
        let trials = self.trials;
        par_map(self.ks.len() * trials, |i| f(self.ks[i / trials], trial_seed(self.seed, i)))
    }
}

fn uniform(k: u32, n: usize, seed: u64) -> powertour::Result<PointSet> {
    constructions::uniform_cube(k, n, seed)
}

pub fn lemma1(cfg: &SuiteConfig) -> CliResult<Vec<CheckSummary>> {
    let (lo, hi) = (cfg.n.0.max(2), cfg.n.1.max(2));
    tally(cfg.per_k(|k, seed| {
        let mut r = rng(seed);
        let n = r.gen_range(lo..=hi);
        let points = uniform(k, n, r.gen())?;
        let bad = mst_ball_packing_check(&build_mst(&points), &points);
        Ok(vec![Outcome::new(
            "ball_packing",
            bad.is_empty(),
            None,
            format!("seed {seed}, k = {k}, n = {n}: overlapping edge pairs {bad:?}"),
        )])
    }))
}

fn half_cube_point(r: &mut impl Rng, k: u32) -> Point {
    Point::new((0..k).map(|_| r.gen_range(-0.5..=0.5)).collect())
}

pub fn lemma5(cfg: &SuiteConfig) -> CliResult<Vec<CheckSummary>> {
    let mut out = tally(cfg.per_k(|k, seed| {
        let mut r = rng(seed);
        let (u, v) = (half_cube_point(&mut r, k), half_cube_point(&mut r, k));
        let c = lemma5_check(&u, &v)?;
        Ok(vec![Outcome::new(
            "half_cube_inequality",
            c.ok,
            Some(c.lhs / c.rhs),
            format!("seed {seed}, k = {k}: lhs {} > rhs {}", c.lhs, c.rhs),
        )])
    }))?;
    let tight = (1..=10)
        .map(|i| {
            let k = 5 * i;
            let (u, v) = constructions::lemma5_tight_vectors(k)?;
            let c = lemma5_check(&u, &v)?;
            Ok(vec![Outcome::equal("tight_vectors", c.lhs, c.rhs, cfg.tol, format!("k = {k}: {} vs {}", c.lhs, c.rhs))])
        })
        .collect();
    out.extend(tally(tight)?);
    Ok(out)
}

pub fn lemma7() -> CliResult<Vec<CheckSummary>> {
    let trials = (1..=14)
        .map(|m| {
            let r = lemma7_max_pair_sum(m)?;
            let expected = ((m / 2) * m.div_ceil(2)) as f64;
            Ok(vec![Outcome::new(
                "max_pair_sum",
                r.value == expected,
                Some(r.value / expected),
                format!("m = {m}: {} != {expected}", r.value),
            )])
        })
        .collect();
    tally(trials)
}

pub fn lemma9(cfg: &SuiteConfig) -> CliResult<Vec<CheckSummary>> {
    let (lo, hi) = (cfg.n.0.max(3), cfg.n.1.max(3));
    tally(cfg.per_k(|k, seed| {
        let mut r = rng(seed);
        let n = r.gen_range(lo..=hi);
        let points = uniform(k, n, r.gen())?;
        let mut out = Vec::new();
        for (name, m) in [("m3", 3), ("m_all", n)] {
            let c = closest_pair_bound_check(&points, m, None)?;
            out.push(Outcome::at_most(name, c.min_sq, c.bound, format!("seed {seed}, k = {k}, n = {n}, m = {m}")));
        }
        let k1 = r.gen_range(0..=k as usize);
        let shape = BoxShape {
            delta: r.gen_range(0.05..=1.0),
            gamma: r.gen_range(0.05..=1.0),
            k1,
            k2: k as usize - k1,
        };
        let rows = points
            .rows()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, x)| x * if j < k1 { shape.delta } else { shape.gamma })
                    .collect()
            })
            .collect();
        let boxed = PointSet::from_rows(rows, Container::UnitCube)?;
        let m = r.gen_range(2..=n);
        let c = closest_pair_bound_check(&boxed, m, Some(shape))?;
        out.push(Outcome::at_most("box", c.min_sq, c.bound, format!("seed {seed}, k = {k}, n = {n}, m = {m}")));
        Ok(out)
    }))
}

pub fn bincode(cfg: &SuiteConfig) -> CliResult<Vec<CheckSummary>> {
    let (lo, hi) = (cfg.n.0.max(2), cfg.n.1.max(2));
    tally(cfg.per_k(|k, seed| {
        let mut r = rng(seed);
        let cap = if k < 40 { hi.min(1usize << k) } else { hi };
        let n = r.gen_range(lo.min(cap)..=cap);
        let points = constructions::cube_vertex_subset(k, n, r.gen())?;
        let run = greedy_ham_path(&points, None)?;
        let mut out = Vec::new();
        for j in 1..=k {
            let count = greedy_edge_count_by_length(&run.trace, j) as f64;
            let (kf, jf) = (f64::from(k), f64::from(j));
            let singleton = 2f64.powf(kf - jf + 1.0);
            let detail = format!("seed {seed}, k = {k}, n = {n}, j = {j}: {count} edges");
            out.push(Outcome::new("singleton", count < singleton, Some(count / singleton), detail.clone()));
            if 3 * j < 2 * k {
                let improved = 2f64.powf(kf - 1.5 * jf + 2.0);
                out.push(Outcome::new("improved", count < improved, Some(count / improved), detail));
            }
        }
        Ok(out)
    }))
}

pub fn bounds_sweep(cfg: &SuiteConfig) -> CliResult<Vec<CheckSummary>> {
    if cfg.ks.iter().any(|&k| k < 2) {
        return Err(CliError::Usage("bounds-sweep needs k >= 2".into()));
    }
    let (lo, hi) = (cfg.n.0.max(2), cfg.n.1.max(2));
    let trials = cfg.per_k(|k, seed| {
        let mut r = rng(seed);
        let n = r.gen_range(lo..=hi);
        let points = uniform(k, n, r.gen())?;
        let detail = |what: &str| format!("seed {seed}, k = {k}, n = {n}: {what}");
        let mut algos = vec![Algo::MstSekanina, Algo::TwoPhase, Algo::Greedy];
        if k == 2 {
            algos.push(Algo::Newman2d);
        }
        let mut results = Vec::new();
        for algo in algos {
            let solved = solve(algo, &points, k, Options::default()).map_err(|e| match e {
                CliError::Lib(e) => e,
                other => powertour::Error::InvalidInput(other.to_string()),
            })?;
            results.push(AlgorithmResult::new(algo.algorithm(), solved.tour.cost(k)));
        }
        let bounds = named_bounds(k, n)?;
        let report = bound_report(&points, k, "sweep", results)?;
        let mut out = Vec::new();
        for a in &report.algorithms {
            let s = a.cost.scaled;
            match a.algorithm {
                Algorithm::MstSekanina if k >= 3 => {
                    out.push(Outcome::at_most("mst_sekanina_certified", s, bounds.certified, detail("mst-sekanina")))
                }
                Algorithm::TwoPhase if k >= 3 => {
                    out.push(Outcome::at_most("two_phase_certified", s, bounds.certified, detail("two-phase")))
                }
                Algorithm::Newman2d => out.push(Outcome::at_most("newman", s * s, 4.0, detail("newman2d"))),
                _ => {}
            }
        }
        out.push(Outcome::new(
            "certified_checks",
            report.all_certified_pass(),
            None,
            detail(&format!("{:?}", report.certified_failures())),
        ));
        out.push(Outcome::new("report_recheck", report.recheck(), None, detail("stored pass flags disagree")));
        Ok(out)
    });
    tally(trials)
}

pub fn tight_examples(cfg: &SuiteConfig) -> CliResult<Vec<CheckSummary>> {
    let tol = cfg.tol;
    let mut trials = Vec::new();
    let [four, two, five] = constructions::figure1_sets();
    for (name, set) in [("four", four), ("two", two), ("five", five)] {
        trials.push((|| {
            let (_, opt) = exact_min_tour(&set, 2)?;
            let newman = powertour::newman_square_tour(&set, Diagonal::Main)?;
            Ok(vec![
                Outcome::equal("figure1_oracle", opt.unscaled().unwrap_or(f64::NAN), 4.0, tol, format!("{name}-point set")),
                Outcome::equal(
                    "figure1_newman",
                    newman.cost(2).unscaled().unwrap_or(f64::NAN),
                    4.0,
                    tol,
                    format!("{name}-point set"),
                ),
            ])
        })());
    }
    trials.push((|| {
        let (_, c) = exact_min_tour(&constructions::k3_code4(), 3)?;
        Ok(vec![
            Outcome::equal("k3_code4", c.unscaled().unwrap_or(f64::NAN), 4.0 * 2f64.powf(1.5), tol, "S_3"),
            Outcome::equal("k3_code4_scaled", c.scaled(), 2f64.powf(7.0 / 6.0), tol, "s_3"),
        ])
    })());
    trials.push((|| {
        let (_, c) = exact_min_tour(&constructions::k4_even_weight_code(), 4)?;
        Ok(vec![Outcome::equal("k4_even_weight", c.unscaled().unwrap_or(f64::NAN), 32.0, tol, "S_4")])
    })());
    for k in 1..=8u32 {
        trials.push((|| {
            let (_, c) = exact_min_tour(&constructions::diagonal_pair(k)?, k)?;
            let target = 2.0 * f64::from(k).powf(f64::from(k) / 2.0);
            Ok(vec![Outcome::equal("diagonal_pair", c.unscaled().unwrap_or(f64::NAN), target, tol, format!("k = {k}"))])
        })());
    }
    tally(trials)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> CliResult<Vec<CheckSummary>> {
    match suite {
        Suite::Lemma1 => lemma1(cfg),
        Suite::Lemma5 => lemma5(cfg),
        Suite::Lemma7 => lemma7(),
        Suite::Lemma9 => lemma9(cfg),
        Suite::Bincode => bincode(cfg),
        Suite::BoundsSweep => bounds_sweep(cfg),
        Suite::TightExamples => tight_examples(cfg),
    }
}

pub fn suite_name(suite: Suite) -> String {
    use clap::ValueEnum;
    suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

pub fn run(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let started = Instant::now();
    let cfg = SuiteConfig::for_suite(args.suite, args)?;
    let checks = run_suite(args.suite, &cfg)?;
    let pass = checks.iter().all(|c| c.pass);
    let report = SuiteReport {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        suite: suite_name(args.suite),
        seed: args.seed,
        trials: args.trials,
        checks,
        pass,
        wall_time_ms: (!args.no_timing).then(|| started.elapsed().as_secs_f64() * 1e3),
    };
    write_json(out, &report)?;
    if !pass {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(CliError::Violation(failed.join(", ")));
    }
    Ok(())
}
