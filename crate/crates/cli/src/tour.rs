use std::io::Write;
use std::time::{Duration, Instant};

use serde::Serialize;

use powertour::graphs::OrderRecord;
use powertour::planar::Diagonal;
use powertour::verifiers::SCHEMA_VERSION;
use powertour::{
    bound_report, close_path, exact_min_tour, greedy_ham_path, io, mst_sekanina_tour, newman_square_tour,
    two_phase_tour, AlgorithmResult, BoundReport, PhaseReport, PointSet, Tour,
};

use crate::{timestamp, write_json, Algo, CliError, CliResult, DiagonalArg, TourArgs};

/// A tour and how long it took.
#[derive(Debug, Clone)]
pub struct Solved {
    pub tour: Tour,
    pub phases: Option<PhaseReport>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub cutoff: Option<f64>,
    pub diagonal: Diagonal,
}

pub fn solve(algo: Algo, points: &PointSet, k: u32, opts: Options) -> CliResult<Solved> {
    if algo == Algo::Newman2d && (k != 2 || points.dimension() != 2) {
        return Err(CliError::Usage(format!(
            "newman2d needs k = 2 on planar points, got k = {k}, dimension {}",
            points.dimension()
        )));
    }
    let started = Instant::now();
    let mut phases = None;
    let tour = match algo {
        Algo::MstSekanina => mst_sekanina_tour(points, k)?.0,
        Algo::Greedy => close_path(&greedy_ham_path(points, None)?.path, points)?,
        Algo::TwoPhase => {
            let (tour, report) = two_phase_tour(points, k, opts.cutoff)?;
            phases = Some(report);
            tour
        }
        Algo::Newman2d => newman_square_tour(points, opts.diagonal)?,
        Algo::Oracle => exact_min_tour(points, k)?.0,
    };
    Ok(Solved {
        tour,
        phases,
        elapsed: started.elapsed(),
    })
}

#[derive(Debug, Serialize)]
struct TourOutput {
    schema_version: u32,
    command: &'static str,
    algorithm: String,
    k: u32,
    n: usize,
    tour: OrderRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase_report: Option<PhaseReport>,
    report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

pub fn run(args: &TourArgs, out: &mut dyn Write) -> CliResult<()> {
    let points = io::read_point_set(&args.input)?;
    let k = args.k.unwrap_or(points.dimension() as u32);
    let opts = Options {
        cutoff: args.cutoff,
        diagonal: match args.diagonal {
            DiagonalArg::Main => Diagonal::Main,
            DiagonalArg::Anti => Diagonal::Anti,
        },
    };
    let solved = solve(args.algo, &points, k, opts)?;
    let result = AlgorithmResult::new(args.algo.algorithm(), solved.tour.cost(k)).with_wall_time(solved.elapsed);
    let instance = args
        .input
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut report = bound_report(&points, k, &instance, vec![result])?.with_wall_time(solved.elapsed);
    if args.no_timing {
        report = report.without_timing();
    }
    let failures = report.certified_failures();
    let output = TourOutput {
        schema_version: SCHEMA_VERSION,
        command: "tour",
        algorithm: args.algo.algorithm().name().to_string(),
        k,
        n: points.len(),
        tour: solved.tour.to_record(Some(k)),
        phase_report: solved.phases,
        report,
        timestamp: (!args.no_timing).then(timestamp),
    };
    write_json(out, &output)?;
    if !failures.is_empty() {
        let names: Vec<String> = failures.iter().map(|(a, c)| format!("{a}/{c}")).collect();
        return Err(CliError::Violation(names.join(", ")));
    }
    Ok(())
}
