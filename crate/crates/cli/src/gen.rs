use std::io::Write;

use powertour::{constructions, io, PointSet};

use crate::{CliError, CliResult, GenArgs, Generator};

fn need<T: Copy>(value: Option<T>, flag: &str, generator: Generator) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{generator:?} needs --{flag}")))
}

pub fn build(args: &GenArgs) -> CliResult<PointSet> {
    use Generator as G;
    let g = args.generator;
    let set = match g {
        G::Uniform => constructions::uniform_cube(need(args.k, "k", g)?, need(args.n, "n", g)?, args.seed)?,
        G::CubeVertices => constructions::cube_vertex_subset(need(args.k, "k", g)?, need(args.n, "n", g)?, args.seed)?,
        G::Clustered => constructions::clustered(
            need(args.k, "k", g)?,
            need(args.n, "n", g)?,
            args.clusters,
            args.radius,
            args.seed,
        )?,
        G::DiagonalPair => constructions::diagonal_pair(need(args.k, "k", g)?)?,
        G::K3Code4 => constructions::k3_code4(),
        G::K4EvenWeight => constructions::k4_even_weight_code(),
        G::EvenWeight => constructions::even_weight_code(need(args.k, "k", g)?)?,
        G::Figure1Four | G::Figure1Two | G::Figure1Five => {
            let [four, two, five] = constructions::figure1_sets();
            match g {
                G::Figure1Four => four,
                G::Figure1Two => two,
                _ => five,
            }
        }
    };
    Ok(set)
}

pub fn run(args: &GenArgs, out: &mut dyn Write) -> CliResult<()> {
    let set = build(args)?;
    match &args.output {
        Some(path) => io::write_point_set(path, &set)?,
        None => writeln!(out, "{}", io::to_json(&set))?,
    }
    Ok(())
}
