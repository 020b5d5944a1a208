//! `circix`: generate side-information graphs, build and verify circular
//! coloring codes, and run the bound oracles and experiment suite.

mod io;
mod suite;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use circix::confusion::{ConfusionBound, ConfusionGraph};
use circix::construction::ConstructionPlan;
use circix::graphs::{self, SideInfoGraph};
use circix::{limits, ng, params, search, CircularColoring, LinearIndexCode, PrimeField};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "circix", version, about = "Index codes from circular colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Edgeless,
    Complete,
    Cycle,
    CircularClique,
    Web,
    /// join_at_vertex(K_n, edgeless(n))
    JoinCompleteEdgeless,
    NeighbouringSideInfo,
    NeighbouringInterference,
    Interlacing,
    Random,
    RandomDirected,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file
    Gen {
        family: Family,
        /// Family parameters, e.g. `5 2` for circular-clique, `8 0.5` for random
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the complement instead
        #[arg(long)]
        complement: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clique, chromatic and circular parameters of a graph
    Params {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the circular coloring code for a side-information graph
    Construct {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Circular coloring of the complement; computed when omitted
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a code against a graph
    Verify { graph: PathBuf, code: PathBuf },
    /// Encode a random message and decode it at every receiver
    DecodeDemo {
        graph: PathBuf,
        code: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force lower and upper bound oracles
    Oracle {
        #[command(subcommand)]
        oracle: Oracle,
    },
    /// Sandwich report: clique, circular clique, constructed and scalar rates
    Report {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product and sum bounds for a graph and its complement
    Ng {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the experiment battery; exits nonzero if any check fails
    Suite {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Field sizes; may be repeated
        #[arg(long, default_values_t = vec![2])]
        q: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for suite.csv and suite.json; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Clique number of the confusion graph
    Confusion {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Optimal scalar linear code by exhaustive search
    Exhaustive {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
}

fn read_graph(path: &Path) -> Result<SideInfoGraph> {
    io::read_json(path, "graph")
}

fn field(q: u32) -> Result<PrimeField> {
    PrimeField::new(q).with_context(|| format!("--q {q}"))
}

fn parse_params<T: std::str::FromStr>(family: Family, params: &[String], count: usize) -> Result<Vec<T>> {
    if params.len() != count {
        bail!("{family:?} takes {count} parameter(s), got {}", params.len());
    }
    params
        .iter()
        .map(|p| {
            p.parse::<T>()
                .map_err(|_| anyhow::anyhow!("{family:?}: cannot parse parameter {p:?}"))
        })
        .collect()
}

fn generate(family: Family, params: &[String], seed: u64) -> Result<SideInfoGraph> {
    let ints = |count| parse_params::<usize>(family, params, count);
    let g = match family {
        Family::Edgeless => graphs::edgeless(ints(1)?[0])?,
        Family::Complete => graphs::complete(ints(1)?[0])?,
        Family::Cycle => graphs::cycle(ints(1)?[0])?,
        Family::CircularClique => {
            let p = ints(2)?;
            graphs::circular_clique(p[0], p[1])?
        }
        Family::Web => {
            let p = ints(2)?;
            graphs::web(p[0], p[1])?
        }
        Family::JoinCompleteEdgeless => {
            let n = ints(1)?[0];
            graphs::join_at_vertex(&graphs::complete(n)?, &graphs::edgeless(n)?)?
        }
        Family::NeighbouringSideInfo => {
            let p = ints(2)?;
            graphs::symmetric_neighbouring_side_info(p[0], p[1])?
        }
        Family::NeighbouringInterference => {
            let p = ints(2)?;
            graphs::symmetric_neighbouring_interference(p[0], p[1])?
        }
        Family::Interlacing => {
            let p = ints(3)?;
            graphs::interlacing_graph(p[0], p[1], p[2])?
        }
        Family::Random | Family::RandomDirected => {
            if params.len() != 2 {
                bail!(
                    "{family:?} takes 2 parameters (n, edge probability), got {}",
                    params.len()
                );
            }
            let n: usize = params[0]
                .parse()
                .with_context(|| format!("vertex count {:?}", params[0]))?;
            let p: f64 = params[1]
                .parse()
                .with_context(|| format!("edge probability {:?}", params[1]))?;
            match family {
                Family::Random => graphs::random_graph(n, p, seed)?,
                _ => graphs::random_digraph(n, p, seed)?,
            }
        }
    };
    Ok(g)
}

fn params_command(g: &SideInfoGraph, format: Format) -> Result<String> {
    let report = params::param_report(g)?;
    let (_, coloring) = params::circular_chromatic_number(g)?;
    let perfect = params::is_perfect(g)?;
    let circular_perfect = if limits::check("vertices", g.n(), limits::CIRCULAR_PERFECT_MAX_N).is_ok() {
        Some(params::is_circular_perfect(g)?)
    } else {
        None
    };
    match format {
        Format::Json => io::to_json(&json!({
            "n": g.n(),
            "omega": report.omega,
            "chi": report.chi,
            "omega_c": report.omega_c,
            "chi_c": report.chi_c,
            "perfect": perfect,
            "circular_perfect": circular_perfect,
            "coloring": coloring,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "omega", "chi", "omega_c", "chi_c", "perfect", "circular_perfect"])?;
            w.write_record([
                g.n().to_string(),
                report.omega.to_string(),
                report.chi.to_string(),
                report.omega_c.to_string(),
                report.chi_c.to_string(),
                perfect.to_string(),
                circular_perfect.map_or(String::new(), |b| b.to_string()),
            ])?;
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Dot => bail!("--format dot is only available for gen"),
    }
}

fn construct(graph: &Path, q: u32, coloring: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let g = read_graph(graph)?;
    let plan = match coloring {
        Some(path) => ConstructionPlan::new(&g, io::read_json::<CircularColoring>(path, "coloring")?)?,
        None => ConstructionPlan::optimal(&g)?,
    };
    let code = plan.code(field(q)?)?;
    let complement = g.complement();
    let omega_c = if limits::check("vertices", g.n(), limits::CIRCULAR_MAX_N).is_ok() {
        Some(params::circular_clique_number(&complement)?)
    } else {
        None
    };
    let optimal = omega_c == Some(code.rate());
    let text = io::to_json(&code)?;
    io::emit(out, &text)?;
    let summary = json!({
        "k": plan.k(),
        "d": plan.d(),
        "rate": code.rate(),
        "lower_bound": omega_c,
        "optimal": optimal,
    });
    if out.is_some() {
        io::emit(None, &io::to_json(&summary)?)?;
    } else {
        eprint!("{}", io::to_json(&summary)?);
    }
    Ok(())
}

fn verify(graph: &Path, code: &Path) -> Result<bool> {
    let g = read_graph(graph)?;
    let code: LinearIndexCode = io::read_json(code, "code")?;
    let violations = code.violations(&g)?;
    let rowspace_ok = (0..g.n())
        .map(|i| code.can_decode_rowspace(&g, i))
        .collect::<circix::Result<Vec<_>>>()?;
    let valid = violations.is_empty();
    io::emit(
        None,
        &io::to_json(&json!({
            "valid": valid,
            "rate": code.rate(),
            "l": code.len(),
            "t": code.t(),
            "violations": violations,
            "rowspace_decodable": rowspace_ok.iter().all(|&b| b),
        }))?,
    )?;
    Ok(valid)
}

fn decode_demo(graph: &Path, code: &Path, seed: u64) -> Result<bool> {
    let g = read_graph(graph)?;
    let code: LinearIndexCode = io::read_json(code, "code")?;
    let q = code.field().q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<Vec<u32>> = (0..g.n())
        .map(|_| (0..code.t()).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    let word = code.encode(&x)?;
    let mut receivers = Vec::new();
    let mut all_ok = true;
    for i in 0..g.n() {
        let side: BTreeMap<usize, Vec<u32>> = g.side_info_set(i).into_iter().map(|u| (u, x[u].clone())).collect();
        let entry = match code.decode(&g, i, &word, &side) {
            Ok(got) => {
                all_ok &= got == x[i];
                json!({"receiver": i, "decoded": got, "expected": x[i], "ok": got == x[i]})
            }
            Err(e) => {
                all_ok = false;
                json!({"receiver": i, "error": e.to_string(), "ok": false})
            }
        };
        receivers.push(entry);
    }
    io::emit(
        None,
        &io::to_json(&json!({"codeword": word, "receivers": receivers, "all_ok": all_ok}))?,
    )?;
    Ok(all_ok)
}

fn oracle(o: Oracle) -> Result<()> {
    match o {
        Oracle::Confusion { graph, t, q } => {
            let g = read_graph(&graph)?;
            let gamma = ConfusionGraph::new(&g, t, field(q)?)?;
            let omega = gamma.clique_number(None);
            let bound = ConfusionBound::from_omega(omega, gamma.vertex_count(), t, q)?;
            io::emit(
                None,
                &io::to_json(&json!({
                    "omega": omega,
                    "bound": bound.bound_string(),
                    "vertices": gamma.vertex_count(),
                    "t": t,
                    "q": q,
                }))?,
            )
        }
        Oracle::Exhaustive { graph, q } => {
            let g = read_graph(&graph)?;
            let (l, code) =
                search::beta_scalar_exhaustive(&g, field(q)?, g.n())?.context("no scalar code up to length n")?;
            io::emit(None, &io::to_json(&json!({"beta_sl": l, "witness": code}))?)
        }
    }
}

fn ng_command(g: &SideInfoGraph, q: u32) -> Result<String> {
    let rep = ng::ng_report(g, field(q)?)?;
    io::to_json(&json!({
        "product_interval": rep.product.product.to_string(),
        "sum_interval": rep.sum.sum.to_string(),
        "tensor_rank_ok": rep.tensor.rank_ok,
        "equality_flags": {
            "product_lower": rep.product.lower_equality,
            "product_upper": rep.product.upper_equality,
            "sum_lower": rep.sum.lower_equality,
            "sum_upper": rep.sum.upper_equality,
        },
        "product": rep.product,
        "sum": rep.sum,
        "tensor": rep.tensor,
    }))
}

fn run_suite(max_n: usize, q: &[u32], seed: u64, out: Option<&Path>) -> Result<bool> {
    let output = suite::run(max_n, q, seed)?;
    let csv = output.csv()?;
    let summary = io::to_json(&output.summary)?;
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            io::emit(Some(&dir.join("suite.csv")), &csv)?;
            io::emit(Some(&dir.join("suite.json")), &summary)?;
            eprintln!(
                "{} rows, {} failed rows, pass = {}",
                output.summary.rows,
                output.summary.failed_rows.len(),
                output.summary.pass
            );
        }
        None => {
            io::emit(None, &csv)?;
            eprint!("{summary}");
        }
    }
    Ok(output.summary.pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen {
            family,
            params,
            seed,
            complement,
            format,
            out,
        } => {
            let mut g = generate(family, &params, seed)?;
            if complement {
                g = g.complement();
            }
            let text = match format {
                Format::Json => io::to_json(&g)?,
                Format::Dot => g.to_dot(),
                Format::Csv => bail!("--format csv is not available for gen"),
            };
            io::emit(out.as_deref(), &text)?;
        }
        Command::Params { graph, format, out } => {
            let g = read_graph(&graph)?;
            io::emit(out.as_deref(), &params_command(&g, format)?)?;
        }
        Command::Construct {
            graph,
            q,
            coloring,
            out,
        } => construct(&graph, q, coloring.as_deref(), out.as_deref())?,
        Command::Verify { graph, code } => return verify(&graph, &code),
        Command::DecodeDemo { graph, code, seed } => return decode_demo(&graph, &code, seed),
        Command::Oracle { oracle: o } => oracle(o)?,
        Command::Report { graph, q, out } => {
            let g = read_graph(&graph)?;
            let report = search::sandwich_report(&g, field(q)?)?;
            io::emit(out.as_deref(), &io::to_json(&report)?)?;
            return Ok(report.violations.is_empty());
        }
        Command::Ng { graph, q, out } => {
            let g = read_graph(&graph)?;
            io::emit(out.as_deref(), &ng_command(&g, q)?)?;
        }
        Command::Suite { max_n, q, seed, out } => return run_suite(max_n, &q, seed, out.as_deref()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            // the 64-vertex representation bound cannot be lifted
            if let Some(circix::Error::TooLarge { limit, .. }) = e.downcast_ref::<circix::Error>() {
                if *limit != limits::MAX_VERTICES {
                    eprintln!("hint: set {}=1 to lift analysis limits", limits::OVERRIDE_ENV);
                }
            }
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn families_take_their_parameters() {
        let g = generate(Family::CircularClique, &strings(&["5", "2"]), 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 5));
        let g = generate(Family::JoinCompleteEdgeless, &strings(&["3"]), 0).unwrap();
        assert_eq!(g.n(), 5);
        assert!(generate(Family::Cycle, &strings(&["5", "2"]), 0).is_err());
        assert!(generate(Family::Random, &strings(&["5", "x"]), 0).is_err());
        let a = generate(Family::RandomDirected, &strings(&["6", "0.5"]), 9).unwrap();
        assert_eq!(a, generate(Family::RandomDirected, &strings(&["6", "0.5"]), 9).unwrap());
    }

    #[test]
    fn params_csv_has_header() {
        let text = params_command(&graphs::cycle(5).unwrap(), Format::Csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,omega,chi,omega_c,chi_c,perfect,circular_perfect"));
        assert_eq!(lines.next(), Some("5,2,3,5/2,5/2,false,true"));
        assert!(params_command(&graphs::cycle(5).unwrap(), Format::Dot).is_err());
    }
}
