use std::fs::{File, OpenOptions};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand};

use apsp_core::bench::run_bench;
use apsp_core::dimacs::{parse_dimacs, write_dimacs};
use apsp_core::generate::{road_like_grid, GridSpec};
use apsp_core::matrix::{read_distance_matrix, write_distance_matrix, write_precedence_matrix};
use apsp_core::subgraph::extract_connected_subgraph;
use apsp_core::verify::{compare_matrices, verify_solution};
use apsp_core::{solve, Graph, SolveParams};

/// All-pairs shortest paths by graph contraction.
#[derive(Debug, Parser)]
#[command(name = "apsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve all pairs and write the distance and precedence matrices.
    Solve {
        #[command(flatten)]
        common: SolveArgs,
        /// Distance matrix output file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Precedence matrix output file.
        #[arg(long)]
        pred: Option<PathBuf>,
    },
    /// Solve, then check the result against reference solvers and rebuilt paths.
    Verify {
        #[command(flatten)]
        common: SolveArgs,
        /// Random vertex pairs whose paths are rebuilt and checked.
        #[arg(long, default_value_t = 50)]
        sample: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Compare against this distance matrix file instead.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Time the contraction pipeline against Dijkstra from every vertex.
    Bench {
        #[command(flatten)]
        common: SolveArgs,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// CSV file to append the report row to; stdout if omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Run the Dijkstra baseline on one thread.
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        db_single_thread: bool,
    },
    /// Extract a connected breadth-first subgraph as a DIMACS file.
    Subgraph {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write `new_id original_id` lines to this file.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Print `n,m,avg_degree,max_degree` as one CSV row.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a road-like grid instance as a DIMACS file.
    Grid {
        #[arg(long, default_value_t = 32)]
        rows: usize,
        #[arg(long, default_value_t = 32)]
        cols: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// DIMACS shortest-path file.
    #[arg(long)]
    input: PathBuf,
    /// Largest degree of a removed vertex, or `inf`.
    #[arg(long, default_value = "inf")]
    dmax: Limit,
    /// Largest net edge growth per removal, or `inf`.
    #[arg(long, default_value = "inf", allow_negative_numbers = true)]
    imax: Limit,
    /// Stop contracting at this many vertices.
    #[arg(long, default_value_t = 1)]
    nmin: usize,
    /// Refuse graphs with more vertices than this.
    #[arg(long, default_value_t = 15000)]
    max_n: usize,
}

impl SolveArgs {
    fn params(&self) -> Result<SolveParams> {
        let dmax = match self.dmax.0 {
            Some(d) if d < 1 => bail!("--dmax must be at least 1"),
            Some(d) => Some(d as usize),
            None => None,
        };
        SolveParams::new(dmax, self.imax.0, self.nmin).map_err(anyhow::Error::msg)
    }

    /// Reads the input and checks it is connected and within `--max-n`.
    fn load(&self) -> Result<Graph> {
        let g = read_graph(&self.input)?;
        if g.order() > self.max_n {
            bail!(
                "graph has {} vertices, above --max-n {}; the matrices would need about {:.1} GB",
                g.order(),
                self.max_n,
                12.0 * (g.order() as f64).powi(2) / 1e9
            );
        }
        if let Some((from, to)) = g.find_unreachable()? {
            bail!("graph is disconnected: vertex {to} is unreachable from vertex {from}");
        }
        Ok(g)
    }
}

/// Integer flag that also accepts `inf`.
#[derive(Debug, Clone, Copy)]
struct Limit(Option<i64>);

impl FromStr for Limit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Limit(None));
        }
        s.parse().map(|v| Limit(Some(v))).map_err(|_| format!("expected an integer or `inf`, got {s:?}"))
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    parse_dimacs(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// Runs `write` against `path`, or stdout when `path` is `None`.
fn write_to(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut out = create(p)?;
            write(&mut out).and_then(|_| out.flush()).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out).and_then(|_| out.flush()).context("writing stdout")
        }
    }
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_solve(common: &SolveArgs, out: Option<&Path>, pred: Option<&Path>) -> Result<ExitCode> {
    let params = common.params()?;
    let g = common.load()?;
    let start = Instant::now();
    let sol = solve(&g, params)?;
    let elapsed = start.elapsed();
    if let Some(path) = out {
        write_to(Some(path), |w| write_distance_matrix(&sol.distances, w))?;
    }
    if let Some(path) = pred {
        write_to(Some(path), |w| write_precedence_matrix(&sol.precedence, w))?;
    }
    println!("n {}", g.order());
    println!("m {}", g.edge_count());
    println!("removals {}", sol.removals);
    println!("residual_order {}", sol.residual_order);
    println!("max_removed_degree {}", sol.max_removed_degree);
    println!("seconds {:.6}", elapsed.as_secs_f64());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(common: &SolveArgs, sample: usize, seed: u64, against: Option<&Path>) -> Result<ExitCode> {
    let params = common.params()?;
    let g = common.load()?;
    let sol = solve(&g, params)?;
    let outcome = match against {
        Some(path) => {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let expected = read_distance_matrix(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
            compare_matrices("matrix file", &expected, &sol.distances).map(|_| format!("matrix file {} matches", path.display()))
        }
        None => verify_solution(&g, &sol, sample, seed).map(|r| {
            format!(
                "ok: {} rows against {}, {} paths rebuilt",
                r.rows_checked,
                r.references.join(" and "),
                r.paths_checked
            )
        }),
    };
    match outcome {
        Ok(msg) => {
            println!("{msg}");
            Ok(ExitCode::SUCCESS)
        }
        Err(err) => {
            eprintln!("apsp: verification failed: {err}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn cmd_bench(common: &SolveArgs, repeats: usize, report: Option<&Path>, db_single_thread: bool) -> Result<ExitCode> {
    let params = common.params()?;
    let g = common.load()?;
    let row = run_bench(&instance_name(&common.input), &g, params, repeats, db_single_thread)?;
    if !row.matrices_equal {
        eprintln!("apsp: distance matrices differ; no report written");
        eprintln!("{}", row.csv_row());
        return Ok(ExitCode::FAILURE);
    }
    match report {
        Some(path) => {
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?;
            let empty = file.metadata()?.len() == 0;
            row.append_csv(BufWriter::new(file), empty)?;
        }
        None => row.append_csv(io::stdout().lock(), true)?,
    }
    eprintln!("speedup {:.2}", row.speedup());
    Ok(ExitCode::SUCCESS)
}

fn cmd_subgraph(input: &Path, size: usize, seed: u64, out: Option<&Path>, map: Option<&Path>) -> Result<ExitCode> {
    let g = read_graph(input)?;
    let sub = extract_connected_subgraph(&g, size, seed)?;
    write_to(out, |w| write_dimacs(&sub.graph, w))?;
    if let Some(path) = map {
        write_to(Some(path), |w| {
            for (k, orig) in sub.original_ids.iter().enumerate() {
                writeln!(w, "{} {}", k + 1, orig)?;
            }
            Ok(())
        })?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(input: &Path) -> Result<ExitCode> {
    let s = read_graph(input)?.stats();
    println!("{},{},{:.3},{}", s.n, s.m, s.avg_degree(), s.max_degree);
    Ok(ExitCode::SUCCESS)
}

fn cmd_grid(rows: usize, cols: usize, seed: u64, out: Option<&Path>) -> Result<ExitCode> {
    if rows == 0 || cols == 0 {
        bail!("--rows and --cols must be positive");
    }
    let spec = GridSpec {
        rows,
        cols,
        ..GridSpec::default()
    };
    write_to(out, |w| write_dimacs(&road_like_grid(&spec, seed), w))?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Solve { common, out, pred } => cmd_solve(common, out.as_deref(), pred.as_deref()),
        Command::Verify {
            common,
            sample,
            seed,
            against,
        } => cmd_verify(common, *sample, *seed, against.as_deref()),
        Command::Bench {
            common,
            repeats,
            report,
            db_single_thread,
        } => cmd_bench(common, *repeats, report.as_deref(), *db_single_thread),
        Command::Subgraph {
            input,
            size,
            seed,
            out,
            map,
        } => cmd_subgraph(input, *size, *seed, out.as_deref(), map.as_deref()),
        Command::Stats { input } => cmd_stats(input),
        Command::Grid { rows, cols, seed, out } => cmd_grid(*rows, *cols, *seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("apsp: {err:#}");
            ExitCode::from(2)
        }
    }
}
