//! `richgeom`: generate extremal point sets, count rich transformations,
//! inspect line arrangements and cuttings, and run the lemma pipelines.

mod commands;
mod error;
mod formats;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use error::CliError;
use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "richgeom",
    version,
    about = "Rich transformations of finite point sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output file: the generated artifact for `gen` and `cut greedy|grid`,
    /// the report otherwise.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
    /// Report file; defaults to stdout (or `-o` for non-generating commands).
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Drop repeated points at load instead of rejecting the file.
    #[arg(long, global = true)]
    pub allow_duplicates: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extremal constructions.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Rich-transformation censuses.
    #[command(subcommand)]
    Count(CountCmd),
    /// Line arrangements.
    #[command(subcommand)]
    Arr(ArrCmd),
    /// Cuttings and properness certificates.
    #[command(subcommand)]
    Cut(CutCmd),
    /// Pruning, triangle selection and average forcing.
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Experiments.
    #[command(subcommand)]
    Exp(ExpCmd),
}

#[derive(Debug, Args)]
pub struct Input {
    /// Point set file.
    #[arg(short = 'i', long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct Guard {
    /// Largest input size the enumerator may run on.
    #[arg(long)]
    pub guard: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum GenCmd {
    /// `{1..2k} x Y` with a Sidon set `Y` and its vertical level shifts.
    Shift {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Points on both axes with multiplicatively Sidon heights.
    Noncollinear {
        #[arg(long)]
        n: usize,
        /// Write the certified maps as an affine map file.
        #[arg(long)]
        maps_out: Option<PathBuf>,
    },
    /// `sqrt(k) x n/sqrt(k)` grid with its rich parameter planes.
    GridAffine {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Write the certified maps as an affine map file.
        #[arg(long)]
        maps_out: Option<PathBuf>,
    },
    /// Lattice `t^r x L^(D-r)` with its rich affine subspaces.
    Subspace {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        /// Side length `L` of the free coordinates.
        #[arg(long)]
        side: usize,
    },
    /// Greedy Sidon set, written as a one-dimensional point set.
    Sidon {
        #[arg(long)]
        t: usize,
        /// Distinct quotients instead of distinct differences.
        #[arg(long)]
        multiplicative: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CountCmd {
    /// Translation vectors with at least `k` matches (any dimension).
    Translations {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Maps `x -> m x + b` on a one-dimensional set.
    Affine1 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        guard: Guard,
    },
    /// Non-degenerate affine maps of the plane.
    Affine2 {
        #[command(flatten)]
        input: Input,
        /// Target set; defaults to the input.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        guard: Guard,
    },
    /// Moebius maps on a one-dimensional set.
    Mobius {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        guard: Guard,
    },
    /// Rational maps of total degree at most `r`.
    Rational {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        guard: Guard,
    },
    /// Isometries of the plane.
    Isometries {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        guard: Guard,
    },
    /// Lines through at least `k` points; the full histogram without `--k`.
    RichLines {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ArrCmd {
    /// Cells of the arrangement with their sign vectors.
    Build {
        #[arg(long)]
        lines: PathBuf,
    },
    /// Ball-size statistics at radius `rho`.
    Stats {
        #[arg(long)]
        lines: PathBuf,
        #[arg(long)]
        rho: usize,
    },
    /// Checks `|B_rho| > rho^2/32` for every cell; all radii without `--rho`.
    Emo {
        #[arg(long)]
        lines: PathBuf,
        #[arg(long)]
        rho: Option<usize>,
    },
    /// Keeps the half of the points whose cells have the smallest balls.
    Filter {
        #[arg(long)]
        lines: PathBuf,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rho: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CutCmd {
    /// Checks that hyperplanes separate the points into singletons.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Hyperplane file (line file in the plane).
        #[arg(long)]
        planes: PathBuf,
    },
    /// Greedy cutting of a planar set within a line budget.
    Greedy {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        budget: usize,
    },
    /// The `rows x cols` grid and its half-integer cutting.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Also write the grid points.
        #[arg(long)]
        points_out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum LemmaCmd {
    /// Prunes low-degree elements of a triple system.
    Folklore {
        /// Triple system file.
        #[arg(short = 'i', long)]
        input: PathBuf,
    },
    /// Small non-collinear triangles in an arrangement.
    Triangles {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lines: PathBuf,
        #[arg(long)]
        rho: usize,
    },
    /// The five-step averaging pipeline.
    AvgForce {
        /// First point set.
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Second point set; defaults to the first.
        #[arg(long)]
        p2: Option<PathBuf>,
        /// Affine map file.
        #[arg(long)]
        maps: PathBuf,
        /// Lines for the first set.
        #[arg(long)]
        h1: PathBuf,
        /// Lines for the second set; defaults to `--h1`.
        #[arg(long)]
        h2: Option<PathBuf>,
        #[arg(long)]
        rho: usize,
        /// Richness ratio: every map matches at least `cN` pairs.
        #[arg(long, value_parser = parse_rat_arg)]
        c: richgeom::exactgeom::Rat,
        /// Cutting constant: `|H_i| <= C sqrt(N)`.
        #[arg(long = "C", value_parser = parse_rat_arg)]
        big_c: richgeom::exactgeom::Rat,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExpCmd {
    /// Census of rich affine maps and properness over a family.
    MainTheorem {
        #[arg(long, value_parser = ["grid", "shift", "noncollinear", "collinear"])]
        family: String,
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_parser = parse_rat_arg)]
        c: richgeom::exactgeom::Rat,
        #[arg(long = "C", value_parser = parse_rat_arg, default_value = "2")]
        big_c: richgeom::exactgeom::Rat,
        #[command(flatten)]
        guard: Guard,
    },
}

fn parse_rat_arg(s: &str) -> Result<richgeom::exactgeom::Rat, String> {
    formats::parse_rat_str(s).map_err(|e| e.to_string())
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let start = Instant::now();
    let mut ctx = commands::Ctx::new(cli.allow_duplicates);
    let outcome = commands::dispatch(&cli.command, &mut ctx)?;
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let artifact = outcome.artifact.clone();
    for (path, value) in &outcome.extra_files {
        write(path, &pretty(value))?;
    }
    let report_path = match (&artifact, &cli.output) {
        (Some(a), Some(out)) => {
            write(out, &pretty(a))?;
            cli.report.clone()
        }
        (_, out) => cli.report.clone().or_else(|| out.clone()),
    };
    let report = Report::new(argv, &ctx.inputs, outcome, elapsed);
    let text = report.render(cli.format);
    match report_path {
        Some(p) => write(&p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli, argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("richgeom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
