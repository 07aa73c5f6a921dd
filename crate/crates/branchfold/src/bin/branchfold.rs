//! Command-line front end. Every invocation is stateless: models, measures,
//! and knot codes move through files or standard streams, so runs are
//! reproducible and scriptable.
//!
//! Exit codes are a stable contract: 0 success (and, for `verify`, all rows
//! passing), 2 usage error, 3 invalid measure (the offending branch curve is
//! named), 4 multi-component closure, 1 any other failure.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use branchfold::branched::BranchedSurface;
use branchfold::carried::{wiring_search, WiringOverrides};
use branchfold::knots::{self, PdCode, TangleError};
use branchfold::measures::{
    carries_closed_surface, enumerate_measures, first_infeasible_curve, ClosedEvidence,
    InvariantMeasure, DEFAULT_ENUMERATION_BOUND,
};
use branchfold::models::{build_rg, build_rgi, fgn_measure, grid_csv, verify_grid};
use branchfold::{analyze, carry_report, parse_measure_table, parse_model, reconstruct, serialize_model};

/// Environment variable overriding the default enumeration bound.
const BOUND_ENV: &str = "BRANCHFOLD_BOUND";

#[derive(Parser)]
#[command(
    name = "branchfold",
    version,
    about = "Measured branched surfaces, carried-surface analysis, and square-double knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a shipped branched-surface model as a model file
    Model {
        #[command(subcommand)]
        kind: ModelKind,
    },
    /// Resolve a measure on a model and report the carried surface
    Carry(CarryArgs),
    /// Enumerate invariant measures with all weights up to a bound
    Cone(ConeArgs),
    /// Rebuild the carried-surface grid and check every cell
    Verify(VerifyArgs),
    /// Knot constructions and invariants
    Knot {
        #[command(subcommand)]
        cmd: KnotCmd,
    },
    /// Export a model's incidence structure as a graph
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum ModelKind {
    /// The genus-g model with nine sections and six branch curves
    Rg {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        genus: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A member of the disjoint family: index i among s+1 parallel copies
    Rgi {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        genus: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        s: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CarryArgs {
    /// Model file
    model: PathBuf,
    /// Measure file (a TOML table of section weights)
    measure: Option<PathBuf>,
    /// Use the built-in weight family instead of a measure file: g n
    #[arg(long, num_args = 2, value_names = ["G", "N"])]
    fgn: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = WiringMode::Default)]
    wiring: WiringMode,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WiringMode {
    /// Order-preserving wiring with the model's recorded fold flips
    Default,
    /// Search shifts and fold flips for an orientable reconstruction
    Search,
}

#[derive(Args)]
struct ConeArgs {
    /// Model file
    model: PathBuf,
    /// Weight cap per section (default: BRANCHFOLD_BOUND or 5)
    #[arg(long)]
    bound: Option<u64>,
    /// Pin a section weight, e.g. --fix P=0 (repeatable)
    #[arg(long = "fix", value_name = "NAME=VALUE")]
    fix: Vec<String>,
    /// Also report whether the model carries a closed surface, with evidence
    #[arg(long)]
    certify_closed: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Inclusive genus range, e.g. 1..4
    #[arg(long, value_parser = parse_range_u32)]
    g_range: (u32, u32),
    /// Inclusive boundary-count range, e.g. 1..8
    #[arg(long, value_parser = parse_range_u64)]
    n_range: (u64, u64),
    /// Also range over family indices i in 0..=s
    #[arg(long)]
    s: Option<u32>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum KnotCmd {
    /// Emit the square double of a pattern knot as a PD file
    Build {
        /// Crossings inserted between the doubled strands
        #[arg(long, default_value_t = 0)]
        twists: i64,
        /// PD file path, or a built-in name: unknot, trefoil, figure8
        #[arg(long, default_value = "unknot")]
        pattern: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Alexander polynomial of a PD file ('-' or no argument: stdin)
    Alexander { input: Option<PathBuf> },
    /// Seifert-algorithm genus bound of a PD file ('-' or stdin)
    GenusUpper { input: Option<PathBuf> },
}

#[derive(Args)]
struct ExportArgs {
    /// Model file
    model: PathBuf,
    #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
    format: ExportFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
}

enum CliError {
    Usage(String),
    InvalidMeasure(String),
    MultiComponent(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::InvalidMeasure(_) => 3,
            CliError::MultiComponent(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::InvalidMeasure(m) | CliError::MultiComponent(m) | CliError::Other(m) => m,
        }
    }
}

fn other<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Other(e.to_string())
}

fn parse_range_u32(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or("expected an inclusive range like 1..4")?;
    let lo = a.trim().parse().map_err(|e| format!("range start {a:?}: {e}"))?;
    let hi = b.trim().parse().map_err(|e| format!("range end {b:?}: {e}"))?;
    Ok((lo, hi))
}

fn parse_range_u64(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected an inclusive range like 1..8")?;
    let lo = a.trim().parse().map_err(|e| format!("range start {a:?}: {e}"))?;
    let hi = b.trim().parse().map_err(|e| format!("range end {b:?}: {e}"))?;
    Ok((lo, hi))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(other),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_model(path: &Path) -> Result<BranchedSurface, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))?;
    parse_model(&text).map_err(other)
}

fn read_input(input: &Option<PathBuf>) -> Result<String, CliError> {
    match input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Other(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(other)?;
            Ok(buf)
        }
    }
}

fn default_bound() -> Result<u64, CliError> {
    match std::env::var(BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("{BOUND_ENV}={v:?}: {e}"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_BOUND),
    }
}

/// Renders a measure as one line of name=weight pairs in section order.
fn measure_line(bs: &BranchedSurface, m: &InvariantMeasure) -> String {
    bs.sections()
        .iter()
        .map(|s| format!("{}={}", s.name, m.weight(s.id)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_model(kind: ModelKind) -> Result<(), CliError> {
    let (model, output) = match kind {
        ModelKind::Rg { genus, output } => (build_rg(genus).map_err(other)?, output),
        ModelKind::Rgi { genus, i, s, output } => {
            if i > s {
                return Err(CliError::Usage(format!("index {i} exceeds family size {s}")));
            }
            (build_rgi(genus, i, s).map_err(other)?, output)
        }
    };
    emit(&output, &serialize_model(&model.surface))
}

fn resolve_measure(bs: &BranchedSurface, args: &CarryArgs) -> Result<InvariantMeasure, CliError> {
    match (&args.measure, &args.fgn) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))?;
            let table = parse_measure_table(&text).map_err(other)?;
            InvariantMeasure::from_named(bs, &table).map_err(|e| CliError::InvalidMeasure(e.to_string()))
        }
        (None, Some(gn)) => {
            // Positional: the weight family lays out over the model's section
            // order, so it applies to every member of the genus-g family.
            let (g, n) = (gn[0] as u32, gn[1]);
            let weights = fgn_measure(g, n).map_err(other)?.weights().to_vec();
            InvariantMeasure::for_surface(bs, weights).map_err(|e| CliError::InvalidMeasure(e.to_string()))
        }
        _ => Err(CliError::Usage("provide exactly one of a measure file or --fgn G N".into())),
    }
}

fn run_carry(args: CarryArgs) -> Result<(), CliError> {
    let bs = load_model(&args.model)?;
    let w = resolve_measure(&bs, &args)?;
    if let Some(curve) = first_infeasible_curve(&bs, &w) {
        return Err(CliError::InvalidMeasure(format!(
            "measure is not invariant: branch curve {} cannot be resolved",
            bs.curve(curve).name
        )));
    }
    let report = match args.wiring {
        WiringMode::Default => carry_report(&bs, &w, &WiringOverrides::default()).map_err(other)?.1,
        WiringMode::Search => {
            // Toggle the declared fold pairs; every cyclic shift is tried.
            let mut freedom = branchfold::carried::WiringFreedom::default();
            for c in bs.curves() {
                for (k, p) in c.pairs.iter().enumerate() {
                    if p.flip {
                        freedom.fold_pairs.push((c.id, k));
                    }
                }
            }
            let wiring = wiring_search(&bs, &w, &freedom, |r| r.orientable)
                .ok_or_else(|| CliError::Other("no wiring yields an orientable surface".into()))?;
            let sc = reconstruct(&bs, &w, &wiring).map_err(other)?;
            analyze(&bs, &sc)
        }
    };
    emit(&args.output, &format!("{report}"))
}

fn run_cone(args: ConeArgs) -> Result<(), CliError> {
    let bs = load_model(&args.model)?;
    let bound = match args.bound {
        Some(b) => b,
        None => default_bound()?,
    };
    let mut constraints = Vec::new();
    for f in &args.fix {
        let (name, value) = f
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--fix expects NAME=VALUE, got {f:?}")))?;
        let id = bs
            .section_by_name(name.trim())
            .ok_or_else(|| CliError::Usage(format!("unknown section {name:?}")))?;
        let v: u64 = value
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("--fix value {value:?}: {e}")))?;
        constraints.push((id, v));
    }
    let measures = enumerate_measures(&bs, bound, &constraints);
    let mut out = String::new();
    for m in &measures {
        out.push_str(&measure_line(&bs, m));
        out.push('\n');
    }
    if args.certify_closed {
        let verdict = carries_closed_surface(&bs, bound);
        out.push_str(&format!("closed carriage: {verdict}\n"));
        if let ClosedEvidence::Propagation(prop) = &verdict.evidence {
            out.push_str(&prop.render(&bs));
        }
    }
    emit(&args.output, &out)
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    let rows = verify_grid(args.g_range, args.n_range, args.s).map_err(other)?;
    emit(&args.output, &grid_csv(&rows))?;
    if rows.iter().all(|r| r.pass) {
        Ok(())
    } else {
        let failing = rows.iter().filter(|r| !r.pass).count();
        Err(CliError::Other(format!("{failing} grid cell(s) failed")))
    }
}

fn load_pattern(pattern: &str) -> Result<PdCode, CliError> {
    if Path::new(pattern).exists() {
        let text = std::fs::read_to_string(pattern).map_err(other)?;
        return knots::parse_pd(&text).map_err(other);
    }
    match pattern {
        "unknot" => Ok(knots::unknot()),
        "trefoil" => Ok(knots::trefoil()),
        "figure8" | "figure-eight" => Ok(knots::figure_eight()),
        _ => Err(CliError::Other(format!("pattern {pattern:?}: no such file or built-in knot"))),
    }
}

fn knot_error(e: TangleError) -> CliError {
    match e {
        TangleError::MultiComponent(n) | TangleError::PatternComponents(n) => {
            CliError::MultiComponent(format!("closure traces {n} components, expected a knot"))
        }
        other_err => CliError::Other(other_err.to_string()),
    }
}

fn run_knot(cmd: KnotCmd) -> Result<(), CliError> {
    match cmd {
        KnotCmd::Build { twists, pattern, output } => {
            let pd = load_pattern(&pattern)?;
            let k = knots::square_double(twists, &pd).map_err(knot_error)?;
            emit(&output, &knots::format_pd(&k))
        }
        KnotCmd::Alexander { input } => {
            let pd = knots::parse_pd(&read_input(&input)?).map_err(other)?;
            let poly = knots::alexander(&pd).map_err(|e| match e {
                knots::AlexanderError::MultiComponent(n) => {
                    CliError::MultiComponent(format!("code traces {n} components, expected a knot"))
                }
                e => other(e),
            })?;
            println!("{poly}");
            Ok(())
        }
        KnotCmd::GenusUpper { input } => {
            let pd = knots::parse_pd(&read_input(&input)?).map_err(other)?;
            let g = knots::seifert_genus_upper(&pd).map_err(|e| match e {
                knots::PdError::Diagram(knots::DiagramError::MultiComponent(n)) => {
                    CliError::MultiComponent(format!("code traces {n} components, expected a knot"))
                }
                e => other(e),
            })?;
            println!("{g}");
            Ok(())
        }
    }
}

fn run_export(args: ExportArgs) -> Result<(), CliError> {
    let bs = load_model(&args.model)?;
    let ExportFormat::Dot = args.format;
    let mut out = String::new();
    out.push_str(&format!("graph \"{}\" {{\n", bs.name));
    for s in bs.sections() {
        out.push_str(&format!("  s{} [shape=box, label=\"{}\"];\n", s.id.0, s.name));
    }
    for c in bs.curves() {
        out.push_str(&format!("  c{} [shape=point, xlabel=\"{}\"];\n", c.id.0, c.name));
    }
    for c in bs.curves() {
        for pid in &c.incident {
            let p = bs.port(*pid);
            out.push_str(&format!(
                "  s{} -- c{} [label=\"{}\"];\n",
                p.owner.0, c.id.0, p.name
            ));
        }
    }
    out.push_str("}\n");
    emit(&args.output, &out)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Model { kind } => run_model(kind),
        Command::Carry(args) => run_carry(args),
        Command::Cone(args) => run_cone(args),
        Command::Verify(args) => run_verify(args),
        Command::Knot { cmd } => run_knot(cmd),
        Command::Export(args) => run_export(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
