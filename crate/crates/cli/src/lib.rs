//! The `posetdim` command line. [`run`] takes the argument list and the
//! standard streams so tests can drive it in process.
//!
//! Exit codes: 0 success, 1 a verification or certification failure (with a
//! one-line witness on stdout), 2 usage, parse or capacity errors.

mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use posetdim::coloring::{
    auto_coloring, build_elimination_forest, coloring_from_forest, exact_min_p_centered,
    is_p_centered, is_p_centered_literal, CenteredVerdict, ForestMode, LITERAL_CHECK_MAX_VERTICES,
    SUBSET_CHECK_MAX_COLORS,
};
use posetdim::formats::{
    parse_coloring, parse_graph, parse_poset, parse_realizer, write_coloring, write_graph,
    write_partition, write_poset, write_realizer,
};
use posetdim::generators::{named_graph, random_poset, seed_from_env, NamedFamily};
use posetdim::oracle::{
    contains_standard_example, exact_chromatic_number, exact_dimension_capped,
    DIMENSION_MAX_ELEMENTS,
};
use posetdim::realizer::{
    build_realizer_from_partition, dimension_bound, dimension_bound_exponent, run_partition,
    CertificationError, PartitionOptions, DIMENSION_BOUND_MAX_EXPONENT, PartitionRun, StageTimings, UpfrontCheck,
};
use posetdim::reversal::{validate_realizer, RealizerFailure, RealizerVerdict};
use posetdim::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "posetdim", version, about = "Poset dimension tools: realizers from centered colorings, exact oracles, generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a poset family, a named graph (`gen graph C5`) or a random poset.
    Gen(GenArgs),
    /// Exact dimension with a minimum realizer.
    Dim {
        poset: String,
        #[arg(long, default_value_t = DIMENSION_MAX_ELEMENTS)]
        max_n: usize,
    },
    /// Exact chromatic number with an optimal coloring.
    Chi { graph: String },
    /// Color a graph: centered from an elimination forest, or minimum p-centered with --exact --p.
    Color {
        graph: String,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        exact: bool,
    },
    /// Check that a coloring is p-centered.
    VerifyColoring {
        graph: String,
        coloring: String,
        #[arg(long)]
        p: usize,
    },
    /// Partition the incomparable pairs into reversible classes and print a realizer.
    Realize(RealizeArgs),
    /// Check that a list of linear extensions realizes a poset.
    VerifyRealizer { poset: String, realizer: String },
    /// Print the class count bound for a height and color count.
    Bound {
        #[arg(long)]
        height: u32,
        #[arg(long)]
        colors: u32,
    },
    /// Run the pipeline over every instance of a manifest.
    Report {
        manifest: String,
        #[arg(long)]
        timings: bool,
    },
    /// Search for an induced standard example.
    FindSd {
        poset: String,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Poset family, `graph`, or `random`.
    family: String,
    param: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Relation probability for `random`.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Seed for `random`; falls back to POSETDIM_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct RealizeArgs {
    poset: String,
    #[arg(long, conflicts_with = "auto_color")]
    coloring: Option<String>,
    /// Color the cover graph automatically (the default).
    #[arg(long)]
    auto_color: bool,
    #[arg(long)]
    emit_realizer: Option<PathBuf>,
    #[arg(long)]
    emit_partition: Option<PathBuf>,
    /// Validate the realizer and print every check.
    #[arg(long)]
    certify: bool,
    /// Print per-stage wall times.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CmdResult = Result<i32, CliError>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    /// Reads a file, or standard input for `-`.
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path != "-" {
            return fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")));
        }
        if self.stdin_used {
            return Err(CliError::Usage("standard input can only be read once".into()));
        }
        self.stdin_used = true;
        let mut text = String::new();
        self.stdin.read_to_string(&mut text)?;
        Ok(text)
    }

    fn emit(&mut self, text: &str) -> Result<(), CliError> {
        self.out.write_all(text.as_bytes())?;
        Ok(())
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io {
        stdin,
        stdin_used: false,
        out: stdout,
    };
    let result = match cli.command {
        Command::Gen(args) => gen(&mut io, args),
        Command::Dim { poset, max_n } => dim(&mut io, &poset, max_n),
        Command::Chi { graph } => chi(&mut io, &graph),
        Command::Color { graph, p, exact } => color(&mut io, &graph, p, exact),
        Command::VerifyColoring { graph, coloring, p } => verify_coloring(&mut io, &graph, &coloring, p),
        Command::Realize(args) => realize(&mut io, args),
        Command::VerifyRealizer { poset, realizer } => verify_realizer(&mut io, &poset, &realizer),
        Command::Bound { height, colors } => bound(&mut io, height, colors),
        Command::Report { manifest, timings } => report::report(&mut io, &manifest, timings),
        Command::FindSd { poset, d } => find_sd(&mut io, &poset, d),
    };
    let _ = io.out.flush();
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn join_ids(ids: &[usize]) -> String {
    if ids.is_empty() {
        return "-".into();
    }
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn join_pairs(pairs: &[(usize, usize)]) -> String {
    pairs.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(",")
}

/// One machine-readable line naming the failed check and its witness.
fn witness_line(e: &CertificationError) -> String {
    let fields = match e {
        CertificationError::NotCentered { p, witness } => {
            format!("p={p} witness={}", join_ids(witness))
        }
        CertificationError::UpsetMismatch { sigma, x, other, common } => {
            format!("sigma={sigma} x={x} other={other} common={common}")
        }
        CertificationError::NotLaminar { fingerprint, first, second } => format!(
            "fingerprint={} first={} second={}",
            join_ids(fingerprint),
            join_ids(first),
            join_ids(second)
        ),
        CertificationError::NotInterval { fingerprint, sigma, class } => format!(
            "fingerprint={} sigma={sigma} class={}",
            join_ids(fingerprint),
            join_ids(class)
        ),
        CertificationError::DownsetStraddle { sigma, x, y, left, right } => {
            format!("sigma={sigma} x={x} y={y} left={left} right={right}")
        }
        CertificationError::NonReversibleClass { key, cycle } => {
            format!("{key} cycle={}", join_pairs(cycle.pairs()))
        }
    };
    format!("certification-failed check={} {fields}", e.check_name())
}

fn format_ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1000.0)
}

fn timing_fields(t: &StageTimings) -> String {
    [
        ("verify", t.verify),
        ("signatures", t.signatures),
        ("classes", t.classes),
        ("laminar", t.laminar),
        ("vectors", t.vectors),
        ("reversibility", t.reversibility),
    ]
    .iter()
    .map(|(name, d)| format!("{name}={}", format_ms(*d)))
    .collect::<Vec<_>>()
    .join(" ")
}

fn write_output(io: &mut Io, output: Option<&Path>, text: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => io.emit(text)?,
    }
    Ok(EXIT_OK)
}

fn gen(io: &mut Io, args: GenArgs) -> CmdResult {
    let param = || {
        args.param
            .clone()
            .ok_or_else(|| CliError::Usage(format!("`gen {}` needs a parameter", args.family)))
    };
    let text = match args.family.as_str() {
        "graph" => write_graph(&named_graph(&param()?)?),
        "random" => {
            let n: usize = param()?
                .parse()
                .map_err(|_| CliError::Usage("`gen random` expects a size".into()))?;
            if !(0.0..=1.0).contains(&args.density) {
                return Err(CliError::Usage("density must lie in [0, 1]".into()));
            }
            let seed = args.seed.unwrap_or_else(|| seed_from_env(0));
            write_poset(&random_poset(n, args.density, seed))
        }
        family => write_poset(&NamedFamily::parse(family, &param()?)?.build()?),
    };
    write_output(io, args.output.as_deref(), &text)
}

fn dim(io: &mut Io, path: &str, max_n: usize) -> CmdResult {
    let p = parse_poset(&io.read(path)?)?;
    let cert = exact_dimension_capped(&p, max_n)?;
    io.emit(&format!("{}\n{}", cert.value, write_realizer(&cert.realizer)))?;
    Ok(EXIT_OK)
}

fn chi(io: &mut Io, path: &str) -> CmdResult {
    let g = parse_graph(&io.read(path)?)?;
    let (value, col) = exact_chromatic_number(&g)?;
    io.emit(&format!("{value}\n{}", write_coloring(&col)))?;
    Ok(EXIT_OK)
}

fn color(io: &mut Io, path: &str, p: Option<usize>, exact: bool) -> CmdResult {
    let g = parse_graph(&io.read(path)?)?;
    let (header, col) = match (exact, p) {
        (true, Some(p)) => (format!("# minimum {p}-centered coloring"), exact_min_p_centered(&g, p)?),
        (true, None) => {
            let f = build_elimination_forest(&g, ForestMode::ExactSmall)?;
            let col = coloring_from_forest(&g, &f)?;
            (format!("# centered coloring from a minimum depth elimination forest (depth {})", f.depth()), col)
        }
        (false, _) => (
            "# centered coloring from an elimination forest".to_string(),
            auto_coloring(&g),
        ),
    };
    io.emit(&format!("{header}\n{}", write_coloring(&col)))?;
    Ok(EXIT_OK)
}

fn verify_coloring(io: &mut Io, graph: &str, coloring: &str, p: usize) -> CmdResult {
    let g = parse_graph(&io.read(graph)?)?;
    let col = parse_coloring(&io.read(coloring)?)?;
    let verdict = if col.color_count() <= SUBSET_CHECK_MAX_COLORS || g.len() > LITERAL_CHECK_MAX_VERTICES {
        is_p_centered(&g, &col, p)?
    } else {
        is_p_centered_literal(&g, &col, p)?
    };
    match verdict {
        CenteredVerdict::Centered => {
            io.emit(&format!("centered p={p}\n"))?;
            Ok(EXIT_OK)
        }
        CenteredVerdict::Violation(witness) => {
            io.emit(&format!("not-centered p={p} witness={}\n", join_ids(&witness)))?;
            Ok(EXIT_FAILED)
        }
    }
}

fn certification_lines(run: &PartitionRun) -> String {
    let mut out = String::new();
    match &run.upfront {
        UpfrontCheck::Verified => writeln!(out, "# check coloring verified").unwrap(),
        UpfrontCheck::Skipped(why) => writeln!(out, "# check coloring skipped ({why})").unwrap(),
    }
    let c = run.counts;
    for (name, count) in [
        ("upset-equality", c.upset_equality),
        ("laminarity", c.laminar_pairs),
        ("interval", c.intervals),
        ("downset-side", c.downset_sides),
        ("reversibility", c.reversible_classes),
    ] {
        writeln!(out, "# check {name} ok {count}").unwrap();
    }
    out
}

fn realize(io: &mut Io, args: RealizeArgs) -> CmdResult {
    let p = parse_poset(&io.read(&args.poset)?)?;
    let col = match &args.coloring {
        Some(path) => parse_coloring(&io.read(path)?)?,
        None => auto_coloring(&p.cover_graph()),
    };
    let run = match run_partition(&p, &col, PartitionOptions::default()) {
        Ok(run) => run,
        Err(Error::Certification(e)) => {
            io.emit(&format!("{}\n", witness_line(&e)))?;
            return Ok(EXIT_FAILED);
        }
        Err(e) => return Err(e.into()),
    };
    let exts = build_realizer_from_partition(&p, &run.partition)?;

    let mut out = String::new();
    writeln!(
        out,
        "# n={} height={} colors={} signatures={} fingerprints={} classes={}",
        p.len(),
        run.height,
        run.colors,
        run.table.signatures().len(),
        run.index.blocks().len(),
        run.partition.len()
    )
    .unwrap();
    writeln!(out, "# bound=2^{}", dimension_bound_exponent(run.height as u32, run.colors as u32)).unwrap();
    if args.certify {
        out.push_str(&certification_lines(&run));
        match validate_realizer(&p, &exts)? {
            RealizerVerdict::Valid => out.push_str("# check realizer valid\n# certified\n"),
            RealizerVerdict::Invalid(RealizerFailure::NeverReversed { x, y }) => {
                io.emit(&format!("realizer-invalid never-reversed x={x} y={y}\n"))?;
                return Ok(EXIT_FAILED);
            }
        }
    }
    if args.timings {
        writeln!(out, "# time-ms {}", timing_fields(&run.timings)).unwrap();
    }
    let realizer = write_realizer(&exts);
    out.push_str(&realizer);
    if let Some(path) = &args.emit_realizer {
        fs::write(path, &realizer).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &args.emit_partition {
        fs::write(path, write_partition(&run.partition))
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    io.emit(&out)?;
    Ok(EXIT_OK)
}

fn verify_realizer(io: &mut Io, poset: &str, realizer: &str) -> CmdResult {
    let p = parse_poset(&io.read(poset)?)?;
    let exts = parse_realizer(&io.read(realizer)?)?;
    let line = match validate_realizer(&p, &exts) {
        Ok(RealizerVerdict::Valid) => {
            io.emit(&format!("valid extensions={}\n", exts.len()))?;
            return Ok(EXIT_OK);
        }
        Ok(RealizerVerdict::Invalid(RealizerFailure::NeverReversed { x, y })) => {
            format!("invalid never-reversed x={x} y={y}")
        }
        Err(Error::NotLinearExtension(why)) => format!("invalid not-a-linear-extension {why}"),
        Err(e) => return Err(e.into()),
    };
    io.emit(&format!("{line}\n"))?;
    Ok(EXIT_FAILED)
}

fn bound(io: &mut Io, height: u32, colors: u32) -> CmdResult {
    let exponent = dimension_bound_exponent(height, colors);
    if exponent > DIMENSION_BOUND_MAX_EXPONENT.into() {
        return Err(CliError::Usage(format!("bound is 2^{exponent}, too large to print in decimal")));
    }
    let value = dimension_bound(height, colors)?;
    io.emit(&format!("{value}\n"))?;
    Ok(EXIT_OK)
}

fn find_sd(io: &mut Io, path: &str, d: usize) -> CmdResult {
    let p = parse_poset(&io.read(path)?)?;
    let line = match contains_standard_example(&p, d)? {
        Some(w) => format!("a={} b={}", join_ids(&w.a), join_ids(&w.b)),
        None => "none".to_string(),
    };
    io.emit(&format!("{line}\n"))?;
    Ok(EXIT_OK)
}
