//! `csat`: certify, audit and search for uniquely cycle-saturated graphs.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status: 0 success,
//! 1 I/O failure, 2 flag error, 3 graph6 decode error, 4 invariant violation.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csat_core::search::{InputOutcome, DEFAULT_N_MAX};
use csat_core::structure::HPattern;
use csat_core::{
    certify, count_paths_between, enumerate, families, filter_stream, graph6, lemma_audit, CertificateRecord, Graph,
    Mode, SearchConfig, SearchOutcome, CAPACITY,
};
use serde::Serialize;

const EXIT_IO: u8 = 1;
const EXIT_FLAGS: u8 = 2;
const EXIT_DECODE: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "csat", version, about = "Uniquely C_t-saturated graph checker, auditor and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Saturation certificate for each graph6 line of the input.
    Check(GraphInput),
    /// Structural audit report for each graph6 line of the input.
    Audit(GraphInput),
    /// Exhaustive search over connected graphs (or filter an input stream).
    Search(SearchArgs),
    /// Certify a graph6 stream; shorthand for `search --mode filter`.
    Filter(FilterArgs),
    /// Print a named graph family member in graph6.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Count paths on `k` vertices between two vertices of one graph.
    Paths(PathsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Generate,
    Filter,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Cycle length t (at least 3).
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// graph6 file, one graph per line; stdin when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Cycle length t (at least 3).
    #[arg(long)]
    t: usize,
    /// Smallest vertex count reported (default: t in generate mode, 1 in filter mode).
    #[arg(long)]
    n_min: Option<usize>,
    /// Largest vertex count (default: 10 in generate mode, 64 in filter mode).
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Generate)]
    mode: ModeArg,
    /// Apply the supergraph-closed pruning rules (default).
    #[arg(long, conflicts_with = "no_prune")]
    prune: bool,
    /// Disable pruning.
    #[arg(long)]
    no_prune: bool,
    /// Oracle mode: no pruning at all, the cross-check baseline.
    #[arg(long, conflicts_with = "prune")]
    oracle: bool,
    /// Worker threads (0 uses all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Only test 2-connected graphs (requires t >= 6).
    #[arg(long)]
    biconnected_only: bool,
    /// Filter mode: drop inputs isomorphic to an earlier input.
    #[arg(long)]
    dedup: bool,
    /// Filter mode input; stdin when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FilterArgs {
    /// Cycle length t (at least 3).
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = CAPACITY)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Only test 2-connected graphs (requires t >= 6).
    #[arg(long)]
    biconnected_only: bool,
    /// Drop inputs isomorphic to an earlier input.
    #[arg(long)]
    dedup: bool,
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// k triangles sharing one vertex.
    Friendship {
        k: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// K_{1,m}.
    Star {
        m: usize,
    },
    /// A 2m-cycle with a pendant path of l edges.
    H {
        m: usize,
        l: usize,
    },
    Petersen,
}

#[derive(Args, Debug)]
struct PathsArgs {
    /// Path order (number of vertices).
    #[arg(long)]
    k: usize,
    graph: String,
    u: usize,
    v: usize,
}

/// A failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn flags(message: impl ToString) -> Self {
        Failure { code: EXIT_FLAGS, message: message.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_IO, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) if f.code == EXIT_IO && f.message.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("csat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check(args) => check(&args),
        Command::Audit(args) => audit(&args),
        Command::Search(args) => search(&args),
        Command::Filter(args) => filter(&args),
        Command::Gen { family } => gen(&family),
        Command::Paths(args) => paths(&args),
    }
}

fn open_input(path: &Option<PathBuf>) -> Result<Box<dyn BufRead>, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let file =
                File::open(p).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", p.display()) })?;
            Ok(Box::new(BufReader::new(file)))
        }
        _ => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

fn check_t(t: usize) -> Result<(), Failure> {
    if (3..=CAPACITY).contains(&t) {
        Ok(())
    } else {
        Err(Failure::flags(format!("--t must lie in 3..={CAPACITY}, got {t}")))
    }
}

fn emit_json(out: &mut impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)
}

/// Calls `f` on each decoded nonblank input line; decode errors are reported
/// on stderr and turn the exit status into `EXIT_DECODE`.
fn for_each_graph(input: &Option<PathBuf>, mut f: impl FnMut(usize, &str, &Graph) -> io::Result<()>) -> Outcome {
    let mut status = 0;
    for (i, line) in open_input(input)?.lines().enumerate() {
        let line = line?;
        let text = line.trim_end_matches('\r');
        if text.is_empty() {
            continue;
        }
        match graph6::decode(text) {
            Ok(g) => f(i + 1, text, &g)?,
            Err(e) => {
                eprintln!("csat: line {}: {e}", i + 1);
                status = EXIT_DECODE;
            }
        }
    }
    Ok(status)
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    kind: &'static str,
    line: usize,
    #[serde(flatten)]
    certificate: &'a CertificateRecord,
}

fn check(args: &GraphInput) -> Outcome {
    check_t(args.t)?;
    let mut out = io::stdout().lock();
    for_each_graph(&args.input, |line, text, g| {
        let cert = certify(g, args.t).expect("t validated");
        let mut record = CertificateRecord::new(g, &cert);
        record.g6 = text.to_string();
        match args.format {
            Format::Jsonl => emit_json(&mut out, &CheckRecord { kind: "certificate", line, certificate: &record }),
            Format::Human => {
                let counts: Vec<String> =
                    cert.non_edge_counts.iter().map(|e| format!("{}-{}:{}", e.u, e.v, e.count)).collect();
                let mut detail = format!("n={} t={} non-edges={}", cert.n, cert.t, counts.len());
                if cert.trivial {
                    detail.push_str(" trivial");
                }
                if let Some(w) = &cert.target_witness {
                    detail.push_str(&format!(" contains C{} at {w:?}", args.t));
                }
                if !counts.is_empty() {
                    detail.push_str(&format!(" counts [{}]", counts.join(" ")));
                }
                writeln!(out, "{text}\t{}\t{detail}", cert.verdict)
            }
        }
    })
}

#[derive(Serialize)]
struct AuditRecord<'a> {
    kind: &'static str,
    line: usize,
    g6: &'a str,
    t: usize,
    all_passed: bool,
    audit: &'a csat_core::LemmaReport,
}

fn audit(args: &GraphInput) -> Outcome {
    check_t(args.t)?;
    let mut out = io::stdout().lock();
    for_each_graph(&args.input, |line, text, g| {
        let report = lemma_audit(g, args.t).expect("t validated");
        match args.format {
            Format::Jsonl => emit_json(
                &mut out,
                &AuditRecord {
                    kind: "audit",
                    line,
                    g6: text,
                    t: args.t,
                    all_passed: report.all_passed(),
                    audit: &report,
                },
            ),
            Format::Human => {
                let verdict = if report.all_passed() { "pass" } else { "FAIL" };
                writeln!(out, "{text}\tt={}\t{verdict}", args.t)?;
                for e in &report.entries {
                    let status = match (e.applicable, e.passed) {
                        (false, _) => "n/a",
                        (true, true) => "pass",
                        (true, false) if e.established => "FAIL",
                        (true, false) => "FAIL (unestablished)",
                    };
                    match &e.witness {
                        Some(w) => writeln!(out, "  {:<34} {status} {w:?}", e.name)?,
                        None => writeln!(out, "  {:<34} {status}", e.name)?,
                    }
                }
                Ok(())
            }
        }
    })
}

fn search(args: &SearchArgs) -> Outcome {
    let filter_mode = args.mode == ModeArg::Filter;
    if !filter_mode && args.input.is_some() {
        return Err(Failure::flags("an input file is only read in filter mode (--mode filter)"));
    }
    if !filter_mode && args.dedup {
        return Err(Failure::flags("--dedup applies only to filter mode"));
    }
    if args.oracle && args.prune {
        return Err(Failure::flags("--oracle and --prune are mutually exclusive"));
    }
    let (n_min, n_max) = if filter_mode {
        (args.n_min.unwrap_or(1), args.n_max.unwrap_or(CAPACITY))
    } else {
        (args.n_min.unwrap_or(args.t), args.n_max.unwrap_or(DEFAULT_N_MAX))
    };
    let mut config = SearchConfig::new(args.t, n_min, n_max);
    config.mode = if filter_mode { Mode::Filter } else { Mode::Generate };
    config.prune = !args.no_prune;
    config.oracle_mode = args.oracle;
    config.workers = args.workers;
    config.dedup = args.dedup;
    if args.biconnected_only {
        config = config.biconnected();
    }
    execute(&config, &args.input, args.format)
}

fn filter(args: &FilterArgs) -> Outcome {
    let mut config = SearchConfig::new(args.t, args.n_min, args.n_max);
    config.mode = Mode::Filter;
    config.dedup = args.dedup;
    if args.biconnected_only {
        config = config.biconnected();
    }
    execute(&config, &args.input, args.format)
}

fn execute(config: &SearchConfig, input: &Option<PathBuf>, format: Format) -> Outcome {
    config.validate().map_err(Failure::flags)?;
    let outcome = match config.mode {
        Mode::Generate => enumerate(config),
        Mode::Filter => filter_stream(config, open_input(input)?),
    }
    .map_err(Failure::flags)?;

    let mut status = 0;
    for entry in outcome.decode_errors() {
        if let InputOutcome::DecodeError(e) = &entry.outcome {
            eprintln!("csat: line {}: {e}", entry.line);
        }
        status = EXIT_DECODE;
    }
    report(config, &outcome, format)?;
    let violations = outcome.invariant_violations();
    for v in &violations {
        eprintln!("csat: invariant violation: {v}");
    }
    if !violations.is_empty() {
        status = EXIT_INVARIANT;
    }
    Ok(status)
}

fn report(config: &SearchConfig, outcome: &SearchOutcome, format: Format) -> io::Result<()> {
    let mut out = io::stdout().lock();
    let summary = outcome.summary(config);
    let groups = [("certified", &outcome.certified), ("trivial", &outcome.trivial)];
    match format {
        Format::Jsonl => {
            for (kind, graphs) in groups {
                for c in graphs.iter() {
                    emit_json(&mut out, &c.record(kind))?;
                }
            }
            emit_json(&mut out, &summary)
        }
        Format::Human => {
            for (kind, graphs) in groups {
                for c in graphs.iter() {
                    let line = c.line.map(|l| format!("\tline {l}")).unwrap_or_default();
                    let audit = if c.audit.all_passed() { "audit pass" } else { "audit FAIL" };
                    writeln!(out, "{kind}\tn={}\t{}\t{}\t{audit}{line}", c.n(), c.form, c.certificate.verdict)?;
                }
            }
            let range = format!("n={}..{}", summary.n_min, summary.n_max);
            let rules = if summary.rules.is_empty() { "none".to_string() } else { summary.rules.join(", ") };
            writeln!(
                out,
                "summary\tt={} {range} {} {}\tvisited {} {:?}\texamined {}\tpruned {}\tcertified {}\ttrivial {}",
                summary.t,
                format!("{:?}", summary.mode).to_lowercase(),
                format!("{:?}", summary.connectivity).to_lowercase(),
                summary.visited,
                summary.visited_by_order,
                summary.examined,
                summary.pruned,
                summary.certified,
                summary.trivial
            )?;
            writeln!(out, "rules\t{rules}")?;
            if summary.n_bound_is_search_limit {
                writeln!(out, "note\tn <= {} is a chosen search limit, not a proven bound", summary.n_max)?;
            }
            if summary.decode_errors > 0 {
                writeln!(out, "decode errors\t{}", summary.decode_errors)?;
            }
            Ok(())
        }
    }
}

fn gen(family: &Family) -> Outcome {
    let g = match *family {
        Family::Friendship { k } => families::friendship(k),
        Family::Cycle { n } => families::cycle(n),
        Family::Path { n } => families::path(n),
        Family::Complete { n } => families::complete(n),
        Family::Star { m } => families::star(m),
        Family::H { m, l } => HPattern::new(m, l).and_then(families::h_pattern),
        Family::Petersen => Ok(families::petersen()),
    }
    .map_err(Failure::flags)?;
    let text = graph6::encode(&g).map_err(Failure::flags)?;
    writeln!(io::stdout(), "{text}")?;
    Ok(0)
}

fn paths(args: &PathsArgs) -> Outcome {
    let g = graph6::decode(&args.graph).map_err(|e| Failure { code: EXIT_DECODE, message: e.to_string() })?;
    let count = count_paths_between(&g, args.u, args.v, args.k).map_err(Failure::flags)?;
    writeln!(io::stdout(), "{count}")?;
    Ok(0)
}
