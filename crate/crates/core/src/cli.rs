//! The `assocarray` command line.
//!
//! Exit codes: 0 on success (and for `validate`, a certified algebra), 1 for
//! a negative domain result (failed criterion, no witness, inconsistent
//! document array), 2 for usage and input errors. Data goes to standard
//! output or `--output`; warnings and summaries go to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{is_builtin_name, make_builtin, Algebra, BuiltinParams};
use crate::array::{AssociativeArray, MatmulOptions};
use crate::criteria::{self, CheckConfig, CriteriaError, CriteriaReport, Criterion};
use crate::graph::{check_word_consistency, document_adjacency, GraphError};
use crate::io;

#[derive(Debug, Parser)]
#[command(
    name = "assocarray",
    version,
    about = "Adjacency arrays from incidence arrays over pluggable algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the adjacency triples `E_outᵀ ⊕.⊗ E_in` of an edge list.
    Adjacency(GraphArgs),
    /// Write the reverse-graph adjacency triples `E_inᵀ ⊕.⊗ E_out`.
    ReverseAdjacency(GraphArgs),
    /// Check an algebra's identity laws and the three adjacency criteria.
    Validate(ValidateArgs),
    /// Build and run the witness graph for a failed criterion.
    Witness(WitnessArgs),
    /// Write `Eᵀ ∪.∩ E` for a square array of shared-word sets.
    DocAdjacency(DocArgs),
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Builtin algebra name or path to a finite-algebra file.
    #[arg(long)]
    pub algebra: String,
    /// Comma-separated token universe for `powerset`.
    #[arg(long, value_delimiter = ',')]
    pub universe: Option<Vec<String>>,
    /// Number of levels for `max_min_chain`.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Seed for sampled criteria checks on infinite carriers.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Edge-list file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Evaluate every implicit zero term even when the algebra allows
    /// skipping them.
    #[arg(long)]
    pub force_full_matmul: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Criterion number.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub criterion: u8,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DocArgs {
    /// Triple file of token sets.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Terminates a command with exit code 1 or 2 and a message for standard
/// error.
struct Exit {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Exit {
    Exit {
        code: 2,
        message: message.into(),
    }
}

fn negative(message: impl Into<String>) -> Exit {
    Exit {
        code: 1,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(&cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(Exit { code, message }) => {
            let _ = writeln!(stderr, "{message}");
            code
        }
    }
}

fn dispatch(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Exit> {
    match cmd {
        Command::Adjacency(args) => cmd_adjacency(args, false, stdout, stderr),
        Command::ReverseAdjacency(args) => cmd_adjacency(args, true, stdout, stderr),
        Command::Validate(args) => cmd_validate(args, stdout),
        Command::Witness(args) => cmd_witness(args, stdout),
        Command::DocAdjacency(args) => cmd_doc_adjacency(args, stdout, stderr),
    }
}

fn read_input(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path)
        .map_err(|e| usage(format!("error: cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Exit> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("error: cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("error: cannot write output: {e}"))),
    }
}

/// Resolves `--algebra` as a builtin name first, then as a file path.
pub fn resolve_algebra(args: &AlgebraArgs) -> Result<Algebra, String> {
    if is_builtin_name(&args.algebra) {
        let params = BuiltinParams {
            levels: args.levels,
            universe: args.universe.clone(),
        };
        return make_builtin(&args.algebra, &params).map_err(|e| e.to_string());
    }
    let path = Path::new(&args.algebra);
    if !path.is_file() {
        return Err(format!(
            "unknown algebra {:?}: not a builtin name or a readable file",
            args.algebra
        ));
    }
    if args.levels.is_some() || args.universe.is_some() {
        return Err("--levels and --universe only apply to builtin algebras".into());
    }
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec = io::parse_finite_algebra(&text).map_err(|d| format!("{}: {d}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| args.algebra.clone());
    spec.to_algebra_named(name).map_err(|e| e.to_string())
}

fn algebra_and_report(args: &AlgebraArgs) -> Result<(Algebra, CriteriaReport), Exit> {
    let alg = resolve_algebra(args).map_err(|m| usage(format!("error: {m}")))?;
    let cfg = CheckConfig {
        seed: args.seed,
        ..CheckConfig::default()
    };
    let report = criteria::validate_with(&alg, &cfg);
    Ok((alg, report))
}

/// One warning per check that failed or passed only by sampling.
fn certification_warnings(report: &CriteriaReport) -> Vec<String> {
    let mut warnings = Vec::new();
    if let Some(f) = report.identity.failure() {
        warnings.push(format!(
            "warning: {}: identity laws fail: {f}",
            report.algebra
        ));
    }
    for c in Criterion::ALL {
        let v = report.verdict(c);
        match v.failure() {
            Some(f) => warnings.push(format!("warning: {}: {c} fail: {f}", report.algebra)),
            None if !v.conclusive_pass() => warnings.push(format!(
                "warning: {}: {c} passed on samples only",
                report.algebra
            )),
            None => {}
        }
    }
    warnings
}

fn cmd_adjacency(
    args: &GraphArgs,
    reverse: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Exit> {
    let (alg, report) = algebra_and_report(&args.algebra)?;
    let text = read_input(&args.input)?;
    let graph = io::parse_edge_list(&text, &alg)
        .map_err(|d| usage(format!("error: {}: {d}", args.input.display())))?;
    let pair = graph
        .incidence_arrays(&alg)
        .map_err(|e| usage(format!("error: {e}")))?;
    for w in certification_warnings(&report) {
        let _ = writeln!(stderr, "{w}");
    }
    let zero_skip = if args.force_full_matmul {
        None
    } else {
        report.zero_skip()
    };
    let opts = MatmulOptions {
        zero_skip: zero_skip.as_ref(),
        parallel: true,
        ..Default::default()
    };
    let adjacency = if reverse {
        pair.reverse_adjacency_with(&alg, &opts)
    } else {
        pair.adjacency_with(&alg, &opts)
    };
    emit(
        args.output.as_deref(),
        &io::serialize_triples(&adjacency),
        stdout,
    )?;
    let _ = writeln!(
        stderr,
        "vertices: {}, edges: {}, nonzeros: {}",
        graph.vertices().len(),
        graph.edges().len(),
        adjacency.nnz()
    );
    Ok(())
}

fn cmd_validate(args: &ValidateArgs, stdout: &mut dyn Write) -> Result<(), Exit> {
    let (_, report) = algebra_and_report(&args.algebra)?;
    let mut text = format!("{report}\n");
    for line in report.machine_lines() {
        text.push_str(&line);
        text.push('\n');
    }
    emit(args.output.as_deref(), &text, stdout)?;
    if report.certified {
        Ok(())
    } else {
        Err(negative(format!("{}: not certified", report.algebra)))
    }
}

fn section(out: &mut String, title: &str, body: &str) {
    out.push_str("# ");
    out.push_str(title);
    out.push('\n');
    out.push_str(body);
}

fn pairs_text(coords: &std::collections::BTreeSet<crate::array::Coord>) -> String {
    coords.iter().map(|(r, c)| format!("{r}\t{c}\n")).collect()
}

fn cmd_witness(args: &WitnessArgs, stdout: &mut dyn Write) -> Result<(), Exit> {
    let (alg, report) = algebra_and_report(&args.algebra)?;
    let criterion = Criterion::from_number(args.criterion).expect("clap restricts the range");
    let wc = match criteria::witness_from_report(&alg, &report, criterion) {
        Ok(wc) => wc,
        Err(CriteriaError::NoWitness { .. }) => {
            return Err(negative(format!(
                "{}: {criterion} passes; no witness exists from checker output",
                alg.name()
            )))
        }
        Err(e) => return Err(usage(format!("error: {e}"))),
    };
    let mismatch = criteria::demonstrate(&wc, &alg).map_err(|e| usage(format!("error: {e}")))?;

    let mut out = String::new();
    section(
        &mut out,
        &format!(
            "witness: {criterion} ({}) over {}",
            criterion.description(),
            alg.name()
        ),
        "",
    );
    section(&mut out, &format!("graph: {}", wc.description), "");
    section(&mut out, "edge list", &io::serialize_edge_list(&wc.graph));
    if !wc.isolated.is_empty() {
        let names: Vec<&str> = wc.isolated.iter().map(|k| k.as_str()).collect();
        section(
            &mut out,
            &format!("isolated vertices: {}", names.join(",")),
            "",
        );
    }
    section(
        &mut out,
        "adjacency",
        &io::serialize_triples(&mismatch.adjacency),
    );
    section(&mut out, "oracle", &pairs_text(&mismatch.oracle));
    section(&mut out, "mismatch", &format!("{mismatch}\n"));
    emit(args.output.as_deref(), &out, stdout)
}

fn cmd_doc_adjacency(
    args: &DocArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Exit> {
    let text = read_input(&args.input)?;
    let (e, _) = io::parse_document_triples(&text)
        .map_err(|d| usage(format!("error: {}: {d}", args.input.display())))?;
    if let Some(v) = check_word_consistency(&e).map_err(|err| usage(format!("error: {err}")))? {
        return Err(negative(format!("inconsistent: {v}")));
    }
    let adjacency: AssociativeArray = match document_adjacency(&e) {
        Ok(a) => a,
        Err(GraphError::NotSquare) => {
            return Err(usage(
                "error: document array is not square: row and column keysets differ",
            ))
        }
        Err(err) => return Err(usage(format!("error: {err}"))),
    };
    emit(
        args.output.as_deref(),
        &io::serialize_triples(&adjacency),
        stdout,
    )?;
    let _ = writeln!(
        stderr,
        "documents: {}, nonzeros: {}",
        adjacency.row_keys().len(),
        adjacency.nnz()
    );
    Ok(())
}
