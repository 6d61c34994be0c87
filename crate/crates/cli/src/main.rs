//! Command-line front door: parse an input link, run the bound pipeline and
//! emit a text or JSON report. Exit codes: 0 success, 1 input error,
//! 2 internal invariant violation.

mod render;

use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use plumb_bounds::bounds::{analyze_braid, analyze_graph, analyze_pd, AnalysisOptions, FpbkPolicy};
use plumb_bounds::braid::{random_connected_word, BraidWord};
use plumb_bounds::catalog;
use plumb_bounds::pd::PdCode;
use plumb_bounds::sign::Sign;
use plumb_bounds::spanning::{alternating_depth_signing, bfs_spanning_tree, check_sign_sum_lemma};
use plumb_bounds::{BoundsReport, EngineError, SeifertGraph};

#[derive(Parser)]
#[command(
    name = "plumb-bounds",
    version,
    about = "Upper bounds for basket, flat plumbing and flat plumbing basket numbers of links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all applicable bounds for one link.
    Bounds(BoundsArgs),
    /// Check the ±1 path sign-sum lemma on random braid closures.
    LemmaCheck(LemmaArgs),
    /// Run the pipeline over several input files, one report each.
    Batch(BatchArgs),
    /// List the built-in fixture links.
    Fixtures(FixturesArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum PolicyArg {
    #[default]
    MinBeta,
    MinBound,
}

impl From<PolicyArg> for FpbkPolicy {
    fn from(p: PolicyArg) -> FpbkPolicy {
        match p {
            PolicyArg::MinBeta => FpbkPolicy::MinBeta,
            PolicyArg::MinBound => FpbkPolicy::MinBound,
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["braid", "pd", "graph", "known"])))]
struct BoundsArgs {
    /// Braid word, whitespace-separated nonzero integers (k = σ_k, -k = σ_k⁻¹).
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Strand count for --braid; inferred from the word when omitted.
    #[arg(long)]
    strands: Option<usize>,
    /// Path to a PD code file (crossings X[a,b,c,d], or the lone marker U).
    #[arg(long)]
    pd: Option<PathBuf>,
    /// Path to a raw induced-graph JSON file {"s":..,"l":..,"edges":[[u,v,sign],..]}.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Name of a built-in fixture (see `fixtures`).
    #[arg(long)]
    known: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    fpbk_policy: PolicyArg,
    /// Minimize the fpbk diagram bound over all spanning trees (min-beta only).
    #[arg(long)]
    exhaustive: bool,
    /// Assert that this diagram's canonical surface attains the link genus.
    #[arg(long)]
    assert_minimal_genus: bool,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

#[derive(Args)]
struct LemmaArgs {
    /// Number of random braid closures to test.
    #[arg(long, default_value_t = 1000)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_strands: usize,
    #[arg(long, default_value_t = 20)]
    max_length: usize,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

#[derive(Args)]
struct BatchArgs {
    /// Input files; kind is sniffed per file (PD, graph JSON, or braid word).
    paths: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    fpbk_policy: PolicyArg,
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    assert_minimal_genus: bool,
}

#[derive(Args)]
struct FixturesArgs {
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

struct CliError {
    code: &'static str,
    message: String,
    exit: u8,
}

impl CliError {
    fn input(code: &'static str, message: String) -> CliError {
        CliError {
            code,
            message,
            exit: 1,
        }
    }

    fn from_engine(err: EngineError) -> CliError {
        CliError {
            code: err.code(),
            message: err.to_string(),
            exit: if err.is_internal() { 2 } else { 1 },
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version land here with a zero exit.
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    let format = match &cli.command {
        Command::Bounds(args) => args.format,
        Command::LemmaCheck(args) => args.format,
        Command::Batch(_) => FormatArg::Json,
        Command::Fixtures(args) => args.format,
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match format {
                FormatArg::Json => {
                    let body = ErrorReport {
                        error: ErrorBody {
                            code: err.code,
                            message: &err.message,
                        },
                    };
                    println!("{}", serde_json::to_string(&body).expect("error serializes"));
                }
                FormatArg::Text => eprintln!("error[{}]: {}", err.code, err.message),
            }
            ExitCode::from(err.exit)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Bounds(args) => run_bounds(args),
        Command::LemmaCheck(args) => run_lemma_check(args),
        Command::Batch(args) => run_batch(args),
        Command::Fixtures(args) => run_fixtures(args),
    }
}

fn options_for(policy: PolicyArg, exhaustive: bool, assert_minimal: bool) -> AnalysisOptions {
    AnalysisOptions {
        fpbk_policy: policy.into(),
        exhaustive,
        assert_minimal_genus: assert_minimal,
        ..AnalysisOptions::default()
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))
}

fn run_bounds(args: BoundsArgs) -> Result<(), CliError> {
    let opts = options_for(args.fpbk_policy, args.exhaustive, args.assert_minimal_genus);
    let report = if let Some(text) = &args.braid {
        let word = BraidWord::parse(text, args.strands)
            .map_err(|e| CliError::input(e.code(), e.to_string()))?;
        analyze_braid(&word, &opts).map_err(CliError::from_engine)?
    } else if let Some(path) = &args.pd {
        let code = PdCode::parse(&read_file(path)?)
            .map_err(|e| CliError::input(e.code(), e.to_string()))?;
        analyze_pd(&code, &opts).map_err(CliError::from_engine)?
    } else if let Some(path) = &args.graph {
        let graph = SeifertGraph::parse_raw_json(&read_file(path)?)
            .map_err(|e| CliError::input(e.code(), e.to_string()))?;
        analyze_graph(&graph, &opts).map_err(CliError::from_engine)?
    } else {
        let name = args.known.as_deref().expect("clap enforces one input");
        let fixture = catalog::find_fixture(name).ok_or_else(|| {
            CliError::input("unknown-fixture", format!("no fixture named `{name}`"))
        })?;
        let mut report = match fixture.braid_word() {
            Some(word) => analyze_braid(&word, &opts).map_err(CliError::from_engine)?,
            None => {
                analyze_graph(&fixture.seifert_graph(), &opts).map_err(CliError::from_engine)?
            }
        };
        report.input.fixture = Some(fixture.name.clone());
        report
    };
    emit_report(&report, args.format);
    Ok(())
}

fn emit_report(report: &BoundsReport, format: FormatArg) {
    match format {
        FormatArg::Json => {
            println!("{}", serde_json::to_string(report).expect("report serializes"))
        }
        FormatArg::Text => print!("{}", render::render_text(report, use_color())),
    }
}

fn use_color() -> bool {
    std::env::var_os("PLUMB_BOUNDS_NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

#[derive(Serialize)]
struct LemmaSummary {
    total: usize,
    passed: usize,
    seed: u64,
}

fn run_lemma_check(args: LemmaArgs) -> Result<(), CliError> {
    if args.max_strands < 2 {
        return Err(CliError::input(
            "lemma-config",
            "--max-strands must be at least 2".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut passed = 0usize;
    for _ in 0..args.random {
        let word = random_connected_word(&mut rng, args.max_strands, args.max_length);
        let g = word.closure_seifert_graph();
        let tree = bfs_spanning_tree(&g, 1).expect("generator rejects disconnected closures");
        let ok = [Sign::Plus, Sign::Minus].iter().all(|&top| {
            let signing = alternating_depth_signing(&tree, top);
            check_sign_sum_lemma(&g, &tree, &signing)
        });
        if ok {
            passed += 1;
        }
    }
    let summary = LemmaSummary {
        total: args.random,
        passed,
        seed: args.seed,
    };
    match args.format {
        FormatArg::Json => println!("{}", serde_json::to_string(&summary).expect("serializes")),
        FormatArg::Text => println!("{}/{} passed (seed {})", passed, args.random, args.seed),
    }
    if passed != args.random {
        return Err(CliError {
            code: "internal-invariant",
            message: format!("{} of {} closures violated the sign-sum lemma", args.random - passed, args.random),
            exit: 2,
        });
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(untagged)]
enum BatchItem {
    Ok {
        path: String,
        report: Box<BoundsReport>,
    },
    Err {
        path: String,
        error: OwnedErrorBody,
    },
}

#[derive(Serialize)]
struct OwnedErrorBody {
    code: String,
    message: String,
}

fn sniff_and_analyze(text: &str, opts: &AnalysisOptions) -> Result<BoundsReport, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let graph = SeifertGraph::parse_raw_json(text)
            .map_err(|e| CliError::input(e.code(), e.to_string()))?;
        return analyze_graph(&graph, opts).map_err(CliError::from_engine);
    }
    let first = trimmed.split_ascii_whitespace().next().unwrap_or("");
    if first == "U" || first.starts_with("X[") {
        let code = PdCode::parse(text).map_err(|e| CliError::input(e.code(), e.to_string()))?;
        return analyze_pd(&code, opts).map_err(CliError::from_engine);
    }
    let word =
        BraidWord::parse(text, None).map_err(|e| CliError::input(e.code(), e.to_string()))?;
    analyze_braid(&word, opts).map_err(CliError::from_engine)
}

fn run_batch(args: BatchArgs) -> Result<(), CliError> {
    let opts = options_for(args.fpbk_policy, args.exhaustive, args.assert_minimal_genus);
    let items: Vec<BatchItem> = args
        .paths
        .iter()
        .map(|path| {
            let display = path.display().to_string();
            let outcome = read_file(path).and_then(|text| sniff_and_analyze(&text, &opts));
            match outcome {
                Ok(report) => BatchItem::Ok {
                    path: display,
                    report: Box::new(report),
                },
                Err(err) => BatchItem::Err {
                    path: display,
                    error: OwnedErrorBody {
                        code: err.code.to_string(),
                        message: err.message,
                    },
                },
            }
        })
        .collect();
    println!("{}", serde_json::to_string(&items).expect("batch serializes"));
    Ok(())
}

fn run_fixtures(args: FixturesArgs) -> Result<(), CliError> {
    let fixtures = catalog::load_fixtures();
    match args.format {
        FormatArg::Json => {
            println!("{}", serde_json::to_string(&fixtures).expect("serializes"))
        }
        FormatArg::Text => {
            println!(
                "{:<12} {:<6} {:>3} {:>3} {:>3} {:>6}  best (bk, fp, fpbk)",
                "name", "kind", "s", "c", "l", "genus"
            );
            for fixture in &fixtures {
                let g = fixture.seifert_graph();
                let kind = if fixture.braid.is_some() { "braid" } else { "graph" };
                println!(
                    "{:<12} {:<6} {:>3} {:>3} {:>3} {:>6}  ({}, {}, {})",
                    fixture.name,
                    kind,
                    g.s,
                    g.c(),
                    g.l,
                    fixture.genus,
                    fixture.expected.best.bk,
                    fixture.expected.best.fp,
                    fixture.expected.best.fpbk,
                );
            }
        }
    }
    Ok(())
}
