use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use planecolor_core::closure::{ClosureConfig, ClosureError};
use planecolor_core::coloring::{ConstructionError, Mutant};
use planecolor_core::corpus::CorpusSpec;
use planecolor_core::io::{coloring_csv, format_points, parse_points, registry_jsonl, ColoringDoc};
use planecolor_core::pipeline::{execute, verify, InputSource, Mode, Outputs, Report, RunConfig, Verification};
use planecolor_core::svg::emit_svg;
use planecolor_core::verify::ViolationReport;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "planecolor", version, about = "Exact colorings of plane point sets with no monochromatic right triangle")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a coloring and write the requested dumps.
    Construct(BuildArgs),
    /// Check a JSON coloring dump.
    Verify(VerifyArgs),
    /// Build a coloring and verify it.
    Run(BuildArgs),
    /// Print a generated point set in the input grammar.
    Corpus {
        /// grid:N, random:N:SEED:DENOM, circle:N:SEED or gridcircle:N:M
        spec: CorpusSpec,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Build with one enforcement disabled and verify the result.
    Mutate {
        /// ALL, GAP_RULE, COND_7, COND_12, PHI_CASES or ANTIPODE_GUARD
        #[arg(long)]
        mutant: Mutant,
        #[command(flatten)]
        build: BuildArgs,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Point file (`x,y` per line, `-` for stdin).
    input: Option<String>,
    /// Generate the input instead of reading it.
    #[arg(long, conflicts_with = "input")]
    corpus: Option<CorpusSpec>,
    #[arg(long, default_value_t = 3)]
    max_level: u32,
    /// Derived points over the whole run.
    #[arg(long, default_value_t = 200)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drop repeated input points instead of rejecting them.
    #[arg(long)]
    allow_duplicates: bool,
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    csv: Option<String>,
    #[arg(long)]
    json: Option<String>,
    #[arg(long)]
    dump_registry: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON coloring written by `construct --json`.
    coloring: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Strict diagnostics: points on several prior curves and out-of-scope
    /// COND_11 findings are errors.
    #[arg(long)]
    strict: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_name = "PATH")]
    emit_svg: Option<String>,
    #[arg(long, value_name = "PATH")]
    report: Option<String>,
}

struct Failure {
    code: u8,
    msg: String,
}

fn input_err(msg: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: msg.to_string(),
    }
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_err(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| input_err(format!("{path}: {e}")))
}

fn write_text(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        print!("{text}");
        return Ok(());
    }
    fs::write(Path::new(path), text).map_err(|e| input_err(format!("{path}: {e}")))
}

fn print_verification(v: &Verification) {
    match &v.oracle {
        Some(w) => {
            let ids: Vec<String> = w.points.iter().map(|p| p.id.to_string()).collect();
            println!("oracle: MONO_RIGHT_TRIANGLE points [{}] ({})", ids.join(", "), w.detail);
        }
        None => println!("oracle: no monochromatic right triangle"),
    }
    println!("conditions: {} error(s), {} warning(s)", v.summary.errors, v.summary.warnings);
    for (kind, n) in &v.summary.by_kind {
        println!("  {kind}: {} error(s), {} warning(s)", n.errors, n.warnings);
    }
}

fn violations(v: Option<&Verification>) -> Vec<ViolationReport> {
    let Some(v) = v else { return Vec::new() };
    v.oracle
        .iter()
        .chain(v.reports.iter().filter(|r| r.is_error()))
        .cloned()
        .collect()
}

fn build(args: BuildArgs, mode: Mode) -> Result<u8, Failure> {
    let (input, seeds) = match (&args.corpus, &args.input) {
        (Some(spec), _) => (InputSource::Corpus { spec: *spec }, spec.generate()),
        (None, Some(path)) => {
            let pts = parse_points(&read_text(path)?, args.allow_duplicates).map_err(|e| input_err(format!("{path}: {e}")))?;
            (InputSource::File { path: path.clone() }, pts)
        }
        (None, None) => return Err(input_err("no input: give a point file or --corpus")),
    };
    let cfg = RunConfig {
        input,
        mode,
        closure: ClosureConfig {
            max_level: args.max_level,
            budget: args.budget,
            seed: args.seed,
        },
        strict: args.common.strict,
        allow_duplicates: args.allow_duplicates,
        workers: args.common.workers,
        outputs: Outputs {
            csv: args.csv,
            json: args.json,
            svg: args.common.emit_svg,
            report: args.common.report,
            registry: args.dump_registry,
        },
    };
    let out = execute(&cfg, seeds).map_err(|e| match e {
        ConstructionError::Closure(ClosureError::DuplicateSeed { .. }) => input_err(e),
        e => Failure {
            code: EXIT_INTERNAL,
            msg: e.to_string(),
        },
    })?;
    let run = &out.construction;
    let (state, reg) = (&run.state, &run.registry);
    println!(
        "constructed {} point(s), {} curve(s) over {} level(s) in {:.2?}",
        reg.num_points(),
        reg.num_curves(),
        run.stats.levels.len(),
        run.stats.elapsed
    );
    for l in &run.stats.levels {
        let exhausted = if l.budget_exhausted { " (budget exhausted)" } else { "" };
        println!("  level {}: {} point(s), {} new curve(s){exhausted}", l.level, l.points, l.curves);
    }
    if let Some(v) = &out.verification {
        print_verification(v);
    }
    let o = &cfg.outputs;
    if let Some(p) = &o.csv {
        write_text(p, &coloring_csv(state, reg))?;
    }
    if let Some(p) = &o.json {
        let doc = ColoringDoc::new(state, reg);
        write_text(p, &(serde_json::to_string(&doc).expect("plain data") + "\n"))?;
    }
    if let Some(p) = &o.registry {
        write_text(p, &registry_jsonl(reg))?;
    }
    if let Some(p) = &o.svg {
        write_text(p, &emit_svg(state, reg, &violations(out.verification.as_ref())))?;
    }
    if let Some(p) = &o.report {
        let rep = Report::new(&cfg, reg, Some(&run.stats), out.verification.as_ref());
        write_text(p, &(rep.to_json() + "\n"))?;
    }
    Ok(match &out.verification {
        Some(v) if !v.clean() => EXIT_VIOLATION,
        _ => 0,
    })
}

fn verify_file(args: VerifyArgs) -> Result<u8, Failure> {
    let text = read_text(&args.coloring)?;
    let doc: ColoringDoc = serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", args.coloring)))?;
    let (reg, state) = doc.load().map_err(|e| input_err(format!("{}: {e}", args.coloring)))?;
    let v = verify(&state, &reg, args.common.strict, args.common.workers);
    println!("loaded {} point(s), {} curve(s)", reg.num_points(), reg.num_curves());
    print_verification(&v);
    let cfg = RunConfig {
        input: InputSource::File { path: args.coloring.clone() },
        mode: Mode::Verify,
        closure: ClosureConfig::default(),
        strict: args.common.strict,
        allow_duplicates: false,
        workers: args.common.workers,
        outputs: Outputs {
            svg: args.common.emit_svg.clone(),
            report: args.common.report.clone(),
            ..Outputs::default()
        },
    };
    if let Some(p) = &args.common.emit_svg {
        write_text(p, &emit_svg(&state, &reg, &violations(Some(&v))))?;
    }
    if let Some(p) = &args.common.report {
        write_text(p, &(Report::new(&cfg, &reg, None, Some(&v)).to_json() + "\n"))?;
    }
    Ok(if v.clean() { 0 } else { EXIT_VIOLATION })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Construct(a) => build(a, Mode::Construct),
        Cmd::Run(a) => build(a, Mode::Run),
        Cmd::Mutate { mutant, build: a } => build(a, Mode::Mutate { mutant }),
        Cmd::Verify(a) => verify_file(a),
        Cmd::Corpus { spec, output } => format_points(&spec.generate())
            .map_err(|e| Failure {
                code: EXIT_INTERNAL,
                msg: e.to_string(),
            })
            .and_then(|text| write_text(output.as_deref().unwrap_or("-"), &text))
            .map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
