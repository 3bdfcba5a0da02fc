//! Command implementations behind the `repverify` binary.
//!
//! Every command returns a [`CommandOutput`] instead of printing, so the
//! binary and the tests share one code path. Exit codes: 0 success, 1
//! verification failure, 2 usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use repverify::apps::{interleave, strings_equal, StringPair};
use repverify::builder::build_algorithm;
use repverify::document;
use repverify::linalg::{SquareMatrix, MATRIX_TOL};
use repverify::oracle::{classical_verify_input, sensitivity, BooleanFunction, TruthTableDocument};
use repverify::query::{check_exact, check_exact_parallel, compute, run, QueryAlgorithm, QueryEntry};
use repverify::BitString;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "repverify", version, about = "Exact N/2-query verifier for the (2,1) repetition code")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the VERIFY_N algorithm and dump it.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one input and print the final state (or every state with --trace).
    Run {
        #[arg(long, required_unless_present = "algorithm", conflicts_with = "algorithm")]
        n: Option<usize>,
        /// Load the algorithm from a JSON document instead of building it.
        #[arg(long)]
        algorithm: Option<PathBuf>,
        #[arg(long)]
        input: String,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check exactness against VERIFY_N on every input.
    Verify {
        #[arg(long, required_unless_present = "algorithm", conflicts_with = "algorithm")]
        n: Option<usize>,
        #[arg(long)]
        algorithm: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sensitivity of VERIFY_N, or of a truth table given with --function.
    Sensitivity {
        #[arg(long, required_unless_present = "function", conflicts_with = "function")]
        n: Option<usize>,
        #[arg(long)]
        function: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the classical pair-scanning decision tree on one input.
    Classical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two bit strings are equal with the quantum algorithm.
    Equal {
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a stored algorithm against a function: `verify` or a truth-table JSON path.
    Check {
        #[arg(long)]
        algorithm: PathBuf,
        #[arg(long)]
        function: String,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: u8,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { stdout, ..Default::default() }
    }
}

type CmdResult = Result<CommandOutput, String>;

pub fn execute(command: Command) -> CommandOutput {
    let result = match command {
        Command::Build { n, format, out } => cmd_build(n, format, out.as_deref()),
        Command::Run { n, algorithm, input, trace, json } => {
            cmd_run(n, algorithm.as_deref(), &input, trace, json)
        }
        Command::Verify { n, algorithm, parallel, json } => {
            cmd_verify(n, algorithm.as_deref(), parallel, json)
        }
        Command::Sensitivity { n, function, json } => cmd_sensitivity(n, function.as_deref(), json),
        Command::Classical { n, input, json } => cmd_classical(n, &input, json),
        Command::Equal { y, z, json } => cmd_equal(&y, &z, json),
        Command::Check { algorithm, function, parallel, json } => {
            cmd_check(&algorithm, &function, parallel, json)
        }
    };
    result.unwrap_or_else(|message| CommandOutput {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        exit_code: EXIT_USAGE,
    })
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn to_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// Fixed six-decimal rendering; tiny values print as zero rather than `-0.000000`.
fn fmt_amp(x: f64) -> String {
    if x.abs() < 5e-7 {
        "0.000000".to_string()
    } else {
        format!("{x:.6}")
    }
}

fn fmt_vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| fmt_amp(*x)).collect();
    format!("({})", parts.join(", "))
}

fn parse_bits(text: &str) -> Result<BitString, String> {
    text.parse().map_err(err)
}

fn load_algorithm(path: &Path) -> Result<(QueryAlgorithm, Option<String>), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let alg = document::load(&text).map_err(err)?;
    let warning = alg
        .check_unitary(MATRIX_TOL)
        .err()
        .map(|e| format!("warning: {}: {e}\n", path.display()));
    Ok((alg, warning))
}

fn algorithm_from(n: Option<usize>, path: Option<&Path>) -> Result<(QueryAlgorithm, Option<String>), String> {
    match (n, path) {
        (_, Some(path)) => load_algorithm(path),
        (Some(n), None) => Ok((build_algorithm(n).map_err(err)?, None)),
        (None, None) => Err("either --n or --algorithm is required".into()),
    }
}

pub fn cmd_build(n: usize, format: Format, out: Option<&Path>) -> CmdResult {
    let alg = build_algorithm(n).map_err(err)?;
    let text = match format {
        Format::Json => {
            let mut text = document::dump(&alg).map_err(err)?;
            text.push('\n');
            text
        }
        Format::Text => render_algorithm(&alg),
    };
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(CommandOutput::ok(String::new()))
        }
        None => Ok(CommandOutput::ok(text)),
    }
}

fn render_matrix(out: &mut String, name: &str, m: &SquareMatrix) {
    writeln!(out, "{name} =").unwrap();
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| format!("{:>9}", fmt_amp(m.get(i, j)))).collect();
        writeln!(out, "  [{}]", row.join(" ")).unwrap();
    }
}

fn render_algorithm(alg: &QueryAlgorithm) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}, queries = {}, dim = {}", alg.n_vars(), alg.t_queries(), alg.dim()).unwrap();
    for (i, stage) in alg.stages().iter().enumerate() {
        render_matrix(&mut out, &format!("U{}", i + 1), &stage.unitary);
        let diag: Vec<String> = stage
            .query
            .entries()
            .iter()
            .map(|e| match e {
                QueryEntry::Fixed => "1".to_string(),
                QueryEntry::Var(k) => format!("(-1)^x{k}"),
            })
            .collect();
        writeln!(out, "Q{} = diag({})", i + 1, diag.join(", ")).unwrap();
    }
    render_matrix(&mut out, "U_final", alg.final_unitary());
    writeln!(out, "start = {}", fmt_vector(alg.start().amplitudes())).unwrap();
    let labels: Vec<&str> = alg.labels().iter().map(|&l| if l { "1" } else { "0" }).collect();
    writeln!(out, "labels = ({})", labels.join(", ")).unwrap();
    out
}

fn state_names(t: usize) -> Vec<String> {
    let mut names = vec!["start".to_string()];
    for i in 1..=t {
        names.push(format!("after U{i}"));
        names.push(format!("after Q{i}"));
    }
    names.push("final".to_string());
    names
}

pub fn cmd_run(n: Option<usize>, algorithm: Option<&Path>, input: &str, trace: bool, json: bool) -> CmdResult {
    let (alg, warning) = algorithm_from(n, algorithm)?;
    let input = parse_bits(input)?;
    let states = run(&alg, &input).map_err(err)?;
    let outcome = compute(&alg, &input).map_err(err)?;
    let names = state_names(alg.t_queries());
    let stdout = if json {
        let mut value = json!({
            "n": alg.n_vars(),
            "input": input,
            "queries": alg.t_queries(),
            "final_state": states.final_state().amplitudes(),
            "output": u8::from(outcome.output),
            "probability": outcome.probability,
            "exact": outcome.exact,
        });
        if trace {
            value["states"] = names
                .iter()
                .zip(&states.states)
                .map(|(name, s)| json!({ "label": name, "amplitudes": s.amplitudes() }))
                .collect();
        }
        to_json(&value)
    } else {
        let mut out = String::new();
        writeln!(out, "input {input}").unwrap();
        if trace {
            for (name, s) in names.iter().zip(&states.states) {
                writeln!(out, "{name:>10}: {}", fmt_vector(s.amplitudes())).unwrap();
            }
        } else {
            writeln!(out, "final: {}", fmt_vector(states.final_state().amplitudes())).unwrap();
        }
        writeln!(
            out,
            "result: {} (probability {:.6}{})",
            u8::from(outcome.output),
            outcome.probability,
            if outcome.exact { "" } else { ", not exact" }
        )
        .unwrap();
        out
    };
    Ok(CommandOutput { stdout, stderr: warning.unwrap_or_default(), exit_code: EXIT_OK })
}

fn exactness_output(
    alg: &QueryAlgorithm,
    f: &BooleanFunction,
    function_name: &str,
    parallel: bool,
    json: bool,
    warning: Option<String>,
) -> CmdResult {
    let report = if parallel { check_exact_parallel(alg, f) } else { check_exact(alg, f) }.map_err(err)?;
    let stdout = if json {
        to_json(&json!({
            "function": function_name,
            "n": alg.n_vars(),
            "queries": alg.t_queries(),
            "exact": report.exact,
            "inputs_tested": report.inputs_tested,
            "min_correct_probability": report.min_correct_probability,
            "counterexample": report.counterexample,
        }))
    } else {
        let mut out = String::new();
        writeln!(out, "{function_name}: {}", if report.exact { "PASS" } else { "FAIL" }).unwrap();
        writeln!(out, "inputs tested: {}", report.inputs_tested).unwrap();
        writeln!(out, "queries: {}", alg.t_queries()).unwrap();
        writeln!(out, "min correct-output probability: {:.6}", report.min_correct_probability).unwrap();
        if let Some(x) = &report.counterexample {
            writeln!(out, "counterexample: {x}").unwrap();
        }
        out
    };
    Ok(CommandOutput {
        stdout,
        stderr: warning.unwrap_or_default(),
        exit_code: if report.exact { EXIT_OK } else { EXIT_FAILED },
    })
}

pub fn cmd_verify(n: Option<usize>, algorithm: Option<&Path>, parallel: bool, json: bool) -> CmdResult {
    let (alg, warning) = algorithm_from(n, algorithm)?;
    let f = BooleanFunction::verify(alg.n_vars()).map_err(err)?;
    exactness_output(&alg, &f, &format!("VERIFY_{}", alg.n_vars()), parallel, json, warning)
}

fn load_truth_table(path: &Path) -> Result<BooleanFunction, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc: TruthTableDocument = serde_json::from_str(&text).map_err(err)?;
    doc.into_function().map_err(err)
}

pub fn cmd_check(algorithm: &Path, function: &str, parallel: bool, json: bool) -> CmdResult {
    let (alg, warning) = load_algorithm(algorithm)?;
    let (f, name) = if function == "verify" {
        (BooleanFunction::verify(alg.n_vars()).map_err(err)?, format!("VERIFY_{}", alg.n_vars()))
    } else {
        (load_truth_table(Path::new(function))?, function.to_string())
    };
    exactness_output(&alg, &f, &name, parallel, json, warning)
}

pub fn cmd_sensitivity(n: Option<usize>, function: Option<&Path>, json: bool) -> CmdResult {
    let (f, name) = match (n, function) {
        (_, Some(path)) => (load_truth_table(path)?, path.display().to_string()),
        (Some(n), None) => (BooleanFunction::verify(n).map_err(err)?, format!("VERIFY_{n}")),
        (None, None) => return Err("either --n or --function is required".into()),
    };
    let (value, witness) = sensitivity(&f).map_err(err)?;
    let stdout = if json {
        to_json(&json!({ "function": name, "arity": f.arity(), "sensitivity": value, "witness": witness }))
    } else {
        format!("sensitivity of {name}: {value}\nwitness: {witness}\n")
    };
    Ok(CommandOutput::ok(stdout))
}

pub fn cmd_classical(n: usize, input: &str, json: bool) -> CmdResult {
    let input = parse_bits(input)?;
    if input.len() != n {
        return Err(format!("input has {} bits, expected {n}", input.len()));
    }
    let report = classical_verify_input(&input).map_err(err)?;
    let stdout = if json {
        to_json(&json!({
            "n": n,
            "input": input,
            "output": u8::from(report.output),
            "queries_used": report.queries_used,
            "query_sequence": report.query_sequence,
        }))
    } else {
        let seq: Vec<String> = report.query_sequence.iter().map(|k| format!("x{k}")).collect();
        format!(
            "output: {}\nqueries: {}\nsequence: {}\n",
            u8::from(report.output),
            report.queries_used,
            seq.join(" ")
        )
    };
    Ok(CommandOutput::ok(stdout))
}

pub fn cmd_equal(y: &str, z: &str, json: bool) -> CmdResult {
    let pair = StringPair::new(parse_bits(y)?, parse_bits(z)?).map_err(err)?;
    let equal = strings_equal(&pair).map_err(err)?;
    let stdout = if json {
        to_json(&json!({
            "y": pair.y(),
            "z": pair.z(),
            "word": interleave(&pair),
            "equal": equal,
            "queries": pair.len(),
        }))
    } else {
        format!("{}\n", if equal { "equal" } else { "not equal" })
    };
    Ok(CommandOutput::ok(stdout))
}
