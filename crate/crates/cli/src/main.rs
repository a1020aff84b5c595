//! `ocformal`: enumerate graph classes, run verification campaigns and
//! evaluate graph sums from declarative instance files.

mod campaigns;
mod eval;
mod instance;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ocformal::exec::{with_jobs, Exec};
use ocformal::graphs::{enumerate_graphs, GraphClass};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use campaigns::CampaignReport;
use instance::{InstanceFile, Resolved, SCHEMA_VERSION};

const DEFAULT_INSTANCE: &str = include_str!("../instances/default.json");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid instance file: {0}")]
    Schema(#[from] serde_json::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "ocformal",
    version,
    about = "Graph-sum formality checks with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List connected marked graphs up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Run the verification campaigns of an instance file.
    Verify(VerifyArgs),
    /// Evaluate `K(x, ...)` or `F(x*w, ...)` on named monomials.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Instance file; the bundled default instance when absent.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    window_words: Option<usize>,
    #[arg(long)]
    window_gamma: Option<u32>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for data-parallel campaigns.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: usize,
    /// Per-vertex `valency:defect`, comma separated.
    #[arg(long)]
    profile: Option<String>,
    /// Keep only stable graphs.
    #[arg(long)]
    stable_graphs: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Campaign kind or id; every campaign when absent.
    #[arg(long)]
    campaign: Option<String>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    /// Kernel used by the expression.
    #[arg(long)]
    kernel: String,
    /// Open-sector presentation, required for `F(...)`.
    #[arg(long)]
    open: Option<String>,
    expression: String,
}

#[derive(Serialize)]
struct Header<'a> {
    tool: &'static str,
    version: &'static str,
    schema_version: u32,
    command: &'a str,
}

fn header(command: &str) -> Header<'_> {
    Header {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        schema_version: SCHEMA_VERSION,
        command,
    }
}

fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn write_report(out: Option<&PathBuf>, report: &Value) -> Result<(), CliError> {
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

fn load(common: &Common) -> Result<(Resolved, Vec<u8>), CliError> {
    let bytes = match &common.file {
        Some(p) => std::fs::read(p).map_err(|source| CliError::Read {
            path: p.clone(),
            source,
        })?,
        None => DEFAULT_INSTANCE.as_bytes().to_vec(),
    };
    let file: InstanceFile = serde_json::from_slice(&bytes)?;
    let r = Resolved::new(file, common.seed, common.window_words, common.window_gamma)?;
    Ok((r, bytes))
}

fn parse_profile(text: &str) -> Result<Vec<(usize, u32)>, CliError> {
    text.split(',')
        .map(|item| {
            let (v, d) = item.trim().split_once(':').ok_or_else(|| {
                CliError::Input(format!("profile entry `{item}` is not `valency:defect`"))
            })?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad valency `{v}`")))?;
            let d = d
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad defect `{d}`")))?;
            Ok((v, d))
        })
        .collect()
}

fn aut_table(classes: &[GraphClass]) -> Vec<Value> {
    let mut counts = std::collections::BTreeMap::new();
    for c in classes {
        *counts.entry(c.aut).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .map(|(aut, n)| json!({"aut": aut, "classes": n}))
        .collect()
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<bool, CliError> {
    let profile = a.profile.as_deref().map(parse_profile).transpose()?;
    let classes = enumerate_graphs(a.g, a.n, a.m, profile.as_deref(), a.stable_graphs)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let params =
        json!({"g": a.g, "n": a.n, "m": a.m, "profile": profile, "stable_graphs": a.stable_graphs});
    let report = json!({
        "header": header("enumerate"),
        "parameters": params,
        "input_digest": digest(&[params.to_string().as_bytes()]),
        "count": classes.len(),
        "aut_table": aut_table(&classes),
        "classes": classes,
    });
    println!(
        "enumerate g={} n={} m={}: {} classes",
        a.g,
        a.n,
        a.m,
        classes.len()
    );
    for c in &classes {
        let edges: Vec<String> = c
            .graph
            .edges()
            .iter()
            .map(|(x, y)| format!("{x}-{y}"))
            .collect();
        let verts: Vec<String> = (0..c.graph.vertex_count())
            .map(|v| format!("({}:{})", c.graph.valency(v), c.graph.defect(v)))
            .collect();
        println!(
            "  |Aut|={:<3} vertices {} edges [{}]",
            c.aut,
            verts.join(" "),
            edges.join(" ")
        );
    }
    write_report(a.out.as_ref(), &report)?;
    Ok(true)
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool, CliError> {
    let (inst, bytes) = load(&a.common)?;
    let selected: Vec<_> = inst
        .file
        .campaigns
        .iter()
        .filter(|c| {
            a.campaign
                .as_deref()
                .is_none_or(|s| c.kind() == s || c.id() == s)
        })
        .cloned()
        .collect();
    if selected.is_empty() {
        return Err(CliError::Input(match &a.campaign {
            Some(s) => format!("no campaign with kind or id `{s}`"),
            None => "the instance file lists no campaigns".into(),
        }));
    }
    let params = json!({
        "d": inst.file.config.d,
        "window": {"max_word": inst.window.max_word, "max_gamma": inst.window.max_gamma},
        "campaign": a.campaign,
    });
    let seed = inst.seed;
    let exec = Exec::Parallel;
    let mut reports: Vec<CampaignReport> = Vec::new();
    for c in &selected {
        let start = Instant::now();
        let r = with_jobs(a.common.jobs, || campaigns::run(c, &inst, exec))?;
        let failed = r.checks.iter().filter(|k| !k.passed).count();
        println!(
            "{} {} ({}): {} checks, {} failed, {:.2?}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.kind,
            r.checks.len(),
            failed,
            start.elapsed()
        );
        for k in r.checks.iter().filter(|k| !k.passed) {
            println!(
                "  {}: {}",
                k.name,
                k.counterexample.as_deref().unwrap_or("")
            );
        }
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let report = json!({
        "header": header("verify"),
        "parameters": params,
        "seed": seed,
        "input_digest": digest(&[&bytes, params.to_string().as_bytes(), &seed.to_le_bytes()]),
        "passed": passed,
        "campaigns": reports,
    });
    write_report(a.common.out.as_ref(), &report)?;
    Ok(passed)
}

fn cmd_eval(a: &EvalArgs) -> Result<bool, CliError> {
    let (inst, bytes) = load(&a.common)?;
    let out = eval::run(&inst, &a.kernel, a.open.as_deref(), &a.expression)?;
    println!("{}", out.display);
    let params = json!({
        "kernel": a.kernel,
        "open": a.open,
        "expression": a.expression,
        "window": {"max_word": inst.window.max_word, "max_gamma": inst.window.max_gamma},
    });
    let report = json!({
        "header": header("eval"),
        "parameters": params,
        "seed": inst.seed,
        "input_digest": digest(&[&bytes, params.to_string().as_bytes(), &inst.seed.to_le_bytes()]),
        "result": out.repr,
    });
    write_report(a.common.out.as_ref(), &report)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Eval(a) => cmd_eval(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
