//! Command-line front end.
//!
//! Exit status: 0 when clean, 1 when a suite finds a violation, 2 on usage,
//! input or budget errors.

mod spec;
mod suites;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::Fp;
use crate::frobenius::frobenius_components;
use crate::repcat::GroupRep;
use crate::series::{growth_check, hilbert_coeffs};
use crate::verlinde::{fpdim_perron, fpdim_simple, fusion_simple, fusion_table_tsv, green_table_tsv, semisimplify_rep};

pub use spec::ModuleSpec;
pub use suites::{splitmix64, trial_seed, Outcome, Suite};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Version of the JSON output layout.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "frobcat", version, about = "Frobenius functors, Verlinde fusion and invariant suites over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fusion table of the Verlinde category and Frobenius-Perron dimensions.
    Fusion {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Jordan types of J_a ⊗ J_b over Z/p and their semisimplified classes.
    Green {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dimensions and Jordan types of the components F_i and G_i.
    Frob {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Class of a Z/p-module in the Verlinde category.
    Semisimplify {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dimensions of symmetric powers S^i X for i <= T.
    Hilbert {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a randomized invariant suite.
    Check(SuiteConfig),
}

#[derive(Debug, Args)]
pub struct ModuleInput {
    #[arg(long)]
    pub p: u32,
    /// Sum of Jordan blocks such as "J3 + 2*J5".
    #[arg(long, required_unless_present = "rep", conflicts_with = "rep")]
    pub module: Option<ModuleSpec>,
    /// JSON representation file.
    #[arg(long)]
    pub rep: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteConfig {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Size cap overriding the suite default.
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Re-check the instances recorded in a report or violation file.
    #[arg(long)]
    pub replay: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok((text, code)) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: &Command) -> Result<(String, i32)> {
    let text = match command {
        Command::Fusion { p, format } => fusion(*p, *format)?,
        Command::Green { p, format } => green(*p, *format)?,
        Command::Frob { input, format } => frob(&input.load()?, *format)?,
        Command::Semisimplify { input, format } => semisimplify(&input.load()?, *format)?,
        Command::Hilbert { input, terms, format } => hilbert(&input.load()?, *terms, *format)?,
        Command::Check(config) => return check(config),
    };
    Ok((text, EXIT_CLEAN))
}

impl ModuleInput {
    pub fn load(&self) -> Result<GroupRep> {
        let field = Fp::new(self.p)?;
        match (&self.module, &self.rep) {
            (Some(spec), _) => GroupRep::cyclic_from_jordan(field, &spec.for_prime(self.p)?),
            (None, Some(path)) => {
                let rep = load_rep(path)?;
                if rep.p() != self.p {
                    return Err(Error::ModulusMismatch(rep.p(), self.p));
                }
                Ok(rep)
            }
            (None, None) => Err(Error::InvalidInput("one of --module or --rep is required".into())),
        }
    }
}

/// Reads and validates a JSON representation file.
pub fn load_rep(path: &Path) -> Result<GroupRep> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    GroupRep::from_json(&text)
}

fn to_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
    text.push('\n');
    text
}

fn fusion(p: u32, format: Format) -> Result<String> {
    let table = fusion_table_tsv(p)?;
    let perron = fpdim_perron(p)?;
    let size = p as usize - 1;
    let fpdims: Vec<f64> = (1..=size).map(|r| fpdim_simple(p, r)).collect();
    match format {
        Format::Tsv => {
            let mut out = table;
            out.push_str("\nsimple\tfpdim\tperron\n");
            for r in 1..=size {
                writeln!(out, "L{r}\t{:.12}\t{:.12}", fpdims[r - 1], perron[r - 1]).unwrap();
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Vec<Vec<u64>>> = (1..=size)
                .map(|r| (1..=size).map(|s| fusion_simple(p, r, s).map(|e| e.mult)).collect())
                .collect::<Result<_>>()?;
            Ok(to_json(&json!({
                "schema": SCHEMA,
                "p": p,
                "table": rows,
                "fpdim": fpdims,
                "perron": perron,
            })))
        }
    }
}

fn green(p: u32, format: Format) -> Result<String> {
    match format {
        Format::Tsv => green_table_tsv(p),
        Format::Json => {
            let field = Fp::new(p)?;
            let n = p as usize;
            let mut entries = Vec::new();
            for a in 1..=n {
                let ja = GroupRep::cyclic_block(field, a)?;
                for b in 1..=n {
                    let prod = ja.tensor(&GroupRep::cyclic_block(field, b)?)?;
                    entries.push(json!({
                        "a": a,
                        "b": b,
                        "jordan": prod.decompose_cyclic()?,
                        "semisimplified": semisimplify_rep(&prod)?.mult,
                    }));
                }
            }
            Ok(to_json(&json!({ "schema": SCHEMA, "p": p, "entries": entries })))
        }
    }
}

fn frob(x: &GroupRep, format: Format) -> Result<String> {
    let image = frobenius_components(x)?;
    let p = x.p() as usize;
    let witness = x.witness_type()?;
    let mut rows = Vec::new();
    for name in ["F", "G"] {
        for i in 1..p {
            let component = if name == "F" { image.f(i) } else { image.g(i) };
            rows.push((name, i, component.dim(), component.witness_type()?));
        }
    }
    let fpdim = image.fpdim();
    let preserved = (fpdim - x.dim() as f64).abs() <= 1e-9;
    match format {
        Format::Tsv => {
            let mut out = format!("# p={} group={} dim={} witness={witness}\n", x.p(), x.group().name, x.dim());
            out.push_str("functor\ti\tdim\tjordan\n");
            for (name, i, dim, jordan) in &rows {
                writeln!(out, "{name}\t{i}\t{dim}\t{jordan}").unwrap();
            }
            writeln!(out, "FPdim(F)\t{fpdim:.12}\tdim\t{}\tequal\t{preserved}", x.dim()).unwrap();
            Ok(out)
        }
        Format::Json => {
            let entries = |which: &str| -> Vec<Value> {
                rows.iter()
                    .filter(|r| r.0 == which)
                    .map(|(_, i, dim, jordan)| json!({ "i": i, "dim": dim, "jordan": jordan }))
                    .collect()
            };
            Ok(to_json(&json!({
                "schema": SCHEMA,
                "p": x.p(),
                "group": x.group().name,
                "dim": x.dim(),
                "witness": witness,
                "f": entries("F"),
                "g": entries("G"),
                "fpdim_f": fpdim,
                "fpdim_equals_dim": preserved,
            })))
        }
    }
}

fn semisimplify(x: &GroupRep, format: Format) -> Result<String> {
    let class = semisimplify_rep(x)?;
    match format {
        Format::Tsv => Ok(format!("class\t{class}\nfpdim\t{:.12}\n", class.fpdim())),
        Format::Json => Ok(to_json(&json!({
            "schema": SCHEMA,
            "p": x.p(),
            "class": class.mult,
            "text": class.to_string(),
            "fpdim": class.fpdim(),
        }))),
    }
}

fn hilbert(x: &GroupRep, terms: usize, format: Format) -> Result<String> {
    let series = hilbert_coeffs(x, terms)?;
    let coeffs: Vec<u64> = series.coeffs.iter().map(|&c| c as u64).collect();
    let growth = if terms >= 10 { Some(growth_check(&series)?) } else { None };
    let quotient = series.quotient_violations();
    match format {
        Format::Tsv => {
            let mut out = String::from("i\td_i\n");
            for (i, d) in coeffs.iter().enumerate() {
                writeln!(out, "{i}\t{d}").unwrap();
            }
            if let Some(g) = &growth {
                writeln!(
                    out,
                    "# growth\t{:?}\tmax_root\t{:.6}\tfinal_root\t{:.6}\tthreshold\t{:.6}\tflagged\t{}",
                    g.verdict, g.max_root, g.final_root, g.threshold, g.flagged
                )
                .unwrap();
            }
            writeln!(out, "# quotient_violations\t{}", quotient.len()).unwrap();
            Ok(out)
        }
        Format::Json => Ok(to_json(&json!({
            "schema": SCHEMA,
            "p": x.p(),
            "dim": x.dim(),
            "series": coeffs,
            "growth": growth,
            "quotient_violations": quotient,
        }))),
    }
}

/// One checked trial, ready to print.
struct TrialRecord {
    trial: usize,
    seed: Option<u64>,
    instance: Value,
    outcome: Outcome,
}

fn check(config: &SuiteConfig) -> Result<(String, i32)> {
    let field = Fp::new(config.p)?;
    let suite = config.suite;
    let records: Vec<TrialRecord> = match &config.replay {
        Some(path) => replay_instances(path, config)?
            .into_par_iter()
            .map(|(trial, instance)| {
                let outcome = suite.evaluate(field, &instance).map_err(|e| trial_error(trial, e))?;
                Ok(TrialRecord { trial, seed: None, instance, outcome })
            })
            .collect::<Result<_>>()?,
        None => {
            let max_dim = config.max_dim.unwrap_or_else(|| suite.default_max_dim(config.p));
            (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = trial_seed(config.seed, trial);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut run = || {
                        let instance = suite.generate(field, max_dim, trial, &mut rng)?;
                        let outcome = suite.evaluate(field, &instance)?;
                        Ok(TrialRecord { trial, seed: Some(seed), instance, outcome })
                    };
                    run().map_err(|e| trial_error(trial, e))
                })
                .collect::<Result<_>>()?
        }
    };
    let violations: Vec<&TrialRecord> = records.iter().filter(|r| r.outcome.violation.is_some()).collect();
    let code = if violations.is_empty() { EXIT_CLEAN } else { EXIT_VIOLATION };
    let text = match config.format {
        Format::Tsv => {
            let mut out = String::from("trial\tseed\tstatus\tsummary\n");
            for r in &records {
                let status = if r.outcome.violation.is_some() { "FAIL" } else { "ok" };
                let seed = r.seed.map_or_else(|| "replay".to_string(), |s| format!("{s:016x}"));
                writeln!(out, "{}\t{seed}\t{status}\t{}", r.trial, r.outcome.summary).unwrap();
            }
            for r in &violations {
                let instance = serde_json::to_string(&r.instance).expect("instance serializes");
                let reason = r.outcome.violation.as_deref().unwrap_or_default();
                writeln!(out, "violation\t{}\t{reason}\t{instance}", r.trial).unwrap();
            }
            writeln!(
                out,
                "# check={} p={} instances={} violations={}",
                suite.name(),
                config.p,
                records.len(),
                violations.len()
            )
            .unwrap();
            out
        }
        Format::Json => {
            let descriptors: Vec<Value> = violations
                .iter()
                .map(|r| {
                    json!({
                        "trial": r.trial,
                        "seed": r.seed,
                        "reason": r.outcome.violation,
                        "summary": r.outcome.summary,
                        "instance": r.instance,
                    })
                })
                .collect();
            to_json(&json!({
                "schema": SCHEMA,
                "check": suite.name(),
                "p": config.p,
                "instances": records.len(),
                "violations": descriptors,
            }))
        }
    };
    Ok((text, code))
}

fn trial_error(trial: usize, e: Error) -> Error {
    Error::Trial { trial, source: Box::new(e) }
}

/// Instances recorded in `path`: a JSON report (every violation is
/// replayed), a single violation descriptor, or a bare instance.
fn replay_instances(path: &Path, config: &SuiteConfig) -> Result<Vec<(usize, Value)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if let Some(check) = value.get("check").and_then(Value::as_str) {
        if check != config.suite.name() {
            return Err(Error::InvalidInput(format!(
                "replay file is for suite {check}, not {}",
                config.suite.name()
            )));
        }
    }
    if let Some(p) = value.get("p").and_then(Value::as_u64) {
        if p != u64::from(config.p) {
            return Err(Error::ModulusMismatch(p as u32, config.p));
        }
    }
    let descriptor = |index: usize, v: &Value| -> (usize, Value) {
        let trial = v.get("trial").and_then(Value::as_u64).map_or(index, |t| t as usize);
        (trial, v.get("instance").cloned().unwrap_or(Value::Null))
    };
    let instances = match value.get("violations").and_then(Value::as_array) {
        Some(list) => list.iter().enumerate().map(|(k, v)| descriptor(k, v)).collect(),
        None if value.get("instance").is_some() => vec![descriptor(0, &value)],
        None => vec![(0, value)],
    };
    Ok(instances)
}
