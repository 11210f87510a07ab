//! Command-line front end. [`run`] does all the work and returns the exit code
//! and output streams, so the binary is a thin wrapper and tests can drive
//! commands in-process.
//!
//! Exit codes: 0 ok / solvable, 1 semantic failure / unsolvable, 2 parse
//! error, 3 oracle budget exceeded.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::automata::{Alphabet, Automaton, FiniteLanguage, Word};
use crate::error::Error;
use crate::format::{self, Class, Instance};
use crate::oracle;
use crate::problems::{validate_con, validate_dx, validate_obs, FusionRule, ValidationReport};
use crate::reductions::{con_members, con_to_obs, dx_to_obs, obs_to_con, obs_to_dx, verify_obs_to_con};
use crate::solvers::{self, ConSolveReport, SolveReport, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "des-equiv", version, about = "Decentralized observation, diagnosis and control problems")]
pub struct Cli {
    /// Report format (JSON is the only one).
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FusionArg {
    Unrestricted,
    Conjunctive,
    Disjunctive,
}

impl From<FusionArg> for FusionRule {
    fn from(f: FusionArg) -> Self {
        match f {
            FusionArg::Unrestricted => FusionRule::Unrestricted,
            FusionArg::Conjunctive => FusionRule::Conjunctive,
            FusionArg::Disjunctive => FusionRule::Disjunctive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Obs,
    Dx,
    Con,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that an instance is well-formed.
    Validate { path: PathBuf },
    /// Translate an instance into another problem class.
    Reduce {
        path: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Decide solvability.
    Solve {
        path: PathBuf,
        /// Length bound for the bounded search (unrestricted fusion, several agents, infinite plant).
        #[arg(long, default_value_t = solvers::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_enum)]
        fusion: Option<FusionArg>,
    },
    /// Observation -> control -> observation, checking every obligation on the way.
    Roundtrip {
        path: PathBuf,
        /// Tamper with the constructed control instance (negative test).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Brute-force verdict for an instance with finite languages.
    Oracle {
        path: PathBuf,
        #[arg(long, value_enum)]
        fusion: Option<FusionArg>,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json(code: i32, value: &Value) -> Self {
        let mut stdout = serde_json::to_string_pretty(value).expect("values serialize");
        stdout.push('\n');
        Outcome { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome { code, stdout: String::new(), stderr }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match cli.command {
        Command::Validate { path } => with_instance(&path, cmd_validate),
        Command::Reduce { path, to } => with_instance(&path, |i| cmd_reduce(i, to)),
        Command::Solve { path, depth, fusion } => {
            with_instance(&path, |i| cmd_solve(i, depth, fusion.map(Into::into)))
        }
        Command::Roundtrip { path, corrupt } => with_instance(&path, |i| cmd_roundtrip(i, corrupt)),
        Command::Oracle { path, fusion, budget } => {
            with_instance(&path, |i| cmd_oracle(i, fusion.map(Into::into), budget))
        }
    }
}

fn with_instance(path: &Path, f: impl FnOnce(Instance) -> Outcome) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
    };
    match format::parse_instance(&text) {
        Ok(instance) => f(instance),
        Err(e) => Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
    }
}

fn word_json(w: &Word) -> Value {
    Value::String(format::word_text(w))
}

fn words_json(ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(word_json).collect())
}

fn validation(instance: &Instance) -> ValidationReport {
    match instance {
        Instance::Obs(o) => validate_obs(o),
        Instance::Dx(d) => validate_dx(d),
        Instance::Con(c) => validate_con(c),
    }
}

fn violations_json(report: &ValidationReport) -> Value {
    Value::Array(
        report
            .violations
            .iter()
            .map(|v| {
                let mut m = Map::new();
                m.insert("message".into(), Value::String(v.to_string()));
                if let Some(w) = v.witness() {
                    m.insert("witness".into(), word_json(&w));
                }
                Value::Object(m)
            })
            .collect(),
    )
}

fn invalid(report: &ValidationReport) -> Outcome {
    let lines: Vec<String> = report.violations.iter().map(|v| format!("invalid instance: {v}")).collect();
    Outcome::fail(EXIT_FAILURE, lines.join("\n"))
}

pub fn cmd_validate(instance: Instance) -> Outcome {
    let report = validation(&instance);
    let value = json!({
        "class": instance.class().name(),
        "valid": report.is_ok(),
        "violations": violations_json(&report),
    });
    Outcome::json(if report.is_ok() { EXIT_OK } else { EXIT_FAILURE }, &value)
}

fn error_outcome(e: Error) -> Outcome {
    match e {
        Error::InvalidInstance(violations) => invalid(&ValidationReport { violations }),
        Error::OracleBudget { .. } => Outcome::fail(EXIT_BUDGET, e.to_string()),
        other => Outcome::fail(EXIT_FAILURE, other.to_string()),
    }
}

fn instance_json(i: Instance) -> Value {
    serde_json::to_value(format::to_file(&i)).expect("instance files serialize")
}

pub fn cmd_reduce(instance: Instance, to: Target) -> Outcome {
    let result = match (&instance, to) {
        (Instance::Obs(o), Target::Dx) => obs_to_dx(o).map(|d| instance_json(Instance::Dx(d))),
        (Instance::Obs(o), Target::Con) => obs_to_con(o).map(|c| instance_json(Instance::Con(c))),
        (Instance::Dx(d), Target::Obs) => dx_to_obs(d).map(|o| instance_json(Instance::Obs(o))),
        (Instance::Con(c), Target::Obs) => con_to_obs(c).map(|members| {
            Value::Array(
                members
                    .into_iter()
                    .map(|m| {
                        json!({
                            "event": m.event.name(),
                            "agents": m.agents,
                            "instance": instance_json(Instance::Obs(m.instance)),
                        })
                    })
                    .collect(),
            )
        }),
        (Instance::Dx(_), Target::Con) | (Instance::Con(_), Target::Dx) => {
            return Outcome::fail(
                EXIT_FAILURE,
                format!(
                    "no direct reduction from {} to {}: reduce to obs, then to {}",
                    instance.class().name(),
                    target_name(to),
                    target_name(to)
                ),
            )
        }
        _ => {
            return Outcome::fail(
                EXIT_FAILURE,
                format!("instance is already of class {}", instance.class().name()),
            )
        }
    };
    match result {
        Ok(v) => Outcome::json(EXIT_OK, &v),
        Err(e) => error_outcome(e),
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Obs => "obs",
        Target::Dx => "dx",
        Target::Con => "con",
    }
}

/// JSON object for a single report.
pub fn report_json(r: &SolveReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("verdict".into(), Value::String(r.verdict.name().into()));
    if let Verdict::UnknownUpToDepth(n) = r.verdict {
        m.insert("depth".into(), json!(n));
    }
    if !r.witness.is_empty() {
        m.insert("witness".into(), words_json(&r.witness));
        m.insert(
            "witness_words".into(),
            Value::Array(r.witness.iter().map(|w| json!(w.names())).collect()),
        );
    }
    m.insert("method".into(), Value::String(r.method.clone()));
    m
}

fn con_report_json(r: &ConSolveReport) -> Map<String, Value> {
    let mut m = report_json(&r.overall);
    if let Some(ev) = &r.failing_event {
        m.insert("failing_event".into(), Value::String(ev.name().into()));
    }
    let per: Map<String, Value> = r
        .per_sigma
        .iter()
        .map(|(ev, rep)| (ev.name().to_string(), Value::Object(report_json(rep))))
        .collect();
    m.insert("per_sigma".into(), Value::Object(per));
    m
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Unsolvable => EXIT_FAILURE,
        Verdict::Solvable | Verdict::UnknownUpToDepth(_) => EXIT_OK,
    }
}

pub fn cmd_solve(instance: Instance, depth: usize, fusion: Option<FusionRule>) -> Outcome {
    let instance = match fusion {
        Some(f) => instance.with_fusion(f),
        None => instance,
    };
    let result = match &instance {
        Instance::Obs(o) => solvers::solve_obs(o, Some(depth)).map(|r| (r.verdict, report_json(&r))),
        Instance::Dx(d) => solvers::solve_dx(d, Some(depth)).map(|r| (r.verdict, report_json(&r))),
        Instance::Con(c) => {
            solvers::solve_con(c, Some(depth)).map(|r| (r.overall.verdict, con_report_json(&r)))
        }
    };
    match result {
        Ok((verdict, m)) => Outcome::json(verdict_code(verdict), &Value::Object(m)),
        Err(e) => error_outcome(e),
    }
}

pub fn cmd_roundtrip(instance: Instance, corrupt: bool) -> Outcome {
    let Instance::Obs(o) = instance else {
        return Outcome::fail(EXIT_FAILURE, "roundtrip expects an obs instance");
    };
    let mut c = match obs_to_con(&o) {
        Ok(c) => c,
        Err(e) => return error_outcome(e),
    };
    if corrupt {
        if let Some(first) = c.controllable.first_mut() {
            *first = Alphabet::empty();
        }
        c.spec = c.plant.clone();
    }
    let report = verify_obs_to_con(&c, &o);
    let obligations: Vec<Value> = report
        .obligations
        .iter()
        .map(|ob| {
            let mut m = Map::new();
            m.insert("name".into(), json!(ob.name));
            m.insert("holds".into(), json!(ob.holds));
            m.insert("detail".into(), json!(ob.detail));
            if let Some(w) = &ob.witness {
                m.insert("witness".into(), word_json(w));
            }
            Value::Object(m)
        })
        .collect();

    // The image is checked by the obligations above; decompose it as built.
    let round_trip = match con_members(&c) {
        Err(e) => json!({ "ok": false, "error": e.to_string() }),
        Ok(members) => {
            let single = members.len() == 1;
            let check = |a: &Automaton, b: &Automaton| -> Option<Word> {
                b.embed(a.alphabet()).ok().and_then(|b| a.distinguishing_word(&b).ok().flatten())
            };
            let (plant_diff, spec_diff, observed_equal) = match members.first() {
                Some(m) => (
                    check(&m.instance.plant, &o.plant),
                    check(&m.instance.spec, &o.spec),
                    m.instance.observed.len() == o.observed.len()
                        && m.instance.observed.iter().zip(&o.observed).all(|(x, y)| x.same_set(y)),
                ),
                None => (None, None, false),
            };
            let mut m = Map::new();
            m.insert("members".into(), json!(members.len()));
            m.insert("plant_equivalent".into(), json!(single && plant_diff.is_none()));
            m.insert("spec_equivalent".into(), json!(single && spec_diff.is_none()));
            m.insert("observed_equal".into(), json!(observed_equal));
            if let Some(w) = plant_diff.or(spec_diff) {
                m.insert("witness".into(), word_json(&w));
            }
            let ok = single && m["plant_equivalent"] == true && m["spec_equivalent"] == true && observed_equal;
            m.insert("ok".into(), json!(ok));
            Value::Object(m)
        }
    };
    let ok = report.all_hold() && round_trip["ok"] == true;
    let value = json!({
        "gamma": report.gamma.as_ref().map(|g| g.name().to_string()),
        "obligations": obligations,
        "round_trip": round_trip,
        "ok": ok,
    });
    let mut out = Outcome::json(if ok { EXIT_OK } else { EXIT_FAILURE }, &value);
    for ob in report.failures() {
        out.stderr.push_str(&format!("obligation {} failed: {}\n", ob.name, ob.detail));
    }
    out
}

fn finite(a: &Automaton, what: &str) -> Result<FiniteLanguage, Outcome> {
    if a.is_empty() {
        return Ok(FiniteLanguage::empty(a.alphabet().clone()));
    }
    match a.longest_word_len() {
        Some(n) => Ok(a.enumerate_upto(n)),
        None => Err(Outcome::fail(EXIT_FAILURE, format!("oracle needs finite languages; {what} is infinite"))),
    }
}

pub fn cmd_oracle(instance: Instance, fusion: Option<FusionRule>, budget: u64) -> Outcome {
    let instance = match fusion {
        Some(f) => instance.with_fusion(f),
        None => instance,
    };
    let report = validation(&instance);
    if !report.is_ok() {
        return invalid(&report);
    }
    let result = match &instance {
        Instance::Obs(o) => {
            let (plant, spec) = match (finite(&o.plant, "plant"), finite(&o.spec, "spec")) {
                (Ok(p), Ok(s)) => (p, s),
                (Err(e), _) | (_, Err(e)) => return e,
            };
            oracle::oracle_solve_obs(&plant, &spec, &o.observed, o.fusion, budget)
        }
        Instance::Dx(d) => {
            let plant = match finite(&d.plant, "plant") {
                Ok(p) => p,
                Err(e) => return e,
            };
            oracle::oracle_solve_dx(&plant, &d.observed, &d.fault, d.delay, d.fusion, budget)
        }
        Instance::Con(c) => {
            let (plant, spec) = match (finite(&c.plant, "plant"), finite(&c.spec, "spec")) {
                (Ok(p), Ok(s)) => (p, s),
                (Err(e), _) | (_, Err(e)) => return e,
            };
            oracle::oracle_solve_con(&plant, &spec, &c.observed, &c.controllable, c.fusion, budget)
        }
    };
    match result {
        Ok(r) => Outcome::json(verdict_code(r.verdict), &Value::Object(report_json(&r))),
        Err(e) => error_outcome(e),
    }
}

/// Whether `reduce` supports going from `from` to `to` directly.
pub fn reduction_target(from: Class, to: Target) -> bool {
    matches!(
        (from, to),
        (Class::Obs, Target::Dx) | (Class::Obs, Target::Con) | (Class::Dx, Target::Obs) | (Class::Con, Target::Obs)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_directions() {
        assert!(reduction_target(Class::Obs, Target::Dx));
        assert!(reduction_target(Class::Con, Target::Obs));
        assert!(!reduction_target(Class::Dx, Target::Con));
        assert!(!reduction_target(Class::Con, Target::Dx));
    }

    #[test]
    fn usage_errors_exit_with_parse_code() {
        let out = run(["des-equiv", "solve"]);
        assert_eq!(out.code, EXIT_PARSE);
        let out = run(["des-equiv", "--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("reduce"));
    }

    #[test]
    fn missing_file_is_a_parse_error() {
        let out = run(["des-equiv", "validate", "/nonexistent/instance.json"]);
        assert_eq!(out.code, EXIT_PARSE);
    }
}
