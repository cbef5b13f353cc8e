//! Command-line front end.
//!
//! Exit codes: 0 when every check passed, 1 when a verification suite
//! failed (the report is still written), 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{cem_match_residual, cem_match_solve, classify_special_metrics, gauduchon_polynomial, DimPair};
use crate::checks::{CriterionKind, VerificationReport};
use crate::cohomology::model_file::parse_model;
use crate::cohomology::{
    cpn_model, diamond_consistency, dolbeault_hodge_numbers, kunneth_betti_sphere_product, sasakian_betti,
    sphere_product_model,
};
use crate::error::Error;
use crate::geom::SampleConfig;
use crate::product::{AlphaParam, CemParam};
use crate::suites::{verify_all, VerifyParams};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "sasakian", version, about = "Verify Sasakian and product complex structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the seeded verification suites on S^{2n1+1} x S^{2n2+1}.
    Verify(VerifyArgs),
    /// Match the quotient structure J_alpha against the CEM family.
    Compare(CompareArgs),
    /// Special-metric conditions for (J_{a,b}, g_{a,b}).
    Conditions(ConditionsArgs),
    /// Dolbeault Hodge numbers of a product of spheres or a model file.
    Cohomology(CohomologyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub n1: usize,
    #[arg(long, default_value_t = 1)]
    pub n2: usize,
    /// Structure parameter `a+bi`, Im != 0.
    #[arg(long, default_value = "i", allow_hyphen_values = true)]
    pub alpha: String,
    /// CEM parameters; default to (Re alpha, Im alpha).
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long, env = "SASAKIAN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Replaces the tolerance of every bounded-defect suite.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ConditionsArgs {
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub n2: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Largest k for k-Gauduchon; defaults to n1 + n2.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CohomologyArgs {
    #[arg(long, default_value_t = 1)]
    pub n1: usize,
    #[arg(long, default_value_t = 0)]
    pub n2: usize,
    /// Transverse model file; replaces the sphere-product model.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// One line of the `results` array.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ResultEntry {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    pub tol: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl ResultEntry {
    fn value(name: &str, value: Value) -> Self {
        Self { name: name.into(), max_defect: None, value: Some(value), tol: 0.0, passed: true, detail: None }
    }

    fn from_report(r: &VerificationReport) -> Self {
        let detail = json!({
            "samples": r.samples,
            "kind": r.kind,
            "witnesses": r.witnesses,
        });
        Self {
            name: r.suite.clone(),
            max_defect: Some(r.max_defect),
            value: None,
            tol: r.tol,
            passed: r.passed,
            detail: Some(detail),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub tool_version: &'static str,
    pub command: &'static str,
    pub params: Value,
    pub results: Vec<ResultEntry>,
    pub passed: bool,
    #[serde(skip)]
    text: String,
}

impl Report {
    fn new(command: &'static str, params: Value, results: Vec<ResultEntry>, text: String) -> Self {
        let passed = results.iter().all(|r| r.passed);
        Self { tool_version: TOOL_VERSION, command, params, results, passed, text }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.text.clone(),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn fmt_value(v: &Value) -> String {
    match v {
        Value::Null => "undetermined".into(),
        other => other.to_string(),
    }
}

fn text_table(results: &[ResultEntry]) -> String {
    let mut s = String::new();
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        match (&r.max_defect, &r.value) {
            (Some(d), _) => s += &format!("{status}  {:<40} max_defect={d:.3e}  tol={:.1e}\n", r.name, r.tol),
            (None, Some(v)) => s += &format!("{status}  {:<40} {}\n", r.name, fmt_value(v)),
            _ => s += &format!("{status}  {}\n", r.name),
        }
    }
    s
}

fn override_tol(r: &mut VerificationReport, tol: f64) {
    if r.kind == CriterionKind::AtMost {
        r.tol = tol;
        r.passed = r.samples > 0 && r.max_defect <= tol;
    }
}

fn run_verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let alpha: AlphaParam = a.alpha.parse()?;
    let cem = CemParam::new(a.a.unwrap_or(alpha.a), a.b.unwrap_or(alpha.b))?;
    let base = SampleConfig::default();
    let cfg = SampleConfig::new(a.seed, a.samples, base.fd_step, base.tol)?;
    if let Some(t) = a.tol {
        if !(t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let params = VerifyParams { n1: a.n1, n2: a.n2, alpha, cem, cfg };
    let mut reports = verify_all(&params)?;
    if let Some(t) = a.tol {
        reports.iter_mut().for_each(|r| override_tol(r, t));
    }
    let results: Vec<ResultEntry> = reports.iter().map(ResultEntry::from_report).collect();
    let text = text_table(&results);
    let pj = json!({
        "n1": a.n1,
        "n2": a.n2,
        "alpha": alpha.to_string(),
        "a": cem.a,
        "b": cem.b,
        "samples": a.samples,
        "seed": a.seed,
        "tol": a.tol,
        "fd_step": params.cfg.fd_step,
    });
    Ok(Report::new("verify", pj, results, text))
}

fn run_compare(a: &CompareArgs) -> Result<Report, CliError> {
    let alpha: AlphaParam = a.alpha.parse()?;
    let residual = cem_match_residual(&alpha);
    let solved = cem_match_solve(&alpha);
    let m = solved.map(|ab| json!({ "a": ab.a, "b": ab.b }));
    let block = solved.map(|ab| (alpha.reeb_block() - ab.reeb_block()).abs().max());
    let results = vec![
        ResultEntry::value("match", m.clone().unwrap_or(Value::Null)),
        ResultEntry {
            detail: Some(json!({ "im_bound": residual.im_bound, "re_bound": residual.re_bound })),
            ..ResultEntry::value("residual", json!(residual.value))
        },
        ResultEntry::value("reeb-block-difference", block.map_or(Value::Null, |b| json!(b))),
    ];
    let text = text_table(&results);
    Ok(Report::new("compare", json!({ "alpha": alpha.to_string() }), results, text))
}

fn run_conditions(a: &ConditionsArgs) -> Result<Report, CliError> {
    let d = DimPair::new(a.n1, a.n2);
    let ab = CemParam::new(a.a, a.b)?;
    let k = a.k.unwrap_or(d.total());
    let v = classify_special_metrics(d, &ab, k)?;
    let opt = |b: Option<bool>| b.map_or(Value::Null, Value::Bool);
    let mut results = vec![
        ResultEntry::value("gauduchon-polynomial", json!(gauduchon_polynomial(d, &ab))),
        ResultEntry::value("balanced", opt(v.balanced)),
        ResultEntry::value("lck", json!(v.lck)),
        ResultEntry::value("vaisman_if_lck", json!(v.vaisman_if_lck)),
        ResultEntry::value("skt", json!(v.skt)),
        ResultEntry::value("astheno", opt(v.astheno)),
    ];
    for (k, g) in &v.k_gauduchon {
        results.push(ResultEntry::value(&format!("{k}-gauduchon"), opt(*g)));
    }
    let text = text_table(&results);
    let pj = json!({ "n1": a.n1, "n2": a.n2, "a": a.a, "b": a.b, "k": k });
    Ok(Report::new("conditions", pj, results, text))
}

fn run_cohomology(a: &CohomologyArgs) -> Result<Report, CliError> {
    let (model, from_file) = match &a.model {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            (parse_model(&text)?, true)
        }
        None => (sphere_product_model(a.n1, a.n2), false),
    };
    let dim_c = model.n_transverse() + 1;
    let diamond = dolbeault_hodge_numbers(&model, dim_c)?;
    let mut results = vec![ResultEntry::value("hodge-diamond", serde_json::to_value(&diamond).expect("serializes"))];
    let mut text = diamond.render_text();
    if !from_file {
        let betti = kunneth_betti_sphere_product(a.n1, a.n2);
        let report = diamond_consistency(&diamond, &betti);
        results.push(ResultEntry::value("kunneth-betti", json!(betti)));
        results.push(ResultEntry::from_report(&report));
        for (label, n) in [("s1", a.n1), ("s2", a.n2)] {
            let table = sasakian_betti(&cpn_model(n), n)?;
            results.push(ResultEntry::value(&format!("sasakian-betti-{label}"), serde_json::to_value(&table).expect("serializes")));
        }
        text += &text_table(&results[1..]);
    }
    let pj = json!({
        "n1": a.n1,
        "n2": a.n2,
        "model": a.model.as_ref().map(|p| p.display().to_string()),
        "dim_c": dim_c,
    });
    Ok(Report::new("cohomology", pj, results, text))
}

fn emit(report: &Report, out: &OutputArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let body = report.render(out.format);
    match &out.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(body.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run_cli_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };
    let (report, out) = match &cli.command {
        Command::Verify(a) => (run_verify(a), &a.out),
        Command::Compare(a) => (run_compare(a), &a.out),
        Command::Conditions(a) => (run_conditions(a), &a.out),
        Command::Cohomology(a) => (run_cohomology(a), &a.out),
    };
    let result = report.and_then(|r| emit(&r, out, stdout).map(|_| r.passed));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(CliError::Usage(m)) | Err(CliError::Io(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            2
        }
    }
}

pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
