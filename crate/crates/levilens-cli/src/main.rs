//! Batch command-line interface: analyze boundary points, emit phase jets
//! and leading symbols, evaluate singularity expansions, and run the
//! verification suites, with JSON (default) or CSV reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 mathematical domain error.

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use levilens::error::Error as MathError;
use levilens::heat::degeneracy_spectrum;
use levilens::kernels::{assemble_expansion, evaluate_expansion, DEFAULT_EPSILON};
use levilens::levi::levi_form;
use levilens::phase::{
    bergman_a_coeffs, bergman_leading, bergman_phase_jet, szego_leading_symbol, szego_phase_jet,
    PhaseJet2, PhaseKind,
};
use levilens::forms::FormOperator;
use levilens::surface::{
    contact_form, normalize_defining, DefiningFunctionSpec, MetricSpec, Tolerances,
};
use levilens::verify::{suite_checks, CheckResult, SuiteReport, VerifyOptions};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "levilens",
    version,
    about = "Levi-form analysis, kernel phase jets, and singularity expansions on model hypersurfaces"
)]
struct Cli {
    /// Read the JSON request from this file instead of stdin ("-" = stdin).
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Magnitudes at or below this threshold count as zero.
    #[arg(long, global = true, value_name = "TOL")]
    tol_zero: Option<f64>,

    /// Comma-separated strictly decreasing boundary-approach parameters
    /// for the oracle suite.
    #[arg(long, global = true, value_name = "E1,E2,..", value_delimiter = ',')]
    eps_schedule: Option<Vec<f64>>,

    /// Highest retained coefficient order for expansions.
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Levi eigenvalues, signature, degree conditions, and degeneracy
    /// spectra at a boundary point.
    Analyze,
    /// Phase jet for explicitly given model eigenvalues.
    Phase,
    /// Leading symbols and phase jets at a boundary point, per applicable
    /// branch.
    Leading,
    /// Assemble a singularity expansion from symbol coefficients and
    /// evaluate it at a phase value.
    KernelEval,
    /// Run a verification suite and report tabulated pass/fail results.
    Verify {
        /// Suite: all, geometry, algebra, heat, kernels, or oracles.
        #[arg(default_value = "all")]
        suite: String,
        /// Relative perturbation of the predicted determinant constant
        /// (negative-control hook for the verification suite itself).
        #[arg(long, hide = true, default_value_t = 0.0)]
        det_perturbation: f64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnalyzeRequest {
    defining: DefiningFunctionSpec,
    #[serde(default)]
    metric: Option<MetricSpec>,
    point: Vec<f64>,
    q: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseRequest {
    kind: PhaseKind,
    lambda: Vec<f64>,
    /// Boundary-family frame coefficients, as [re, im] pairs.
    #[serde(default)]
    c: Option<Vec<(f64, f64)>>,
    /// Interior-family linear coefficients, as [re, im] pairs.
    #[serde(default)]
    a: Option<Vec<(f64, f64)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelEvalRequest {
    kind: PhaseKind,
    n: usize,
    /// Phase value, as [re, im].
    phi: (f64, f64),
    s_coeffs: Vec<FormOperator>,
    #[serde(default)]
    epsilon: Option<f64>,
    #[serde(default)]
    truncation: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

/// Map an error chain to the documented exit codes: malformed requests and
/// shape violations are input errors (2), everything mathematical is a
/// domain error (3).
fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(math) = cause.downcast_ref::<MathError>() {
            return match math {
                MathError::InvalidInput(_) | MathError::DimensionMismatch { .. } => 2,
                _ => 3,
            };
        }
        if cause.downcast_ref::<serde_json::Error>().is_some()
            || cause.downcast_ref::<std::io::Error>().is_some()
        {
            return 2;
        }
    }
    2
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let tols = Tolerances {
        tol_zero: cli.tol_zero.unwrap_or(Tolerances::default().tol_zero),
        ..Tolerances::default()
    };
    match &cli.command {
        Command::Analyze => {
            let request: AnalyzeRequest = parse_request(&read_input(&cli.input)?)?;
            let (value, csv) = cmd_analyze(&request, &tols)?;
            emit(cli.format, &value, &csv)?;
            Ok(0)
        }
        Command::Phase => {
            let request: PhaseRequest = parse_request(&read_input(&cli.input)?)?;
            let (value, csv) = cmd_phase(&request)?;
            emit(cli.format, &value, &csv)?;
            Ok(0)
        }
        Command::Leading => {
            let request: AnalyzeRequest = parse_request(&read_input(&cli.input)?)?;
            let (value, csv) = cmd_leading(&request, &tols)?;
            emit(cli.format, &value, &csv)?;
            Ok(0)
        }
        Command::KernelEval => {
            let request: KernelEvalRequest = parse_request(&read_input(&cli.input)?)?;
            let (value, csv) = cmd_kernel_eval(&request, cli.truncation)?;
            emit(cli.format, &value, &csv)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            det_perturbation,
        } => {
            let mut opts = VerifyOptions::default();
            if let Some(eps) = &cli.eps_schedule {
                opts.eps_schedule = eps.clone();
            }
            opts.det_perturbation = *det_perturbation;
            let report = cmd_verify(suite, &opts)?;
            let csv = verify_csv(&report);
            emit(cli.format, &serde_json::to_value(&report)?, &csv)?;
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading request from stdin")?;
            Ok(text)
        }
    }
}

fn parse_request<T: DeserializeOwned>(text: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).context("parsing request JSON")
}

/// Print the report; JSON goes through `Value` so map keys are sorted and
/// the bytes are stable across runs.  A closed pipe downstream (e.g. `| head`)
/// ends the program quietly instead of panicking.
fn emit(format: Format, value: &Value, csv: &str) -> anyhow::Result<()> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
        Format::Csv => csv.to_owned(),
    };
    let mut out = io::stdout().lock();
    if let Err(err) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if err.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        return Err(err.into());
    }
    Ok(())
}

fn pair(re: f64, im: f64) -> Value {
    json!([re, im])
}

fn cmd_analyze(request: &AnalyzeRequest, tols: &Tolerances) -> anyhow::Result<(Value, String)> {
    let metric = match &request.metric {
        Some(m) => m.clone(),
        None => MetricSpec::euclidean(request.defining.n())?,
    };
    let data = levi_form(&request.defining, &metric, &request.point, tols)?;
    let (n_minus, n_plus) = data.signature;
    let q = request.q;
    let y_holds = q != n_minus && q != n_plus;
    let z_holds = q != n_minus;
    let omega0: Vec<f64> = data.omega0.iter().cloned().collect();

    let mut spectra = serde_json::Map::new();
    let mut spectra_csv = String::new();
    for (label, branch) in [("plus", 1i32), ("minus", -1i32)] {
        let spec = degeneracy_spectrum(&data.eigenvalues, q, branch, 1.0)?;
        spectra.insert(
            label.to_string(),
            json!({
                "subsets": spec.subsets,
                "values": spec.values,
                "fundamental": spec
                    .fundamental
                    .iter()
                    .map(|z| pair(z.re, z.im))
                    .collect::<Vec<_>>(),
                "inf": spec.inf,
                "operator": serde_json::to_value(&spec.operator)?,
            }),
        );
        for (i, v) in spec.values.iter().enumerate() {
            spectra_csv.push_str(&format!("degeneracy_{label},{i},{v}\n"));
        }
        spectra_csv.push_str(&format!("degeneracy_{label}_inf,,{}\n", spec.inf));
        for (i, z) in spec.fundamental.iter().enumerate() {
            spectra_csv.push_str(&format!("fundamental_{label}_re,{i},{}\n", z.re));
            spectra_csv.push_str(&format!("fundamental_{label}_im,{i},{}\n", z.im));
        }
    }

    let value = json!({
        "eigenvalues": data.eigenvalues,
        "signature": [n_minus, n_plus],
        "q": q,
        "conditions": {
            "y": y_holds,
            "z": z_holds,
            "gamma_member": !z_holds,
        },
        "omega0": omega0,
        "degeneracy": Value::Object(spectra),
    });

    let mut csv = String::from("quantity,index,value\n");
    for (i, v) in data.eigenvalues.iter().enumerate() {
        csv.push_str(&format!("eigenvalue,{i},{v}\n"));
    }
    for (i, v) in omega0.iter().enumerate() {
        csv.push_str(&format!("omega0,{i},{v}\n"));
    }
    csv.push_str(&format!("signature,n_minus,{n_minus}\n"));
    csv.push_str(&format!("signature,n_plus,{n_plus}\n"));
    csv.push_str(&format!("q,,{q}\n"));
    csv.push_str(&format!("condition,y,{y_holds}\n"));
    csv.push_str(&format!("condition,z,{z_holds}\n"));
    csv.push_str(&format!("condition,gamma_member,{}\n", !z_holds));
    csv.push_str(&spectra_csv);
    Ok((value, csv))
}

fn jet_csv(target: &mut String, jet: &PhaseJet2, prefix: &str) {
    let linear = jet.linear();
    for (i, z) in linear.iter().enumerate() {
        target.push_str(&format!("{prefix}linear,{i},,{},{}\n", z.re, z.im));
    }
    let hessian = jet.hessian();
    for r in 0..hessian.nrows() {
        for c in 0..hessian.ncols() {
            let z = hessian[(r, c)];
            target.push_str(&format!("{prefix}hessian,{r},{c},{},{}\n", z.re, z.im));
        }
    }
}

fn cmd_phase(request: &PhaseRequest) -> anyhow::Result<(Value, String)> {
    let jet = match request.kind {
        PhaseKind::Szego => {
            let c: Vec<_> = request
                .c
                .clone()
                .unwrap_or_else(|| vec![(0.0, 0.0); request.lambda.len()])
                .into_iter()
                .map(|(re, im)| num_complex(re, im))
                .collect();
            szego_phase_jet(&request.lambda, &c)?
        }
        PhaseKind::Bergman => {
            let n = request.lambda.len() + 1;
            let a: Vec<_> = request
                .a
                .clone()
                .unwrap_or_else(|| vec![(0.0, 0.0); 2 * n])
                .into_iter()
                .map(|(re, im)| num_complex(re, im))
                .collect();
            bergman_phase_jet(&request.lambda, &a)?
        }
    };
    let value = serde_json::to_value(&jet)?;
    let mut csv = String::from("part,row,col,re,im\n");
    jet_csv(&mut csv, &jet, "");
    Ok((value, csv))
}

fn num_complex(re: f64, im: f64) -> levilens::Complex64 {
    levilens::Complex64::new(re, im)
}

fn operator_csv(target: &mut String, name: &str, op: &FormOperator) {
    let entries = op.entries();
    for r in 0..entries.nrows() {
        for c in 0..entries.ncols() {
            let z = entries[(r, c)];
            target.push_str(&format!("{name},{r},{c},{},{}\n", z.re, z.im));
        }
    }
}

fn cmd_leading(request: &AnalyzeRequest, tols: &Tolerances) -> anyhow::Result<(Value, String)> {
    let metric = match &request.metric {
        Some(m) => m.clone(),
        None => MetricSpec::euclidean(request.defining.n())?,
    };
    let data = levi_form(&request.defining, &metric, &request.point, tols)?;
    let (n_minus, n_plus) = data.signature;
    let q = request.q;
    if q != n_minus && q != n_plus {
        return Err(MathError::WrongDegree {
            q,
            n_minus,
            n_plus,
        }
        .into());
    }

    let mut out = serde_json::Map::new();
    out.insert("eigenvalues".into(), json!(data.eigenvalues));
    out.insert("signature".into(), json!([n_minus, n_plus]));
    out.insert("q".into(), json!(q));
    let mut csv = String::from("operator,row,col,re,im\n");

    if q == n_plus {
        let leading = szego_leading_symbol(&data.eigenvalues, q)?;
        let c = vec![num_complex(0.0, 0.0); data.eigenvalues.len()];
        let jet = szego_phase_jet(&data.eigenvalues, &c)?;
        out.insert(
            "szego".into(),
            json!({
                "phase_jet": serde_json::to_value(&jet)?,
                "leading": serde_json::to_value(&leading)?,
            }),
        );
        operator_csv(&mut csv, "szego_s0", &leading.s0);
        operator_csv(&mut csv, "szego_f_diag", &leading.f_diag);
    }
    if q == n_minus {
        let normalized = normalize_defining(&request.defining, &metric, &request.point, tols)?;
        let omega0 = contact_form(&normalized.jet);
        let grad_norm = metric.cotangent_norm(&request.point, &normalized.jet.gradient)?;
        let omega_norm = metric.cotangent_norm(&request.point, &omega0)?;
        let dbar_norm_sq = 0.25 * (grad_norm * grad_norm + omega_norm * omega_norm);
        let a = bergman_a_coeffs(&request.defining, &metric, &request.point, tols)?;
        let jet = bergman_phase_jet(&data.eigenvalues, &a)?;
        let leading = bergman_leading(&data.eigenvalues, q, dbar_norm_sq)?;
        out.insert(
            "bergman".into(),
            json!({
                "phase_jet": serde_json::to_value(&jet)?,
                "leading": serde_json::to_value(&leading)?,
                "dbar_norm_sq": dbar_norm_sq,
            }),
        );
        operator_csv(&mut csv, "bergman_b0", &leading.b0);
        operator_csv(&mut csv, "bergman_a0", &leading.a0);
        operator_csv(&mut csv, "bergman_f_diag", &leading.f_diag);
    }
    Ok((Value::Object(out), csv))
}

fn cmd_kernel_eval(
    request: &KernelEvalRequest,
    truncation_flag: Option<usize>,
) -> anyhow::Result<(Value, String)> {
    let mut coeffs = request.s_coeffs.clone();
    let truncation = truncation_flag.or(request.truncation);
    if let Some(t) = truncation {
        if t + 1 < coeffs.len() {
            coeffs.truncate(t + 1);
        }
    }
    let expansion = assemble_expansion(&coeffs, request.n, request.kind)?;
    let phi = num_complex(request.phi.0, request.phi.1);
    let epsilon = request.epsilon.unwrap_or(DEFAULT_EPSILON);
    let value_op = evaluate_expansion(&expansion, phi, epsilon)?;
    let value = json!({
        "expansion": serde_json::to_value(&expansion)?,
        "phi": pair(phi.re, phi.im),
        "epsilon": epsilon,
        "value": serde_json::to_value(&value_op)?,
    });
    let mut csv = String::from("coefficient,term,row,col,re,im\n");
    for (j, op) in expansion.f_coeffs().iter().enumerate() {
        operator_csv(&mut csv, &format!("F,{j}"), op);
    }
    for (j, op) in expansion.g_coeffs().iter().enumerate() {
        operator_csv(&mut csv, &format!("G,{j}"), op);
    }
    operator_csv(&mut csv, "value,", &value_op);
    Ok((value, csv))
}

/// Run the suite's checks, fanning out across a thread pool whose size is
/// capped by `LEVILENS_THREADS`; the report order is fixed regardless of
/// execution order.
fn cmd_verify(suite: &str, opts: &VerifyOptions) -> anyhow::Result<SuiteReport> {
    let checks = suite_checks(suite)?;
    let run_all = || -> Vec<levilens::Result<CheckResult>> {
        checks.par_iter().map(|check| check(opts)).collect()
    };
    let results = match std::env::var("LEVILENS_THREADS")
        .ok()
        .and_then(|raw| raw.parse::<usize>().ok())
        .filter(|&t| t >= 1)
    {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .context("building verification thread pool")?
            .install(run_all),
        None => run_all(),
    };
    let checks: Vec<CheckResult> = results.into_iter().collect::<levilens::Result<_>>()?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: suite.to_string(),
        checks,
        pass,
    })
}

fn verify_csv(report: &SuiteReport) -> String {
    let mut out = String::from("check,pass,detail\n");
    for check in &report.checks {
        let quoted = check.detail.replace('"', "\"\"");
        out.push_str(&format!("{},{},\"{}\"\n", check.name, check.pass, quoted));
    }
    out
}
