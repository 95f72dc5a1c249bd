//! The `mu` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 reproduction
//! failure. Every error is reported as a single stderr line starting with
//! `error:`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bloch::{bloch_vector, pairwise_correlation_tensor, svd_aligned_observable_sets};
use crate::entanglement::{
    conditional_variance_witness, kyfan_criterion, nqubit_product_test, ppt_criterion, project_orthogonal,
    KyFanCriterion,
};
use crate::error::Error;
use crate::generators::{gell_mann_basis, qubit_observable};
use crate::io::{format_significant, load_observable, load_state, to_json_string, CSV_DIGITS};
use crate::operators::{DensityMatrix, Observable};
use crate::reproduce::{cv_sweep, reproduce, werner_sweep, TARGETS};
use crate::states::named_state;
use crate::uncertainty::uncertainty_report;

#[derive(Debug, Parser)]
#[command(name = "mu", version, about = "Mutual uncertainty, entanglement and steering tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Condvar,
    KyfanCondf,
    KyfanDsep,
    Ppt,
    NqubitProduct,
}

#[derive(Debug, clap::Args)]
pub struct StateArgs {
    /// Named state (werner, canonical, tiles, schmidt, nqubit-product) or a
    /// matrix file.
    #[arg(long)]
    pub state: String,
    /// State parameter `key=value`; repeatable.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uncertainty quantities of a state for two or more observables.
    Compute {
        #[command(flatten)]
        state: StateArgs,
        /// `x,y,z[@site]` qubit Bloch direction, or a matrix file; repeatable.
        #[arg(long = "obs")]
        obs: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run an entanglement detector.
    Detect {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        criterion: Criterion,
        /// Measurement directions for nqubit-product, one per qubit.
        #[arg(long = "obs")]
        obs: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the steering statistics of the photon-subtracted state (`pssv`)
    /// or of Werner states.
    SteerSweep {
        #[arg(long, default_value = "pssv")]
        state: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute the published numbers and compare with their reference values.
    Reproduce {
        /// example1, example2, werner, figure1, propositions or all.
        target: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(Error),
    Reproduction(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Reproduction(_) => 3,
        }
    }

    fn message(&self) -> String {
        let raw = match self {
            CliError::Usage(m) | CliError::Reproduction(m) => m.clone(),
            CliError::Validation(e) => e.to_string(),
        };
        raw.lines().next().unwrap_or("").to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Validation(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid usage");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(stderr, "error: {first}");
            return 1;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn parse_params(raw: &[String]) -> CliResult<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter '{item}' is not of the form key=value")))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("parameter '{k}' has non-numeric value '{v}'")))?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn resolve_state(args: &StateArgs) -> CliResult<DensityMatrix> {
    let path = Path::new(&args.state);
    if args.state.ends_with(".json") || path.is_file() {
        if !args.params.is_empty() {
            return Err(usage("--param applies to named states only"));
        }
        return Ok(load_state(path)?);
    }
    Ok(named_state(&args.state, &parse_params(&args.params)?)?.state)
}

enum ObsSpec {
    Bloch { direction: [f64; 3], site: Option<usize> },
    File(PathBuf),
}

fn parse_obs(spec: &str) -> CliResult<ObsSpec> {
    let (vec_part, site) = match spec.split_once('@') {
        Some((v, s)) => (
            v,
            Some(s.trim().parse::<usize>().map_err(|_| usage(format!("bad site in '{spec}'")))?),
        ),
        None => (spec, None),
    };
    let parts: Vec<&str> = vec_part.split(',').collect();
    if parts.len() == 3 {
        let mut d = [0.0; 3];
        for (slot, p) in d.iter_mut().zip(&parts) {
            *slot = p
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad Bloch component in '{spec}'")))?;
        }
        return Ok(ObsSpec::Bloch { direction: d, site });
    }
    if site.is_some() {
        return Err(usage(format!("'{spec}' is neither x,y,z@site nor a file")));
    }
    Ok(ObsSpec::File(PathBuf::from(spec)))
}

fn parse_obs_list(raw: &[String]) -> CliResult<Vec<ObsSpec>> {
    let specs = raw.iter().map(|s| parse_obs(s)).collect::<CliResult<Vec<_>>>()?;
    let files = specs.iter().filter(|s| matches!(s, ObsSpec::File(_))).count();
    if files != 0 && files != specs.len() {
        return Err(usage("observables must be all Bloch vectors or all matrix files"));
    }
    Ok(specs)
}

/// Builds full-space observables. A Bloch spec without `@site` acts on the
/// site equal to its position in the list.
fn build_observables(rho: &DensityMatrix, specs: &[ObsSpec]) -> CliResult<Vec<Observable>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| match spec {
            ObsSpec::File(p) => Ok(load_observable(p)?),
            ObsSpec::Bloch { direction, site } => {
                let site = site.unwrap_or(i);
                if site >= rho.num_subsystems() {
                    return Err(CliError::Validation(Error::BadSubsystem {
                        index: site,
                        count: rho.num_subsystems(),
                    }));
                }
                if rho.dims()[site] != 2 {
                    return Err(CliError::Validation(Error::DimensionMismatch {
                        expected: 2,
                        found: rho.dims()[site],
                    }));
                }
                Ok(qubit_observable(*direction).on_site(rho.dims(), site)?)
            }
        })
        .collect()
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(Error::Parse(format!("cannot write {}: {e}", path.display())))),
        None => {
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(to_json_string(value)? + "\n")
}

fn csv_num(x: f64) -> String {
    format_significant(x, CSV_DIGITS)
}

fn execute(command: Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Compute { state, obs, output, .. } => {
            if obs.len() < 2 {
                return Err(usage(format!("compute needs at least two --obs, got {}", obs.len())));
            }
            let rho = resolve_state(&state)?;
            let observables = build_observables(&rho, &parse_obs_list(&obs)?)?;
            let report = uncertainty_report(&rho, &observables)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&report)?,
                Format::Csv => {
                    let mut s = String::from("quantity,value\n");
                    for (i, d) in report.std_devs.iter().enumerate() {
                        s.push_str(&format!("std_dev_{i},{}\n", csv_num(*d)));
                    }
                    for (k, v) in [
                        ("std_sum_obs", report.std_sum_obs),
                        ("mutual", report.mutual),
                        ("conditional_a_given_b", report.conditional.a_given_b),
                        ("conditional_variance", report.conditional_variance),
                        ("covariance", report.covariance),
                    ] {
                        s.push_str(&format!("{k},{}\n", csv_num(v)));
                    }
                    s
                }
            };
            emit(&output, &text, stdout)
        }
        Command::Detect {
            state,
            criterion,
            obs,
            output,
            ..
        } => {
            let rho = resolve_state(&state)?;
            let value = detect(&rho, criterion, &obs)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => json(&value)?,
                Format::Csv => format!(
                    "criterion,statistic,threshold,verdict\n{},{},{},{}\n",
                    value.criterion,
                    csv_num(value.statistic),
                    csv_num(value.threshold),
                    value.verdict
                ),
            };
            emit(&output, &text, stdout)
        }
        Command::SteerSweep {
            state,
            from,
            to,
            steps,
            output,
            ..
        } => {
            let format = output.format.unwrap_or(Format::Csv);
            let text = match state.as_str() {
                "pssv" => {
                    let rows = cv_sweep(from, to, steps)?;
                    match format {
                        Format::Json => json(&rows)?,
                        Format::Csv => {
                            let mut s = String::from("alpha,m_inf,reid_product,reid_bound\n");
                            for r in &rows {
                                s.push_str(&format!(
                                    "{},{},{},{}\n",
                                    csv_num(r.alpha),
                                    csv_num(r.m_inf),
                                    csv_num(r.reid_product),
                                    csv_num(r.reid_bound)
                                ));
                            }
                            s
                        }
                    }
                }
                "werner" => {
                    let rows = werner_sweep(from, to, steps)?;
                    match format {
                        Format::Json => json(&rows)?,
                        Format::Csv => {
                            let mut s = String::from("p,m_inf,m_inf_analytic,ppt_min_eigenvalue\n");
                            for r in &rows {
                                s.push_str(&format!(
                                    "{},{},{},{}\n",
                                    csv_num(r.p),
                                    csv_num(r.m_inf),
                                    csv_num(r.m_inf_analytic),
                                    csv_num(r.ppt_min_eigenvalue)
                                ));
                            }
                            s
                        }
                    }
                }
                other => return Err(usage(format!("steer-sweep supports pssv or werner, got '{other}'"))),
            };
            emit(&output, &text, stdout)
        }
        Command::Reproduce { target, output } => {
            let targets: Vec<&str> = if target == "all" {
                TARGETS.to_vec()
            } else if TARGETS.contains(&target.as_str()) {
                vec![target.as_str()]
            } else {
                return Err(usage(format!(
                    "unknown target '{target}', expected one of {} or all",
                    TARGETS.join(", ")
                )));
            };
            let reports = targets
                .iter()
                .map(|t| reproduce(t))
                .collect::<crate::error::Result<Vec<_>>>()?;
            let text = match output.format {
                Some(Format::Json) => json(&reports)?,
                Some(Format::Csv) => {
                    let mut s = String::from("target,quantity,reference,computed,diff,tolerance,kind,pass\n");
                    for rep in &reports {
                        for r in &rep.rows {
                            s.push_str(&format!(
                                "{},{},{},{},{},{},{:?},{}\n",
                                rep.target,
                                r.quantity,
                                csv_num(r.reference),
                                csv_num(r.computed),
                                csv_num(r.diff),
                                csv_num(r.tolerance),
                                r.kind,
                                r.pass
                            ));
                        }
                    }
                    s
                }
                None => reports
                    .iter()
                    .map(|r| format!("[{}]\n{}", r.target, r.table()))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&output, &text, stdout)?;
            let failed: Vec<String> = reports
                .iter()
                .flat_map(|rep| rep.rows.iter().filter(|r| !r.pass).map(move |r| format!("{}: {}", rep.target, r.quantity)))
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Reproduction(format!("reproduction failed for {}", failed.join("; "))))
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct DetectOutput {
    criterion: String,
    statistic: f64,
    threshold: f64,
    verdict: String,
}

fn detect(rho: &DensityMatrix, criterion: Criterion, obs: &[String]) -> CliResult<DetectOutput> {
    let verdict = match criterion {
        Criterion::Condvar => {
            let d = match rho.dims() {
                [a, b] if a == b => *a,
                dims => return Err(usage(format!("condvar needs a d x d state, got dims {dims:?}"))),
            };
            let basis = gell_mann_basis(d)?;
            let t = pairwise_correlation_tensor(rho, &basis, (0, 1))?;
            let (a, b) = svd_aligned_observable_sets(&t, &basis)?;
            conditional_variance_witness(rho, &a, &b)?
        }
        Criterion::KyfanCondf => kyfan_criterion(rho, KyFanCriterion::CondF)?,
        Criterion::KyfanDsep => kyfan_criterion(rho, KyFanCriterion::Dsep)?,
        Criterion::Ppt => ppt_criterion(rho)?,
        Criterion::NqubitProduct => {
            let dirs = product_test_directions(rho, obs)?;
            let r = nqubit_product_test(rho, &dirs)?;
            return Ok(DetectOutput {
                criterion: "nqubit-product".into(),
                statistic: r.mutual,
                threshold: r.product_value,
                verdict: format!("{:?}", r.verdict),
            });
        }
    };
    Ok(DetectOutput {
        criterion: verdict.criterion,
        statistic: verdict.statistic,
        threshold: verdict.threshold,
        verdict: format!("{:?}", verdict.verdict),
    })
}

/// Given directions, or for each qubit x̂ (ŷ if x̂ is parallel to the Bloch
/// vector) projected orthogonal to its Bloch vector.
fn product_test_directions(rho: &DensityMatrix, obs: &[String]) -> CliResult<Vec<[f64; 3]>> {
    if rho.dims().iter().any(|&d| d != 2) {
        return Err(usage("nqubit-product needs a qubit state"));
    }
    if !obs.is_empty() {
        return parse_obs_list(obs)?
            .into_iter()
            .map(|s| match s {
                ObsSpec::Bloch { direction, site: None } => Ok(direction),
                _ => Err(usage("nqubit-product takes plain x,y,z directions, one per qubit")),
            })
            .collect();
    }
    let basis = gell_mann_basis(2)?;
    (0..rho.num_subsystems())
        .map(|i| {
            let r = bloch_vector(rho, &basis, i)?;
            let r = [r[0], r[1], r[2]];
            Ok(project_orthogonal([1.0, 0.0, 0.0], r).or_else(|_| project_orthogonal([0.0, 1.0, 0.0], r))?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("mu").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn param_parsing() {
        let p = parse_params(&["p=0.5".into(), " alpha = 1e-1".into()]).unwrap();
        assert_eq!(p["p"], 0.5);
        assert_eq!(p["alpha"], 0.1);
        assert!(parse_params(&["p".into()]).is_err());
        assert!(parse_params(&["p=x".into()]).is_err());
    }

    #[test]
    fn obs_parsing() {
        assert!(matches!(parse_obs("1,0,0@1").unwrap(), ObsSpec::Bloch { site: Some(1), .. }));
        assert!(matches!(parse_obs("0,0,1").unwrap(), ObsSpec::Bloch { site: None, .. }));
        assert!(matches!(parse_obs("a.json").unwrap(), ObsSpec::File(_)));
        assert!(parse_obs("1,0,z").is_err());
        assert!(parse_obs_list(&["1,0,0".into(), "a.json".into()]).is_err());
    }

    #[test]
    fn compute_singlet() {
        let (code, out, _) = run_args(&["compute", "--state", "werner", "--param", "p=1", "--obs", "1,0,0", "--obs", "1,0,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["mutual"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn error_codes() {
        let (code, _, err) = run_args(&["compute", "--state", "werner", "--param", "p=1", "--obs", "1,0,0"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
        assert_eq!(err.lines().count(), 1);
        let (code, _, err) = run_args(&["compute", "--state", "werner", "--param", "p=2", "--obs", "1,0,0", "--obs", "1,0,0"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
        let (code, _, err) = run_args(&["bogus"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
        let (code, _, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
    }
}
