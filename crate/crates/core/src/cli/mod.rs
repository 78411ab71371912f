//! Command-line surface: argument parsing, command execution and output.
//!
//! Every command reads one CSV file and emits either a single JSON object
//! `{command, inputs, results, diagnostics}` or CSV. Exit codes: 0 success,
//! 1 a verification claim failed, 2 input or usage error.

pub mod args;
pub mod csv_io;
pub mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::ols::{fit, fit_simple};
use crate::theorems::{
    gamma_roots, gamma_surface, gamma_sweep, run_verification_suite, GammaRange, GammaSweep,
    VerificationReport, DEFAULT_TOLERANCE,
};
use crate::transform::residualize;

pub use csv_io::{load_csv, parse_csv, write_csv};
use format::{fmt_num, num, nums, round_sig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Fit {
        response: String,
        predictors: Vec<String>,
    },
    Residualize {
        target: String,
        controls: Vec<String>,
    },
    Sweep {
        response: String,
        x1: String,
        x2: String,
        range: GammaRange,
    },
    Surface {
        response: String,
        x1: String,
        controls: Vec<String>,
        range2: GammaRange,
        range3: GammaRange,
    },
    Verify {
        response: String,
        x1: String,
        controls: Vec<String>,
    },
    Report {
        response: String,
        x1: String,
        controls: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fit { .. } => "fit",
            Command::Residualize { .. } => "residualize",
            Command::Sweep { .. } => "sweep",
            Command::Surface { .. } => "surface",
            Command::Verify { .. } => "verify",
            Command::Report { .. } => "report",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub tolerance: f64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input_path: input_path.into(),
            tolerance: DEFAULT_TOLERANCE,
            output_format: OutputFormat::Json,
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::Usage(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        let empty = |v: &Vec<String>, what: &str| {
            if v.is_empty() {
                Err(Error::Usage(format!(
                    "{what} must name at least one column"
                )))
            } else {
                Ok(())
            }
        };
        match &self.command {
            Command::Fit { predictors, .. } => empty(predictors, "--predictors"),
            Command::Residualize { controls, .. }
            | Command::Verify { controls, .. }
            | Command::Report { controls, .. } => empty(controls, "--controls"),
            Command::Sweep { range, .. } => {
                GammaRange::new(range.min, range.max, range.step).map(drop)
            }
            Command::Surface {
                controls,
                range2,
                range3,
                ..
            } => {
                if controls.len() != 2 {
                    return Err(Error::Usage("surface needs exactly two --controls".into()));
                }
                GammaRange::new(range2.min, range2.max, range2.step)?;
                GammaRange::new(range3.min, range3.max, range3.step).map(drop)
            }
        }
    }
}

/// Result of executing a command, before anything is written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub exit_code: i32,
    /// Primary output: JSON, CSV or report text.
    pub body: String,
    /// Sweep metadata, written next to the CSV output when a path is given.
    pub sidecar: Option<String>,
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// `out.csv` → `out.meta.json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    output.with_file_name(format!("{stem}.meta.json"))
}

fn inputs_json(config: &RunConfig) -> Value {
    let mut m = Map::new();
    m.insert(
        "input".into(),
        json!(config.input_path.display().to_string()),
    );
    match &config.command {
        Command::Fit {
            response,
            predictors,
        } => {
            m.insert("response".into(), json!(response));
            m.insert("predictors".into(), json!(predictors));
        }
        Command::Residualize { target, controls } => {
            m.insert("target".into(), json!(target));
            m.insert("controls".into(), json!(controls));
        }
        Command::Sweep {
            response,
            x1,
            x2,
            range,
        } => {
            m.insert("response".into(), json!(response));
            m.insert("x1".into(), json!(x1));
            m.insert("x2".into(), json!(x2));
            m.insert("gamma".into(), range_json(range));
        }
        Command::Surface {
            response,
            x1,
            controls,
            range2,
            range3,
        } => {
            m.insert("response".into(), json!(response));
            m.insert("x1".into(), json!(x1));
            m.insert("controls".into(), json!(controls));
            m.insert("gamma2".into(), range_json(range2));
            m.insert("gamma3".into(), range_json(range3));
        }
        Command::Verify {
            response,
            x1,
            controls,
        }
        | Command::Report {
            response,
            x1,
            controls,
        } => {
            m.insert("response".into(), json!(response));
            m.insert("x1".into(), json!(x1));
            m.insert("controls".into(), json!(controls));
            m.insert("tolerance".into(), num(config.tolerance));
        }
    }
    Value::Object(m)
}

fn range_json(r: &GammaRange) -> Value {
    json!({ "min": num(r.min), "max": num(r.max), "step": num(r.step) })
}

fn envelope(config: &RunConfig, results: Value, diagnostics: Vec<Value>) -> String {
    let v = json!({
        "command": config.command.name(),
        "inputs": inputs_json(config),
        "results": results,
        "diagnostics": diagnostics,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// JSON envelope describing a failure.
pub fn error_output(config: &RunConfig, err: &Error) -> String {
    let mut d = Map::new();
    d.insert("kind".into(), json!(err.kind()));
    d.insert("message".into(), json!(err.to_string()));
    if let Error::Claim { claim, .. } = err {
        d.insert("claim".into(), json!(claim));
    }
    envelope(config, Value::Null, vec![Value::Object(d)])
}

fn fit_json(f: &crate::ols::RegressionFit) -> Value {
    let slopes: Map<String, Value> = f
        .predictors
        .iter()
        .zip(&f.slopes)
        .map(|(p, b)| (p.clone(), num(*b)))
        .collect();
    json!({
        "response": f.response,
        "predictors": f.predictors,
        "intercept": num(f.intercept),
        "slopes": slopes,
        "condition_estimate": num(f.condition_estimate),
        "rss": num(f.rss),
    })
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "claim": r.claim.as_str(),
        "lhs": nums(&r.lhs),
        "rhs": nums(&r.rhs),
        "abs_diff": num(r.abs_diff),
        "tolerance": num(r.tolerance),
        "passed": r.passed,
    })
}

fn points_json(points: &[Vec<f64>]) -> Value {
    Value::Array(points.iter().map(|p| nums(p)).collect())
}

fn sweep_meta(sweep: &GammaSweep) -> Value {
    json!({
        "axes": sweep.axes.iter().map(|a| json!({"name": a.name, "points": a.grid.len()})).collect::<Vec<_>>(),
        "reference_b1": num(sweep.reference_b1),
        "roots": points_json(&sweep.roots),
        "undefined_points": points_json(&sweep.undefined_points),
    })
}

fn sweep_csv(sweep: &GammaSweep) -> String {
    let mut header: Vec<&str> = sweep.axes.iter().map(|a| a.name.as_str()).collect();
    header.push("a1_star");
    let mut out = header.join(",");
    out.push('\n');
    for p in &sweep.values {
        let mut row: Vec<String> = p.gamma.iter().map(|&g| fmt_num(g)).collect();
        row.push(fmt_num(p.a1_star));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn sweep_json(sweep: &GammaSweep) -> Value {
    let mut meta = sweep_meta(sweep);
    let names: Vec<&str> = sweep.axes.iter().map(|a| a.name.as_str()).collect();
    let points: Vec<Value> = sweep
        .values
        .iter()
        .map(|p| {
            let mut m = Map::new();
            for (n, g) in names.iter().zip(&p.gamma) {
                m.insert((*n).to_string(), num(*g));
            }
            m.insert("a1_star".into(), num(p.a1_star));
            Value::Object(m)
        })
        .collect();
    meta["points"] = Value::Array(points);
    meta
}

/// Grid points snapped to printed precision, so each printed gamma is
/// exactly the one evaluated.
fn grid(r: &GammaRange) -> Vec<f64> {
    r.points().into_iter().map(round_sig).collect()
}

/// Runs the command against an already-loaded dataset.
pub fn execute_on(config: &RunConfig, ds: &Dataset) -> Result<RunOutput> {
    config.validate()?;
    let json_out = config.output_format == OutputFormat::Json;
    let ok = |body: String| RunOutput {
        exit_code: EXIT_OK,
        body,
        sidecar: None,
    };
    match &config.command {
        Command::Fit {
            response,
            predictors,
        } => {
            let f = fit(ds, response, &strs(predictors))?;
            if json_out {
                Ok(ok(envelope(config, fit_json(&f), vec![])))
            } else {
                let mut s = String::from("term,estimate\n");
                let _ = writeln!(s, "intercept,{}", fmt_num(f.intercept));
                for (p, b) in f.predictors.iter().zip(&f.slopes) {
                    let _ = writeln!(s, "{p},{}", fmt_num(*b));
                }
                Ok(ok(s))
            }
        }
        Command::Residualize { target, controls } => {
            let r = residualize(ds, target, &strs(controls))?;
            if json_out {
                let coeffs: Map<String, Value> = r
                    .controls
                    .iter()
                    .zip(&r.control_coeffs)
                    .map(|(c, v)| (c.clone(), num(*v)))
                    .collect();
                let results = json!({
                    "name": r.name,
                    "target": r.target,
                    "controls": r.controls,
                    "control_coeffs": coeffs,
                    "values": nums(&r.values),
                });
                Ok(ok(envelope(config, results, vec![])))
            } else {
                Ok(ok(write_csv(&r.attach(ds)?)))
            }
        }
        Command::Sweep {
            response,
            x1,
            x2,
            range,
        } => {
            let sweep = gamma_sweep(ds, response, x1, x2, &grid(range))?;
            Ok(sweep_output(config, &sweep))
        }
        Command::Surface {
            response,
            x1,
            controls,
            range2,
            range3,
        } => {
            let sweep = gamma_surface(
                ds,
                response,
                x1,
                &strs(controls),
                &grid(range2),
                &grid(range3),
            )?;
            Ok(sweep_output(config, &sweep))
        }
        Command::Verify {
            response,
            x1,
            controls,
        } => {
            let reports =
                run_verification_suite(ds, response, x1, &strs(controls), config.tolerance)?;
            let all_passed = reports.iter().all(|r| r.passed);
            let body = if json_out {
                let results = json!({
                    "passed": all_passed,
                    "claims": reports.iter().map(report_json).collect::<Vec<_>>(),
                });
                envelope(config, results, vec![])
            } else {
                let mut s = String::from("claim,abs_diff,tolerance,passed\n");
                for r in &reports {
                    let _ = writeln!(
                        s,
                        "{},{},{},{}",
                        r.claim,
                        fmt_num(r.abs_diff),
                        fmt_num(r.tolerance),
                        r.passed
                    );
                }
                s
            };
            Ok(RunOutput {
                exit_code: if all_passed {
                    EXIT_OK
                } else {
                    EXIT_CLAIM_FAILED
                },
                body,
                sidecar: None,
            })
        }
        Command::Report {
            response,
            x1,
            controls,
        } => report_text(config, ds, response, x1, &strs(controls)),
    }
}

fn sweep_output(config: &RunConfig, sweep: &GammaSweep) -> RunOutput {
    match config.output_format {
        OutputFormat::Json => RunOutput {
            exit_code: EXIT_OK,
            body: envelope(config, sweep_json(sweep), vec![]),
            sidecar: None,
        },
        OutputFormat::Csv => {
            let mut meta =
                serde_json::to_string_pretty(&sweep_meta(sweep)).expect("json values serialize");
            meta.push('\n');
            RunOutput {
                exit_code: EXIT_OK,
                body: sweep_csv(sweep),
                sidecar: Some(meta),
            }
        }
    }
}

fn report_text(
    config: &RunConfig,
    ds: &Dataset,
    y: &str,
    x1: &str,
    controls: &[&str],
) -> Result<RunOutput> {
    let mut predictors = vec![x1];
    predictors.extend_from_slice(controls);
    let full = fit(ds, y, &predictors)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "dataset: {} ({} rows)",
        config.input_path.display(),
        ds.n()
    );
    let _ = writeln!(s, "\nmultiple regression of {y}:");
    let _ = write!(s, "  {y} = {}", fmt_num(full.intercept));
    for (p, b) in full.predictors.iter().zip(&full.slopes) {
        let _ = write!(
            s,
            " {} {} {p}",
            if *b < 0.0 { '-' } else { '+' },
            fmt_num(b.abs())
        );
    }
    let _ = writeln!(
        s,
        "\n  condition estimate {}, rss {}",
        fmt_num(full.condition_estimate),
        fmt_num(full.rss)
    );

    let _ = writeln!(s, "\nsimple regressions:");
    for p in &predictors {
        let f = fit_simple(ds, y, p)?;
        let _ = writeln!(
            s,
            "  {y} on {p}: slope {}, intercept {}",
            fmt_num(f.slopes[0]),
            fmt_num(f.intercept)
        );
    }

    let r = residualize(ds, x1, controls)?;
    let _ = write!(s, "\nresidualized predictor: {} = {x1}", r.name);
    for (c, v) in r.controls.iter().zip(&r.control_coeffs) {
        let _ = write!(
            s,
            " {} {} {c}",
            if *v < 0.0 { '+' } else { '-' },
            fmt_num(v.abs())
        );
    }
    let a1 = crate::ols::simple_slope(ds.column(y)?, &r.values, &r.name)?;
    let _ = writeln!(
        s,
        "\n  slope of {y} on {}: {}  (multiple slope of {x1}: {})",
        r.name,
        fmt_num(a1),
        fmt_num(full.slopes[0])
    );

    if let [x2] = controls {
        match gamma_roots(ds, y, x1, x2) {
            Ok(roots) => {
                let list: Vec<String> = roots.iter().map(|g| fmt_num(*g)).collect();
                let _ = writeln!(s, "\nroots of a1*(gamma) = b1: {}", list.join(", "));
            }
            Err(e) => {
                let _ = writeln!(s, "\nroots of a1*(gamma) = b1: unavailable ({e})");
            }
        }
    }

    let reports = run_verification_suite(ds, y, x1, controls, config.tolerance)?;
    let all_passed = reports.iter().all(|r| r.passed);
    let _ = writeln!(
        s,
        "\nidentity checks (tolerance {}):",
        fmt_num(config.tolerance)
    );
    for r in &reports {
        let _ = writeln!(
            s,
            "  {:<15} {}  |diff| {} (limit {})",
            r.claim.as_str(),
            if r.passed { "pass" } else { "FAIL" },
            fmt_num(r.abs_diff),
            fmt_num(r.tolerance)
        );
    }
    Ok(RunOutput {
        exit_code: if all_passed {
            EXIT_OK
        } else {
            EXIT_CLAIM_FAILED
        },
        body: s,
        sidecar: None,
    })
}

/// Loads the input and executes. Errors map to exit code 2 with a JSON
/// diagnostic body.
pub fn execute(config: &RunConfig) -> RunOutput {
    let result = config
        .validate()
        .and_then(|_| load_csv(&config.input_path))
        .and_then(|ds| execute_on(config, &ds));
    result.unwrap_or_else(|e| RunOutput {
        exit_code: EXIT_USAGE,
        body: error_output(config, &e),
        sidecar: None,
    })
}

/// Executes and performs all output I/O. Returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    let out = execute(config);
    if out.exit_code == EXIT_USAGE {
        if let Ok(v) = serde_json::from_str::<Value>(&out.body) {
            if let Some(msg) = v["diagnostics"][0]["message"].as_str() {
                eprintln!("error: {msg}");
            }
        }
        if config.output_format == OutputFormat::Json {
            print!("{}", out.body);
        }
        return out.exit_code;
    }
    match &config.output_path {
        Some(path) => {
            let written = std::fs::write(path, &out.body).and_then(|_| match &out.sidecar {
                Some(meta) => std::fs::write(sidecar_path(path), meta),
                None => Ok(()),
            });
            if let Err(e) = written {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{}", out.body),
    }
    out.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1() -> Dataset {
        parse_csv("X1,X2,Y\n1,1,2\n2,3,4\n3,2,5\n4,5,7\n5,4,8\n6,6,11\n").unwrap()
    }

    #[test]
    fn validate_rejects_bad_config() {
        let mut c = RunConfig::new(
            Command::Verify {
                response: "Y".into(),
                x1: "X1".into(),
                controls: vec!["X2".into()],
            },
            "in.csv",
        );
        c.tolerance = 0.0;
        assert!(matches!(c.validate(), Err(Error::Usage(_))));
        let c = RunConfig::new(
            Command::Sweep {
                response: "Y".into(),
                x1: "X1".into(),
                x2: "X2".into(),
                range: GammaRange {
                    min: 1.0,
                    max: 0.0,
                    step: 0.1,
                },
            },
            "in.csv",
        );
        assert!(c.validate().is_err());
    }

    #[test]
    fn fit_json_envelope_keys() {
        let c = RunConfig::new(
            Command::Fit {
                response: "Y".into(),
                predictors: vec!["X1".into(), "X2".into()],
            },
            "d1.csv",
        );
        let out = execute_on(&c, &d1()).unwrap();
        let v: Value = serde_json::from_str(&out.body).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
        for k in ["command", "inputs", "results", "diagnostics"] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(
            v["results"]["slopes"]["X1"].as_f64().unwrap(),
            fmt_num(15.0 / 11.0).parse::<f64>().unwrap()
        );
    }

    #[test]
    fn sidecar_naming() {
        assert_eq!(
            sidecar_path(Path::new("/tmp/out/sweep.csv")),
            PathBuf::from("/tmp/out/sweep.meta.json")
        );
    }

    #[test]
    fn report_mentions_every_claim() {
        let c = RunConfig::new(
            Command::Report {
                response: "Y".into(),
                x1: "X1".into(),
                controls: vec!["X2".into()],
            },
            "d1.csv",
        );
        let out = execute_on(&c, &d1()).unwrap();
        assert_eq!(out.exit_code, 0);
        for claim in ["theorem1", "prop1", "lemma1", "appendix4", "appB_relations"] {
            assert!(out.body.contains(claim), "{}", out.body);
        }
    }
}
