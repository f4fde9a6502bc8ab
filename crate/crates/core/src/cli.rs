//! Command-line front end.
//!
//! Exit codes: 0 for definitive results, 2 when a cap left something
//! undecided (or the solver did not converge), 1 for input errors and failed
//! verification.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DVector;
use serde_json::{json, Value};

use crate::analyzer::{analyze, RobustSelection};
use crate::crn::{analyze_network, GeneralizedNetwork};
use crate::error::{Error, Result};
use crate::json::{matrix_to_value, parse_matrix};
use crate::matroid::{self, Chirotope};
use crate::numeric::{distinct_solutions, solve_multistart, NumericMapInstance, SolveOptions};
use crate::report::{check_report, Report};
use crate::sign::DEFAULT_ENUMERATION_CAP;
use crate::spec::{Caps, ExponentialMapSpec};

#[derive(Parser)]
#[command(name = "expbij", version, about = "Exact bijectivity analysis of generalized polynomial maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide injectivity, bijectivity and robustness for all positive c.
    Analyze {
        #[arg(long = "coeff", value_name = "W.json")]
        coefficients: PathBuf,
        #[arg(long = "exp", value_name = "Wt.json")]
        exponents: PathBuf,
        #[arg(long, value_name = "caps.json")]
        caps: Option<PathBuf>,
        #[arg(long, default_value = "all", value_parser = ["exponents", "coefficients", "both", "all"])]
        robust: String,
        #[arg(long, value_name = "report.json")]
        out: Option<PathBuf>,
        /// Record wall-clock time in the report (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Oriented-matroid data of a single matrix, one sign vector per line.
    Matroid {
        query: MatroidQuery,
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_n: usize,
        /// Emit a JSON object (with cone flags for `faces`) instead of lines.
        #[arg(long)]
        json: bool,
    },
    /// Reaction-network front end.
    Crn {
        #[command(subcommand)]
        command: CrnCommand,
    },
    /// Solve F_c(x) = y numerically by damped Newton.
    Solve {
        #[arg(long = "coeff", value_name = "W.json")]
        coefficients: PathBuf,
        #[arg(long = "exp", value_name = "Wt.json")]
        exponents: PathBuf,
        #[arg(long, value_name = "c.json")]
        c: PathBuf,
        #[arg(long, value_name = "y.json")]
        y: PathBuf,
        #[arg(long, default_value_t = 1)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-check every certificate in a report.
    Verify { report: PathBuf },
}

#[derive(Subcommand)]
enum CrnCommand {
    /// Apply the deficiency-zero criteria to a network.
    Analyze {
        network: PathBuf,
        #[arg(long, value_name = "caps.json")]
        caps: Option<PathBuf>,
        #[arg(long, value_name = "report.json")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatroidQuery {
    Circuits,
    Cocircuits,
    Vectors,
    Covectors,
    Chirotope,
    Faces,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn read_spec(w: &Path, wt: &Path) -> Result<ExponentialMapSpec> {
    ExponentialMapSpec::new(parse_matrix(&read(w)?)?, parse_matrix(&read(wt)?)?)
}

fn read_caps(path: &Option<PathBuf>) -> Result<Caps> {
    path.as_ref().map_or(Ok(Caps::default()), |p| Caps::from_json(&read(p)?))
}

fn read_floats(path: &Path) -> Result<Vec<f64>> {
    let v: Value = serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Parse(format!("malformed JSON in {}: {e}", path.display())))?;
    v.as_array()
        .and_then(|a| a.iter().map(Value::as_f64).collect::<Option<Vec<f64>>>())
        .ok_or_else(|| Error::Parse(format!("{} must hold an array of numbers", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(format!("cannot write output: {e}"))),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn matroid_value(query: MatroidQuery, path: &Path, cap: usize) -> Result<Value> {
    let w = parse_matrix(&read(path)?)?;
    w.require_full_rank()?;
    let strings = |s: crate::SignVectorSet| json!(s.to_strings());
    Ok(match query {
        MatroidQuery::Circuits => json!({ "circuits": strings(matroid::circuits(&w)?) }),
        MatroidQuery::Cocircuits => json!({ "cocircuits": strings(matroid::cocircuits(&w)?) }),
        MatroidQuery::Vectors => json!({ "vectors": strings(matroid::vectors(&w, cap)?) }),
        MatroidQuery::Covectors => json!({ "covectors": strings(matroid::covectors(&w, cap)?) }),
        MatroidQuery::Chirotope => {
            let chi = Chirotope::of(&w)?;
            let values: serde_json::Map<String, Value> = chi
                .values()
                .iter()
                .map(|(k, s)| {
                    let key = k.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
                    (key, json!(s.symbol().to_string()))
                })
                .collect();
            json!({ "chirotope": values })
        }
        MatroidQuery::Faces => {
            let f = matroid::face_lattice(&w, cap)?;
            json!({
                "faces": f.faces.to_strings(),
                "pointed": f.pointed,
                "lineality_dim": f.lineality_dim,
                "robustly_generated": f.robustly_generated,
            })
        }
    })
    .map(|mut v| {
        v["matrix"] = matrix_to_value(&w);
        v
    })
}

/// Plain-text form: sign vectors in lexicographic order (`-` < `0` < `+`),
/// or `i,j,k s` lines for the chirotope.
fn matroid_lines(query: MatroidQuery, value: &Value) -> String {
    let key = match query {
        MatroidQuery::Circuits => "circuits",
        MatroidQuery::Cocircuits => "cocircuits",
        MatroidQuery::Vectors => "vectors",
        MatroidQuery::Covectors => "covectors",
        MatroidQuery::Faces => "faces",
        MatroidQuery::Chirotope => {
            let map = value["chirotope"].as_object().expect("chirotope is an object");
            return map.iter().map(|(k, s)| format!("{k} {}\n", s.as_str().unwrap_or(""))).collect();
        }
    };
    value[key].as_array().expect("sign vectors").iter().map(|s| format!("{}\n", s.as_str().unwrap_or(""))).collect()
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze { coefficients, exponents, caps, robust, out, timings } => {
            let spec = read_spec(&coefficients, &exponents)?;
            let caps = read_caps(&caps)?;
            let start = Instant::now();
            let analysis = analyze(&spec, caps, RobustSelection::parse(&robust)?)?;
            let mut report = Report::new(&spec, &analysis);
            if timings {
                report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            emit(&report.to_canonical_json(), &out, stdout)?;
            Ok(if report.is_inconclusive() { 2 } else { 0 })
        }
        Command::Matroid { query, matrix, max_n, json } => {
            let value = matroid_value(query, &matrix, max_n)?;
            let text = if json { pretty(&value) } else { matroid_lines(query, &value) };
            emit(&text, &None, stdout)?;
            Ok(0)
        }
        Command::Crn { command: CrnCommand::Analyze { network, caps, out } } => {
            let net = GeneralizedNetwork::parse(&read(&network)?)?;
            let report = analyze_network(&net, read_caps(&caps)?)?;
            emit(&report.to_canonical_json(), &out, stdout)?;
            Ok(if report.is_inconclusive() { 2 } else { 0 })
        }
        Command::Solve { coefficients, exponents, c, y, starts, seed } => {
            let spec = read_spec(&coefficients, &exponents)?;
            spec.require_square_pair()?;
            let instance = NumericMapInstance::from_spec(&spec, &read_floats(&c)?)?;
            let y = DVector::from_vec(read_floats(&y)?);
            let results = solve_multistart(&instance, &y, starts, seed, &SolveOptions::default())?;
            let solutions = distinct_solutions(&results, 1e-6);
            let value = json!({ "seed": seed, "starts": results, "solutions": solutions });
            emit(&pretty(&value), &None, stdout)?;
            Ok(if solutions.is_empty() { 2 } else { 0 })
        }
        Command::Verify { report } => {
            let report = Report::from_json(&read(&report)?)?;
            let mut ok = true;
            for (id, outcome) in check_report(&report)? {
                match outcome {
                    Ok(()) => writeln!(stdout, "{id}: ok"),
                    Err(e) => {
                        ok = false;
                        writeln!(stdout, "{id}: FAILED: {e}")
                    }
                }
                .map_err(|e| Error::Io(format!("cannot write output: {e}")))?;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
