mod error;
mod report;
mod schema;
mod tables;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use suspcalc_core::classifier::{
    classify_double_suspension, validate_roundtrip, ManifoldInvariants,
};
use suspcalc_core::normalizer::{check_against_oracle, orbit};

use error::{schema, CliError};
use report::{ClassifyFlags, Outcome};
use schema::{parse_descriptors, Descriptor, VectorDto};

#[derive(Parser)]
#[command(
    name = "suspcalc",
    version,
    about = "Suspensions of closed orientable 4-manifolds and their 2-local cohomotopy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wedge decomposition of the double suspension (or the suspension)
    Classify {
        /// descriptor file, a JSON object or array; stdin when absent or `-`
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        suspension_level: u8,
        /// include the W_3, W_4 and Sigma W_4 stages
        #[arg(long)]
        stages: bool,
        /// run the homology / operation consistency audit
        #[arg(long)]
        validate: bool,
        #[arg(long)]
        json: bool,
    },
    /// pi^5 groups, coker(H_2) and surjectivity of the suspension
    Cohomotopy {
        input: Option<PathBuf>,
        /// include the Hopf data of every summand
        #[arg(long)]
        summands: bool,
        #[arg(long)]
        json: bool,
    },
    /// Normal form and cofibre of a map from a sphere into a wedge
    Normalize {
        input: Option<PathBuf>,
        /// also run the exhaustive orbit search (seeded by SUSPCALC_SEED)
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Dump the built-in tables as JSON lines
    Tables {
        #[arg(long, value_enum)]
        filter: Vec<tables::Filter>,
    },
    /// Audit every descriptor; exit 4 when a check fails
    Validate {
        input: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.clone(),
                source,
            })?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
        }
    }
    Ok(text)
}

/// Parses and validates all descriptors before computing anything.
fn load(path: &Option<PathBuf>) -> Result<(Vec<(Descriptor, ManifoldInvariants)>, bool), CliError> {
    let (ds, batch) = parse_descriptors(&read_input(path)?)?;
    let mut out = Vec::with_capacity(ds.len());
    for (k, d) in ds.into_iter().enumerate() {
        let inv = d.to_invariants().map_err(|e| {
            if batch {
                schema(format!("descriptor {k}: {e}"))
            } else {
                e
            }
        })?;
        out.push((d, inv));
    }
    Ok((out, batch))
}

fn seed() -> u64 {
    std::env::var("SUSPCALC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

fn json_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs `f` over the batch in parallel and prints results in input order.
fn run_batch<T: Serialize + Send>(
    items: &[(Descriptor, ManifoldInvariants)],
    batch: bool,
    json: bool,
    f: impl Fn(&ManifoldInvariants, &Option<String>) -> Outcome<T> + Sync,
    text: impl Fn(&T) -> String,
) -> Result<(), CliError> {
    let results: Vec<Outcome<T>> = items.par_iter().map(|(d, inv)| f(inv, &d.label)).collect();
    let n_omitted = results
        .iter()
        .filter(|o| matches!(o, Outcome::Omitted(_)))
        .count();
    let out = if json {
        let values: Vec<serde_json::Value> = results
            .iter()
            .map(|o| match o {
                Outcome::Done(t) => serde_json::to_value(t),
                Outcome::Omitted(o) => serde_json::to_value(o),
            })
            .collect::<Result<_, _>>()
            .expect("serializable");
        if batch {
            json_text(&values)
        } else {
            json_text(&values[0])
        }
    } else {
        results
            .iter()
            .map(|o| match o {
                Outcome::Done(t) => text(t),
                Outcome::Omitted(o) => report::omitted_text(o),
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    emit(&out)?;
    if n_omitted > 0 {
        return Err(CliError::Omitted(format!(
            "{n_omitted} descriptor(s) are non-spin with theta nontrivial; no decomposition is available"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct OracleOut {
    seed: u64,
    orbit_size: usize,
    least: VectorDto,
    agrees: bool,
}

#[derive(Serialize)]
struct NormalizeOut {
    input: VectorDto,
    normal_form: VectorDto,
    cofiber: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleOut>,
}

fn run_normalize(input: &Option<PathBuf>, oracle: bool, json: bool) -> Result<(), CliError> {
    let text = read_input(input)?;
    let dto: VectorDto = serde_json::from_str(&text).map_err(|e| schema(format!("vector: {e}")))?;
    let v = dto.to_vector()?;
    let n = v.normalize().map_err(|e| schema(e.to_string()))?;
    let cofiber = n.cofiber().map_err(|e| schema(e.to_string()))?;
    let oracle = if oracle {
        let seed = seed();
        let all = orbit(&v, seed).map_err(|e| schema(e.to_string()))?;
        Some(OracleOut {
            seed,
            orbit_size: all.len(),
            least: VectorDto::from(&all[0]),
            agrees: check_against_oracle(&v, seed).is_ok(),
        })
    } else {
        None
    };
    let out = NormalizeOut {
        input: dto,
        normal_form: VectorDto::from(&n),
        cofiber: cofiber.to_string(),
        oracle,
    };
    if json {
        return emit(&json_text(&out));
    }
    let mut s = format!("input: {v}\nnormal form: {n}\ncofiber: {cofiber}\n");
    if let Some(o) = &out.oracle {
        s.push_str(&format!(
            "oracle: orbit of {} element(s), {}\n",
            o.orbit_size,
            if o.agrees { "agrees" } else { "DISAGREES" }
        ));
    }
    emit(&s)
}

#[derive(Serialize)]
struct ValidateOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    omitted: bool,
    checks: Vec<report::CheckOut>,
}

fn run_validate(input: &Option<PathBuf>, json: bool) -> Result<(), CliError> {
    let (items, batch) = load(input)?;
    let results: Vec<ValidateOut> = items
        .par_iter()
        .map(|(d, inv)| match classify_double_suspension(inv) {
            Ok(r) => ValidateOut {
                label: d.label.clone(),
                omitted: false,
                checks: validate_roundtrip(inv, &r)
                    .into_iter()
                    .map(|c| report::CheckOut {
                        check: c.name,
                        passed: c.passed,
                        detail: c.detail,
                    })
                    .collect(),
            },
            Err(_) => ValidateOut {
                label: d.label.clone(),
                omitted: true,
                checks: Vec::new(),
            },
        })
        .collect();
    let failed: usize = results
        .iter()
        .map(|r| r.checks.iter().filter(|c| !c.passed).count())
        .sum();
    let out = if json {
        if batch {
            json_text(&results)
        } else {
            json_text(&results[0])
        }
    } else {
        let mut s = String::new();
        for (k, r) in results.iter().enumerate() {
            let name = r.label.clone().unwrap_or_else(|| format!("#{k}"));
            if r.omitted {
                s.push_str(&format!("{name}: omitted\n"));
            }
            for c in &r.checks {
                s.push_str(&format!(
                    "{name}: {} {}\n",
                    c.check,
                    if c.passed { "pass" } else { "FAIL" }
                ));
            }
        }
        s
    };
    emit(&out)?;
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify {
            input,
            suspension_level,
            stages,
            validate,
            json,
        } => {
            let (items, batch) = load(&input)?;
            let flags = ClassifyFlags {
                level: suspension_level,
                stages,
                validate,
            };
            run_batch(
                &items,
                batch,
                json,
                |inv, label| report::classify(inv, label, flags),
                report::classify_text,
            )
        }
        Command::Cohomotopy {
            input,
            summands,
            json,
        } => {
            let (items, batch) = load(&input)?;
            run_batch(
                &items,
                batch,
                json,
                |inv, label| report::cohomotopy(inv, label, summands),
                report::cohomotopy_text,
            )
        }
        Command::Normalize {
            input,
            oracle,
            json,
        } => run_normalize(&input, oracle, json),
        Command::Tables { filter } => emit(&tables::render(&filter)),
        Command::Validate { input, json } => run_validate(&input, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("suspcalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
