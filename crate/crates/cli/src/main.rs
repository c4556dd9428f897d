//! `quandle`: command-line access to the quandle library.
//!
//! Exit codes: 0 success or affirmative answer, 1 negative answer or failed
//! certificate, 2 usage error or malformed input.

use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use quandle::enumerate::{isomorphism_classes, DEFAULT_MAX_ORDER};
use quandle::io::to_json;
use quandle::triplet::{displacement_triplet, parse_triplet, FlatCertificates, TripletJson};
use quandle::{
    analyze, build_representatives, classify_flat_connected, dihedral_quandle, direct_product,
    enumerate_quandles, factor_multisets, find_isomorphism, is_connected, is_flat, parse_quandle,
    parse_table, phi_map, predicted_count, quandle_from_triplet, trivial_quandle, validate_quandle,
    EnumerationError, EnumerationOptions, QuandleTable,
};

const MAX_ORDER_VAR: &str = "QUANDLE_MAX_ORDER";

#[derive(Parser)]
#[command(
    name = "quandle",
    version,
    about = "Finite quandles: construction, analysis and classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quandle axioms on a table.
    Validate { file: String },
    /// Construct a quandle.
    Make {
        #[command(subcommand)]
        what: Make,
    },
    /// Connectivity, flatness, involutivity, homogeneity and group orders.
    Analyze { file: String },
    /// Search for an isomorphism between two quandles.
    Iso { left: String, right: String },
    /// Derive the triplet (G⁰, K, σ) of a quandle at a basepoint.
    Triplet {
        file: String,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
    },
    /// Decompose a flat connected quandle into dihedral factors.
    Classify { file: String },
    /// Number of flat connected quandles of order N and their factor lists.
    Predict { n: usize },
    /// List every quandle of a small order.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Only flat connected quandles, one per isomorphism class.
        #[arg(long)]
        flat_connected: bool,
        /// Limit on the number of search nodes.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Representatives of every flat connected class for odd orders up to N.
    Catalog {
        #[arg(long)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum Make {
    Trivial {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    /// Direct product; each operand is a file, `-`, or a name such as `dihedral3`.
    Product {
        left: String,
        right: String,
    },
    /// The coset quandle of a triplet file.
    FromTriplet {
        file: String,
    },
}

/// Outcome of a subcommand: data already written, or a diagnostic.
enum Failure {
    Negative(String),
    Usage(String),
}

type Outcome = Result<ExitCode, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    }
    Ok(text)
}

/// `dihedral7` or `trivial4`.
fn named_quandle(name: &str) -> Option<QuandleTable> {
    let (ctor, digits): (fn(usize) -> _, &str) = if let Some(d) = name.strip_prefix("dihedral") {
        (dihedral_quandle, d)
    } else {
        let d = name.strip_prefix("trivial")?;
        (trivial_quandle, d)
    };
    ctor(digits.parse().ok()?).ok()
}

fn load_quandle(path: &str) -> Result<QuandleTable, Failure> {
    if path != "-" && !Path::new(path).exists() {
        if let Some(q) = named_quandle(path) {
            return Ok(q);
        }
    }
    let text = read_source(path)?;
    parse_quandle(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let line = serde_json::to_string(value).expect("reports serialize");
    emit_line(&line)
}

fn emit_line(line: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")
        .and_then(|_| out.flush())
        .map_err(|e| usage(format!("stdout: {e}")))
}

fn enumeration_options(budget: Option<u64>) -> Result<EnumerationOptions, Failure> {
    let mut opts = EnumerationOptions::default();
    if let Some(b) = budget {
        opts.budget = b;
    }
    opts.max_order = match std::env::var(MAX_ORDER_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{MAX_ORDER_VAR}={v:?} is not a number")))?,
        Err(_) => DEFAULT_MAX_ORDER,
    };
    Ok(opts)
}

fn enumeration_failure(e: EnumerationError) -> Failure {
    match e {
        EnumerationError::BudgetExhausted { .. } => Failure::Negative(e.to_string()),
        EnumerationError::OrderTooLarge { .. } => {
            Failure::Usage(format!("{e}; set {MAX_ORDER_VAR} to raise it"))
        }
        EnumerationError::ZeroOrder => Failure::Usage(e.to_string()),
    }
}

#[derive(Serialize)]
struct TripletOutput {
    triplet: TripletJson,
    basepoint: usize,
    witness: Option<Vec<usize>>,
    certificates: FlatCertificates,
    phi_surjective: Option<bool>,
}

#[derive(Serialize)]
struct Prediction {
    n: usize,
    count: u64,
    multisets: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct EnumerationSummary {
    order: usize,
    quandles: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    flat_connected: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<usize>,
}

#[derive(Serialize)]
struct Summary {
    summary: EnumerationSummary,
}

#[derive(Serialize)]
struct CatalogClass {
    factors: Vec<usize>,
    flat: bool,
    connected: bool,
    classified: Vec<usize>,
}

#[derive(Serialize)]
struct CatalogEntry {
    n: usize,
    count: u64,
    classes: Vec<CatalogClass>,
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => {
            let text = read_source(&file)?;
            let rows = parse_table(&text).map_err(|e| usage(format!("{file}: {e}")))?;
            let report = validate_quandle(&rows).map_err(|e| usage(format!("{file}: {e}")))?;
            emit(&report)?;
            Ok(if report.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Make { what } => {
            let q = match what {
                Make::Trivial { n } => trivial_quandle(n).map_err(usage)?,
                Make::Dihedral { n } => dihedral_quandle(n).map_err(usage)?,
                Make::Product { left, right } => {
                    direct_product(&load_quandle(&left)?, &load_quandle(&right)?)
                }
                Make::FromTriplet { file } => {
                    let text = read_source(&file)?;
                    let t = parse_triplet(&text).map_err(|e| usage(format!("{file}: {e}")))?;
                    quandle_from_triplet(&t)
                        .map_err(|e| Failure::Negative(e.to_string()))?
                        .table
                }
            };
            emit_line(&to_json(&q))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { file } => {
            emit(&analyze(&load_quandle(&file)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { left, right } => {
            let (x, y) = (load_quandle(&left)?, load_quandle(&right)?);
            match find_isomorphism(&x, &y) {
                Some(w) => {
                    emit(&w)?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    emit_line("\"none\"")?;
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Triplet { file, basepoint } => {
            let q = load_quandle(&file)?;
            let d = displacement_triplet(&q, basepoint).map_err(usage)?;
            let out = TripletOutput {
                triplet: TripletJson::from(&d.triplet),
                basepoint,
                witness: d.witness.map(|w| w.into_images()),
                certificates: d.triplet.certificates(),
                phi_surjective: phi_map(&d.triplet).ok().map(|p| p.surjective),
            };
            emit(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { file } => {
            let q = load_quandle(&file)?;
            let d = classify_flat_connected(&q)
                .map_err(|e| Failure::Negative(format!("certificate failed: {e}")))?;
            emit(&d.report())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Predict { n } => {
            let count = predicted_count(n).map_err(usage)?;
            emit(&Prediction {
                n,
                count,
                multisets: factor_multisets(n),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            order,
            flat_connected,
            budget,
        } => {
            let opts = enumeration_options(budget)?;
            let all = enumerate_quandles(order, &opts).map_err(enumeration_failure)?;
            let summary = if flat_connected {
                let fc: Vec<QuandleTable> = all
                    .iter()
                    .filter(|q| is_connected(q) && is_flat(q))
                    .cloned()
                    .collect();
                let classes = isomorphism_classes(&fc);
                for q in &classes {
                    emit_line(&to_json(q))?;
                }
                EnumerationSummary {
                    order,
                    quandles: all.len(),
                    flat_connected: Some(fc.len()),
                    classes: Some(classes.len()),
                }
            } else {
                for q in &all {
                    emit_line(&to_json(q))?;
                }
                EnumerationSummary {
                    order,
                    quandles: all.len(),
                    flat_connected: None,
                    classes: None,
                }
            };
            emit(&Summary { summary })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { max } => {
            let mut all_ok = true;
            for n in (1..=max).step_by(2) {
                let multisets = factor_multisets(n);
                let mut classes = Vec::with_capacity(multisets.len());
                for (factors, q) in multisets.into_iter().zip(build_representatives(n)) {
                    let classified = match classify_flat_connected(&q) {
                        Ok(d) => d.factors,
                        Err(e) => {
                            eprintln!("order {n}, factors {factors:?}: {e}");
                            all_ok = false;
                            Vec::new()
                        }
                    };
                    all_ok &= classified == factors;
                    classes.push(CatalogClass {
                        flat: is_flat(&q),
                        connected: is_connected(&q),
                        factors,
                        classified,
                    });
                }
                emit(&CatalogEntry {
                    n,
                    count: predicted_count(n).map_err(usage)?,
                    classes,
                })?;
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Negative(msg)) => {
            eprintln!("quandle: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("quandle: {msg}");
            ExitCode::from(2)
        }
    }
}
