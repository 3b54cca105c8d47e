//! Command-line surface: compute a characteristic polynomial, verify a grid
//! against the brute-force oracles, adjudicate the published table, or emit a
//! region-count sequence. Exit codes: 0 success, 1 verification mismatch,
//! 2 usage error, 3 internal invariant failure.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use genthresh::model::odd_primes_from;
use genthresh::reference::{chi_seo_ct, chi_seo_st};
use genthresh::{
    adjudicate, characteristic_polynomial, count_admissible_tuples, validity_bound,
    ArrangementSpec, Error, Family, PaperTable, DEFAULT_BUDGET,
};

/// The n = 5 table rows need more than the default oracle budget.
const TABLE_BUDGET: u64 = 8 * DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "genthresh", version, about = "Exact characteristic polynomials and region counts of generalized threshold arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the characteristic polynomial and region count of T_{n,k,l}
    Chi {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check the engine against the enumeration oracle and the closed forms
    /// over a parameter grid; mismatches stream as JSON lines
    Verify {
        #[arg(long, value_name = "INT")]
        n_max: u32,
        #[arg(long, value_name = "INT")]
        k_max: u32,
        #[arg(long, value_name = "INT")]
        l_max: u32,
        #[arg(long, value_name = "INT")]
        primes: usize,
    },
    /// Adjudicate every published table row: printed value, engine value,
    /// verdict
    Table,
    /// Region counts r(T_{n,k,l}) over a range of n
    Sequence {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_name = "INT")]
        n_from: u32,
        #[arg(long, value_name = "INT")]
        n_to: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Plain,
}

/// Canonical output schema; key order is fixed by field order.
#[derive(Serialize)]
struct OutputDocument {
    n: u32,
    k: u32,
    l: u32,
    family: Family,
    k_eff: u32,
    coefficients: Vec<String>,
    regions: String,
    samples: Vec<Sample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<String>,
    runtime_ms: u128,
}

#[derive(Serialize)]
struct Sample {
    t: u64,
    count: String,
}

#[derive(Serialize)]
struct TableRow {
    family: Family,
    n: u32,
    k: u32,
    paper: String,
    engine: String,
    verdict: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    notes: String,
}

#[derive(Serialize)]
struct Mismatch {
    n: u32,
    k: u32,
    l: u32,
    family: Family,
    k_eff: u32,
    kind: String,
    detail: String,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Chi { n, k, l, format } => cmd_chi(n, k, l, format),
        Command::Verify {
            n_max,
            k_max,
            l_max,
            primes,
        } => cmd_verify(n_max, k_max, l_max, primes),
        Command::Table => cmd_table(),
        Command::Sequence { k, l, n_from, n_to } => cmd_sequence(k, l, n_from, n_to),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(classify(&e))
        }
    }
}

/// Usage-level failures (bad parameters, work bound) exit 2; anything else is
/// a broken internal invariant and exits 3.
fn classify(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec(_) | Error::BudgetExceeded { .. } => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn document(spec: &ArrangementSpec, started: Instant) -> Result<OutputDocument, Error> {
    let res = characteristic_polynomial(spec)?;
    let n = spec.n as usize;
    Ok(OutputDocument {
        n: spec.n,
        k: spec.k,
        l: spec.l,
        family: res.reduced.family,
        k_eff: res.reduced.k_eff,
        coefficients: (0..=n).map(|i| res.poly.coeff(i).to_string()).collect(),
        regions: res.regions.to_string(),
        samples: res
            .samples
            .iter()
            .map(|(t, c)| Sample {
                t: *t,
                count: c.to_string(),
            })
            .collect(),
        verdict: None,
        runtime_ms: started.elapsed().as_millis(),
    })
}

fn cmd_chi(n: u32, k: u32, l: u32, format: Format) -> Result<u8, Error> {
    let started = Instant::now();
    let spec = ArrangementSpec::new(n, k, l)?;
    let res = characteristic_polynomial(&spec)?;
    match format {
        Format::Plain => println!("{}; regions = {}", res.poly.to_plain_string(), res.regions),
        Format::Latex => println!("{}; regions = {}", res.poly.to_latex_string(), res.regions),
        Format::Json => {
            let doc = document(&spec, started)?;
            println!("{}", serde_json::to_string(&doc).expect("document serializes"));
        }
    }
    Ok(0)
}

fn cmd_verify(n_max: u32, k_max: u32, l_max: u32, primes: usize) -> Result<u8, Error> {
    if n_max < 1 || primes < 1 {
        return Err(Error::InvalidSpec(
            "verify needs n-max >= 1 and primes >= 1".into(),
        ));
    }
    let mut mismatches = Vec::new();
    for n in 1..=n_max {
        for k in 0..=k_max {
            for l in 0..=l_max {
                let spec = ArrangementSpec::new(n, k, l)?;
                let reduced = spec.reduce();
                let res = characteristic_polynomial(&spec)?;
                let mut push = |kind: &str, detail: String| {
                    mismatches.push(Mismatch {
                        n,
                        k,
                        l,
                        family: reduced.family,
                        k_eff: reduced.k_eff,
                        kind: kind.into(),
                        detail,
                    })
                };
                // the oracle counts the raw forbidden set {-l..k}, so this
                // checks the parity reduction and the engine in one stroke
                let raw: Vec<i64> = (-(l as i64)..=k as i64).collect();
                for p in odd_primes_from(validity_bound(n, reduced.k_eff), primes) {
                    let brute = count_admissible_tuples(n, p, &raw, DEFAULT_BUDGET)?;
                    let engine = res.poly.eval(&BigInt::from(p));
                    if brute != engine {
                        push("oracle", format!("t={p}: engine {engine}, oracle {brute}"));
                    }
                }
                let reference = match (reduced.family, reduced.k_eff, n >= 2) {
                    (Family::St, 1, true) => Some(chi_seo_st(n)),
                    (Family::Ct, 3, true) => Some(chi_seo_ct(n)?),
                    _ => None,
                };
                if let Some(r) = reference {
                    if r != res.poly {
                        push("reference", format!("closed form {r}, engine {}", res.poly));
                    }
                }
            }
        }
    }
    for m in &mismatches {
        println!("{}", serde_json::to_string(m).expect("mismatch serializes"));
    }
    if mismatches.is_empty() {
        eprintln!("verify: grid n<={n_max} k<={k_max} l<={l_max} clean at {primes} prime(s) per cell");
        Ok(0)
    } else {
        eprintln!("verify: {} mismatch(es)", mismatches.len());
        Ok(EXIT_MISMATCH)
    }
}

fn cmd_table() -> Result<u8, Error> {
    let table = PaperTable::load();
    for entry in &table.entries {
        let report = adjudicate(&entry.spec(), TABLE_BUDGET)?;
        let row = TableRow {
            family: entry.family,
            n: entry.n,
            k: entry.k,
            paper: entry.polynomial().to_plain_string(),
            engine: report.engine_poly.to_plain_string(),
            verdict: report.verdict.to_string(),
            notes: report.notes,
        };
        println!("{}", serde_json::to_string(&row).expect("row serializes"));
    }
    // disputes are reportage, not failure
    Ok(0)
}

fn cmd_sequence(k: u32, l: u32, n_from: u32, n_to: u32) -> Result<u8, Error> {
    if n_from < 1 || n_to < n_from {
        return Err(Error::InvalidSpec(
            "sequence needs 1 <= n-from <= n-to".into(),
        ));
    }
    let mut docs = Vec::new();
    for n in n_from..=n_to {
        let started = Instant::now();
        let spec = ArrangementSpec::new(n, k, l)?;
        docs.push(document(&spec, started)?);
    }
    let values: Vec<String> = docs.iter().map(|d| d.regions.clone()).collect();
    println!("{}", values.join(", "));
    for doc in &docs {
        println!("{}", serde_json::to_string(doc).expect("document serializes"));
    }
    Ok(0)
}
