//! `linkring`: JSON in, JSON out.
//!
//! Exit status 0 on success, 1 when the input is well formed but the
//! operation fails on it (`{"error": code, "detail": ...}` on stdout), 2 on
//! malformed input.

mod commands;
mod selftest;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::Failure;
use linkring::serial::{field_of_matrix, from_json, ChainDoc, CertifiedModuleDoc, MatrixDoc, SeifertDoc};
use linkring::{FieldKind, Fp, Rational};

#[derive(Parser)]
#[command(name = "linkring", version, about = "Seifert modules and link-module presentations over free group rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Covering presentation 1 - e + e z of a Seifert module.
    Cover { input: PathBuf },
    /// Decide primitivity, with a certificate when primitive.
    Primitive {
        #[arg(long, default_value_t = 4)]
        bound: usize,
        input: PathBuf,
    },
    /// Near-projection splitting of a one-block module.
    Split { input: PathBuf },
    /// Check a claimed certificate against a module.
    VerifyCertificate { input: PathBuf },
    /// Check that a square matrix has invertible augmentation.
    CheckFlk { input: PathBuf },
    /// Mayer–Vietoris presentation over a tree.
    Linearize {
        /// Comma-separated words; the geodesic closure is taken.
        #[arg(long, default_value = "")]
        tree: String,
        input: PathBuf,
    },
    /// Seifert module and refinement map of a tree pair.
    Transversalize {
        #[arg(long, default_value = "")]
        tree: String,
        input: PathBuf,
    },
    /// Normalized Alexander polynomial of a one-block module.
    Alexander { input: PathBuf },
    /// Normalized determinant of the abelianization of a matrix.
    AbelDet { input: PathBuf },
    /// Alternating product of abelianized determinant classes of a chain.
    Torsion { input: PathBuf },
    /// Two-sided inverse over the group ring with bounded support.
    Invert {
        #[arg(long, default_value_t = 4)]
        support_bound: usize,
        input: PathBuf,
    },
    /// Inverse of the Magnus–Fox image modulo degree > D.
    SeriesInverse {
        #[arg(long, default_value_t = 6)]
        degree: usize,
        input: PathBuf,
    },
    /// Randomized property checks, seeded from LINKRING_SEED.
    Selftest {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Malformed(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn read<T: for<'de> serde::Deserialize<'de>>(path: &PathBuf) -> Result<T, Failure> {
    Ok(from_json(&read_input(path)?)?)
}

fn tree_words(arg: &str) -> Vec<String> {
    arg.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(String::from)
        .collect()
}

macro_rules! over_field {
    ($field:expr, $f:ident($($arg:expr),*)) => {
        match $field {
            FieldKind::Rationals => commands::$f::<Rational>($($arg),*),
            FieldKind::Prime(_) => commands::$f::<Fp>($($arg),*),
        }
    };
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Cover { input } => {
            let doc: SeifertDoc = read(&input)?;
            over_field!(commands::seifert_field(&doc)?, cover(&doc))
        }
        Command::Primitive { bound, input } => {
            let doc: SeifertDoc = read(&input)?;
            over_field!(commands::seifert_field(&doc)?, primitive(&doc, bound))
        }
        Command::Split { input } => {
            let doc: SeifertDoc = read(&input)?;
            over_field!(commands::seifert_field(&doc)?, split(&doc))
        }
        Command::VerifyCertificate { input } => {
            let doc: CertifiedModuleDoc = read(&input)?;
            over_field!(commands::seifert_field(&doc.module)?, verify_certificate(&doc))
        }
        Command::CheckFlk { input } => {
            let doc: MatrixDoc = read(&input)?;
            over_field!(field_of_matrix(&doc)?, check_flk_cmd(&doc))
        }
        Command::Linearize { tree, input } => {
            let doc: MatrixDoc = read(&input)?;
            over_field!(field_of_matrix(&doc)?, linearize(&doc, &tree_words(&tree)))
        }
        Command::Transversalize { tree, input } => {
            let doc: MatrixDoc = read(&input)?;
            over_field!(field_of_matrix(&doc)?, transversalize_cmd(&doc, &tree_words(&tree)))
        }
        Command::Alexander { input } => {
            let doc: SeifertDoc = read(&input)?;
            over_field!(commands::seifert_field(&doc)?, alexander_cmd(&doc))
        }
        Command::AbelDet { input } => {
            let doc: MatrixDoc = read(&input)?;
            over_field!(field_of_matrix(&doc)?, abel_det_cmd(&doc))
        }
        Command::Torsion { input } => {
            let doc: ChainDoc = read(&input)?;
            let first = doc
                .modules
                .first()
                .ok_or_else(|| Failure::Malformed("chain is empty".into()))?;
            over_field!(commands::seifert_field(first)?, torsion_cmd(&doc))
        }
        Command::Invert { support_bound, input } => {
            let doc: MatrixDoc = read(&input)?;
            over_field!(field_of_matrix(&doc)?, invert(&doc, support_bound))
        }
        Command::SeriesInverse { degree, input } => {
            let doc: MatrixDoc = read(&input)?;
            over_field!(field_of_matrix(&doc)?, series_inverse(&doc, degree))
        }
        Command::Selftest { cases } => {
            let seed = match std::env::var("LINKRING_SEED") {
                Ok(s) => s
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Failure::Malformed(format!("LINKRING_SEED is not a u64: {s:?}")))?,
                Err(_) => 0,
            };
            let report = selftest::run(seed, cases);
            if report["ok"] == json!(true) {
                Ok(report)
            } else {
                Err(Failure::Domain {
                    code: "SelftestFailed",
                    detail: report,
                })
            }
        }
    }
}

fn print(v: &Value) {
    let mut out = std::io::stdout().lock();
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain { code, detail }) => {
            print(&json!({ "error": code, "detail": detail }));
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            print(&json!({ "error": "MalformedInput", "detail": msg }));
            ExitCode::from(2)
        }
    }
}
