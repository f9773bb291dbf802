//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse/validation error, 3 bracket
//! capacity exceeded, 4 i/o error. Every error prints a single-line
//! diagnostic on stderr. Output depends only on the inputs and flags.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::catalog::{builtin_catalog, Catalog, CatalogError};
use crate::corpus::{gen_database, planted_truth_json, GenError, GenParams};
use crate::diagram::{parse_gauss, render_gauss, DatabaseError, GaussCodeError, KnotDatabase};
use crate::factor::{decompose, FactorError};
use crate::invariants::{determinant, jones, writhe, InvariantError, DEFAULT_BRACKET_CAP};
use crate::mining::{encode_db, run_knotminer, transactions_csv};
use crate::moves::simplify;

#[derive(Parser)]
#[command(
    name = "knotminer",
    version,
    about = "Mine frequent knots from knot diagram databases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic knot database with planted prime factors
    Gen {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_factors: usize,
        #[arg(long, default_value_t = 10)]
        moves: usize,
        #[arg(long, default_value_t = 7)]
        max_crossings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra obfuscating moves applied after composition
        #[arg(long, default_value_t = 0)]
        global_moves: usize,
        /// Output database file (JSON Lines)
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Optional sidecar JSON with the planted multisets
        #[arg(long, value_name = "FILE")]
        truth: Option<PathBuf>,
    },
    /// Print jones, writhe and determinant per knot
    Invariants {
        /// JSON Lines database file
        #[arg(
            long = "in",
            value_name = "FILE",
            required_unless_present = "gauss",
            conflicts_with = "gauss"
        )]
        input: Option<PathBuf>,
        /// A single extended Gauss code
        #[arg(long, value_name = "STR")]
        gauss: Option<String>,
    },
    /// Reduce a diagram with R1/R2 moves and print the result
    Simplify {
        #[arg(long, value_name = "STR")]
        gauss: String,
    },
    /// Print the prime decomposition of every record
    Decompose {
        #[arg(long, value_name = "FILE")]
        db: PathBuf,
        #[arg(long, default_value_t = 7)]
        max_crossings: usize,
    },
    /// Export the encoded transaction table as CSV
    Encode {
        #[arg(long, value_name = "FILE")]
        db: PathBuf,
        /// Output CSV file
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Mine frequent knots and write the JSON report
    Mine {
        #[arg(long, value_name = "FILE")]
        db: PathBuf,
        /// Support threshold; a knot is frequent when its support exceeds this
        #[arg(long)]
        sigma: usize,
        /// Output JSON file (stdout when omitted)
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Only report patterns that occur verbatim as a database record
        #[arg(long)]
        restrict_to_db: bool,
        #[arg(long, default_value_t = 7)]
        max_crossings: usize,
        /// Bracket crossing capacity
        #[arg(long, default_value_t = DEFAULT_BRACKET_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Db(#[from] DatabaseError),
    #[error("{0}")]
    Gauss(#[from] GaussCodeError),
    #[error("{0}")]
    Invariant(#[from] InvariantError),
    #[error("{0}")]
    Factor(#[from] FactorError),
    #[error("{0}")]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Gen(#[from] GenError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Db(DatabaseError::Io(_)) | CliError::Io { .. } => 4,
            CliError::Db(_) | CliError::Gauss(_) => 2,
            CliError::Invariant(e) => invariant_exit_code(e),
            CliError::Factor(FactorError::Record { source, .. }) => invariant_exit_code(source),
            CliError::Catalog(CatalogError::Range { .. }) => 1,
            CliError::Catalog(CatalogError::Io(_)) => 4,
            CliError::Catalog(_) => 2,
            CliError::Gen(_) => 1,
        }
    }
}

fn invariant_exit_code(e: &InvariantError) -> i32 {
    match e {
        InvariantError::CapacityExceeded { .. } => 3,
        _ => 2,
    }
}

/// Parses the arguments, runs the subcommand, and returns the process exit
/// code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return 0;
            }
            let msg = err.render().to_string();
            eprintln!(
                "{}",
                msg.lines().next().unwrap_or("error: invalid arguments")
            );
            return 1;
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn read_db(path: &Path) -> Result<KnotDatabase, CliError> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(KnotDatabase::from_jsonl(BufReader::new(file))?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_catalog(max_crossings: usize) -> Result<Catalog, CliError> {
    Ok(builtin_catalog(max_crossings)?)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen {
            count,
            max_factors,
            moves,
            max_crossings,
            seed,
            global_moves,
            out,
            truth,
        } => {
            let (db, planted) = gen_database(&GenParams {
                count,
                max_factors,
                moves,
                max_crossings,
                seed,
                global_moves,
            })?;
            write_file(&out, &db.to_jsonl_string())?;
            if let Some(truth_path) = truth {
                write_file(&truth_path, &planted_truth_json(&db, &planted))?;
            }
            Ok(())
        }
        Command::Invariants { input, gauss } => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            let print = |w: &mut dyn Write,
                         id: &str,
                         d: &crate::diagram::Diagram|
             -> Result<(), CliError> {
                let v = jones(d, DEFAULT_BRACKET_CAP)?;
                let det = determinant(d, DEFAULT_BRACKET_CAP)?;
                writeln!(
                    w,
                    "{id}\tjones={}\twrithe={}\tdet={det}",
                    v.to_text('t'),
                    writhe(d)
                )
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
            };
            if let Some(code) = gauss {
                let d = parse_gauss(&code)?;
                print(&mut w, "-", &d)?;
            } else if let Some(path) = input {
                let db = read_db(&path)?;
                for r in db.records() {
                    print(&mut w, &r.id, &r.diagram)?;
                }
            }
            Ok(())
        }
        Command::Simplify { gauss } => {
            let d = parse_gauss(&gauss)?;
            println!("{}", render_gauss(&simplify(&d)));
            Ok(())
        }
        Command::Decompose { db, max_crossings } => {
            let db = read_db(&db)?;
            let catalog = load_catalog(max_crossings)?;
            for r in db.records() {
                let dec =
                    decompose(&r.diagram, &catalog, DEFAULT_BRACKET_CAP).map_err(|source| {
                        FactorError::Record {
                            id: r.id.clone(),
                            source,
                        }
                    })?;
                println!("{}\t{dec}", r.id);
            }
            Ok(())
        }
        Command::Encode { db, out } => {
            let db = read_db(&db)?;
            let catalog = load_catalog(7)?;
            let (index, transactions) = encode_db(&db, &catalog, DEFAULT_BRACKET_CAP)?;
            write_file(&out, &transactions_csv(&db, &index, &transactions))
        }
        Command::Mine {
            db,
            sigma,
            out,
            restrict_to_db,
            max_crossings,
            cap,
        } => {
            let db = read_db(&db)?;
            let catalog = load_catalog(max_crossings)?;
            let rows = run_knotminer(&db, sigma, &catalog, cap, restrict_to_db)?;
            let mut report = serde_json::to_string_pretty(&rows).expect("report rows serialize");
            report.push('\n');
            match out {
                Some(path) => write_file(&path, &report),
                None => {
                    print!("{report}");
                    Ok(())
                }
            }
        }
    }
}
