use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};

use segal_abacus::suites::Suite;
use segal_abacus_cli::commands::{self, ExampleParams, SuiteOptions};
use segal_abacus_cli::format::Object;
use segal_abacus_cli::report::{
    exit_code, render, report_json, report_text, Format, EXIT_INVALID, EXIT_PASS,
};

/// Finite presheaves on the simplex and abacus categories: examples, checks,
/// constructions and round-trip suites.
#[derive(Parser)]
#[command(name = "segal-abacus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a simplicial set: nerve-poset, nerve-category, nerve-monoid,
    /// partial-monoid, simplex, constant or boolean-lattice.
    GenExample {
        kind: String,
        #[arg(long, default_value_t = 5)]
        trunc: usize,
        /// Number of elements (posets, constants) or group order (nerve-monoid).
        #[arg(long)]
        size: Option<usize>,
        /// Poset relations such as `0<1,1<2`.
        #[arg(long)]
        relations: Option<String>,
        /// JSON table for nerve-category, nerve-monoid and partial-monoid.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Dimension of a simplex or boolean lattice.
        #[arg(long)]
        dim: Option<usize>,
        /// Keep simplices on at most this many plus one vertices.
        #[arg(long)]
        skeleton: Option<usize>,
    },
    /// Run a checker on a file.
    ///
    /// Checkers by input shape: validate (any); segal, 2segal, upper-2segal,
    /// lower-2segal (sset); stability, upper-stability, lower-stability,
    /// double-segal, double-2segal (bisset); star, unit, bicomodule,
    /// invertible-abacus, ts-compat (dset); boors, half,
    /// horizontal-pointing, vertical-pointing (sigmaset); local-initial,
    /// local-terminal (pointed); coalgebra, rigid (bsplit); culf,
    /// left-fibration, right-fibration, rel-upper-2segal, dictionary,
    /// total-space (smap).
    Check {
        what: String,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build a new object from a file.
    Construct {
        what: String,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Round trip a file through a construction and report per statement:
    /// boors (sset), star or M (smap).
    Roundtrip {
        what: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Truncate the input first.
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Run a named suite over a corpus.
    RunSuite {
        name: String,
        #[arg(long, default_value_t = 5)]
        trunc: usize,
        /// Degree bound of the presentation suite.
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory of simplicial sets and maps to use instead of the built-in corpus.
        #[arg(long, env = "SEGAL_ABACUS_FIXTURES")]
        corpus: Option<PathBuf>,
        /// Largest number of vertices in the built-in or random corpus.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Use this many seeded random posets instead of the built-in corpus.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(cli: &Cli, document: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, document).map_err(|e| anyhow!("writing {}: {e}", p.display())),
        None => {
            print!("{document}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::GenExample {
            kind,
            trunc,
            size,
            relations,
            table,
            dim,
            skeleton,
        } => {
            let params = ExampleParams {
                size: *size,
                relations: relations.clone(),
                table: table.clone(),
                dim: *dim,
                skeleton: *skeleton,
            };
            let obj = commands::gen_example(kind, &params, *trunc)?;
            emit(cli, &obj.to_string_pretty())?;
            Ok(EXIT_PASS)
        }
        Command::Check { what, input } => {
            let obj = Object::read(input)?;
            let r = commands::check(what, &obj)?;
            emit(
                cli,
                &render(&report_json(&r), || report_text(&r), cli.format),
            )?;
            Ok(exit_code(&r))
        }
        Command::Construct { what, input } => {
            let obj = Object::read(input)?;
            let built = commands::construct(what, &obj)?;
            emit(cli, &built.to_string_pretty())?;
            Ok(EXIT_PASS)
        }
        Command::Roundtrip { what, input, trunc } => {
            let mut obj = Object::read(input)?;
            if let Some(t) = trunc {
                obj = obj.truncate(*t)?;
            }
            let (v, code) = commands::roundtrip(what, &obj)?;
            let text = || {
                let mut s = format!("roundtrip {what}\n");
                for e in v["entries"].as_array().into_iter().flatten() {
                    s.push_str(&format!(
                        "  {}: {} (depth {})\n",
                        e["statement"].as_str().unwrap_or(""),
                        e["verdict"].as_str().unwrap_or(""),
                        e["verified_depth"]
                    ));
                }
                s
            };
            emit(cli, &render(&v, text, cli.format))?;
            Ok(code)
        }
        Command::RunSuite {
            name,
            trunc,
            bound,
            jobs,
            corpus,
            max_size,
            random,
            seed,
        } => {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            let suite = Suite::parse(name).ok_or_else(|| {
                anyhow!("unknown suite {name}; expected one of {}", names.join(", "))
            })?;
            let opts = SuiteOptions {
                trunc: *trunc,
                bound: *bound,
                jobs: *jobs,
                corpus_dir: corpus.clone(),
                max_size: *max_size,
                random: *random,
                seed: *seed,
            };
            let (v, report) = commands::run_suite(suite, &opts)?;
            let text = || format!("{}\n{}", suite.statement(), report_text(&report));
            emit(cli, &render(&v, text, cli.format))?;
            Ok(exit_code(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
