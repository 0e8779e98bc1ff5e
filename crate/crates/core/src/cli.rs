//! Command-line front end.
//!
//! Decisions are printed as `YES` or `NO` on the first line, followed by a
//! `witness` line listing the selected test indices when there is one. Any
//! run that completes exits with status 0, whatever the decision; errors go
//! to the error stream with a nonzero status.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::compose::{compose, verify_composition, SizeGuard};
use crate::duality::{dualize, DualQuery, VERTEX_COUNT};
use crate::error::{Error, Result};
use crate::instance::{lint, Instance};
use crate::io::{gen_random, parse, serialize, GeneratorConfig, Parsed};
use crate::kernel::{kernelize_bounded, KernelResult, MaxTestSize};
use crate::solver::{greedy_cover, solve_dual, solve_exact, solve_fpt_standard, Decision};

#[derive(Debug, Parser)]
#[command(
    name = "testcover",
    version,
    about = "Test Cover solvers, kernelization and composition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
    Fpt,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether an instance has a test cover within the budget.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the `budget` field of the input file.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Parameter k for `--mode fpt`; defaults to the file's `parameter`.
        #[arg(long = "param")]
        param: Option<usize>,
    },
    /// Apply the bounded-test-size kernel.
    Kernelize {
        #[arg(long)]
        input: PathBuf,
        /// Maximum test size, or `auto` for the largest test of the input.
        #[arg(long, default_value = "auto")]
        r: MaxTestSize,
        /// Defaults to the file's `parameter`, then its `budget`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// OR-compose instances that share a vertex count.
    Compose {
        #[arg(long)]
        budget: usize,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compose instances and check the composition with the exact solver.
    VerifyCompose {
        #[arg(long)]
        budget: usize,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Run even when the composed instance exceeds the size guard.
        #[arg(long)]
        force: bool,
    },
    /// Solve the dual query: a cover of at most n − k tests.
    Dual {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the dualized query here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_instance(path: &Path, err: &mut dyn Write) -> Result<Parsed> {
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    let parsed = parse(&text).map_err(|e| match e {
        Error::Parse { .. } | Error::InvalidInstance(_) => {
            Error::InvalidArgument(format!("{}: {e}", path.display()))
        }
        other => other,
    })?;
    for l in lint(&parsed.instance) {
        writeln!(err, "warning: {}: {l}", path.display())?;
    }
    Ok(parsed)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, format!("{text}\n")).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

fn print_decision(
    out: &mut dyn Write,
    decision: Decision,
    witness: Option<&[usize]>,
) -> Result<()> {
    writeln!(out, "{decision}")?;
    if let Some(w) = witness {
        let line = w.iter().fold(String::from("witness"), |mut acc, t| {
            acc.push(' ');
            acc.push_str(&t.to_string());
            acc
        });
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn missing(what: &str) -> Error {
    Error::InvalidArgument(format!(
        "{what} not given on the command line or in the input file"
    ))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Solve {
            input,
            budget,
            mode,
            param,
        } => {
            let parsed = read_instance(&input, err)?;
            let budget = budget.or(parsed.budget);
            match mode {
                Mode::Exact => {
                    let budget = budget.ok_or_else(|| missing("--budget"))?;
                    let outcome = solve_exact(&parsed.instance, budget);
                    print_decision(out, outcome.decision, outcome.witness.as_deref())?;
                }
                Mode::Fpt => {
                    let k = param
                        .or(parsed.parameter)
                        .or(budget)
                        .ok_or_else(|| missing("--param"))?;
                    let outcome = solve_fpt_standard(&parsed.instance, k);
                    print_decision(out, outcome.decision, outcome.witness.as_deref())?;
                }
                Mode::Greedy => {
                    let cover = greedy_cover(&parsed.instance)
                        .filter(|c| budget.is_none_or(|b| c.len() <= b));
                    let decision = Decision::from(cover.is_some());
                    print_decision(out, decision, cover.as_deref())?;
                }
            }
        }
        Command::Kernelize {
            input,
            r,
            k,
            out: path,
        } => {
            let parsed = read_instance(&input, err)?;
            let k = k
                .or(parsed.parameter)
                .or(parsed.budget)
                .ok_or_else(|| missing("--k"))?;
            let outcome = kernelize_bounded(&parsed.instance, r, k)?;
            match outcome.result {
                KernelResult::TrivialNo => writeln!(out, "NO")?,
                KernelResult::Pass(_) => writeln!(out, "PASS")?,
            }
            writeln!(out, "r {}", outcome.r)?;
            writeln!(out, "k {}", outcome.k)?;
            writeln!(out, "vertex-bound {}", outcome.vertex_bound)?;
            writeln!(out, "test-bound {}", outcome.test_bound)?;
            if let Some(path) = path {
                let q = outcome.query();
                write_file(&path, &serialize(&q.instance, Some(q.budget), q.parameter))?;
            }
        }
        Command::Compose {
            budget,
            inputs,
            out: path,
        } => {
            let instances = read_all(&inputs, err)?;
            let composed = compose(&instances, budget)?;
            let text = serialize(&composed.qstar, Some(composed.kstar), Some(composed.kstar));
            match path {
                Some(path) => {
                    write_file(&path, &text)?;
                    writeln!(out, "inputs {}", composed.t())?;
                    writeln!(out, "gadget-width {}", composed.layout.l)?;
                    writeln!(out, "kstar {}", composed.kstar)?;
                    writeln!(out, "vertices {}", composed.qstar.n())?;
                    writeln!(out, "tests {}", composed.qstar.m())?;
                }
                None => writeln!(out, "{text}")?,
            }
        }
        Command::VerifyCompose {
            budget,
            inputs,
            force,
        } => {
            let instances = read_all(&inputs, err)?;
            let guard = SizeGuard {
                force,
                ..SizeGuard::default()
            };
            let report = verify_composition(&instances, budget, guard)?;
            writeln!(out, "{report}")?;
        }
        Command::Dual {
            input,
            k,
            out: path,
        } => {
            let parsed = read_instance(&input, err)?;
            let query = DualQuery::new(parsed.instance, k, VERTEX_COUNT)?;
            let dual = dualize(&query)?;
            let outcome = solve_dual(&query.instance, k)?;
            print_decision(out, outcome.decision, outcome.witness.as_deref())?;
            writeln!(out, "dual-parameter {}", dual.k)?;
            if let Some(path) = path {
                write_file(
                    &path,
                    &serialize(&dual.instance, Some(dual.k), Some(dual.k)),
                )?;
            }
        }
        Command::Gen {
            n,
            m,
            r,
            seed,
            out: path,
        } => {
            let instance = gen_random(GeneratorConfig { n, m, r, seed })?;
            let text = serialize(&instance, None, None);
            match path {
                Some(path) => write_file(&path, &text)?,
                None => writeln!(out, "{text}")?,
            }
        }
    }
    Ok(())
}

fn read_all(paths: &[PathBuf], err: &mut dyn Write) -> Result<Vec<Instance>> {
    paths
        .iter()
        .map(|p| read_instance(p, err).map(|parsed| parsed.instance))
        .collect()
}
