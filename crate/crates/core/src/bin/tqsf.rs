// Copyright 2026 The tqsf Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tqsf::cli::{self, ExperimentConfig, StateSpec, DEFAULT_SEED, DEFAULT_TROTTER_STEPS};
use tqsf::evolution::EvolutionMode;
use tqsf::filter::FilterMethod;
use tqsf::verify::verify;
use tqsf::TqsfError;

#[derive(Parser)]
#[command(
    name = "tqsf",
    version,
    about = "Total-spin filtering on a statevector simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    A,
    #[value(name = "b-s2j")]
    BS2j,
    #[value(name = "b-hj")]
    BHj,
    C,
    #[value(name = "c-deferred")]
    CDeferred,
}

impl From<Method> for FilterMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::A => FilterMethod::A,
            Method::BS2j => FilterMethod::BS2j,
            Method::BHj => FilterMethod::BHj,
            Method::C => FilterMethod::C,
            Method::CDeferred => FilterMethod::CDeferred,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Trotter,
}

#[derive(Subcommand)]
enum Command {
    /// Filter an initial state and write the outcome table.
    Run {
        #[arg(long)]
        n: usize,
        /// hadamard, hadamard-x13, a bitstring (most significant qubit first) or an amplitude file.
        #[arg(long, default_value = "hadamard")]
        state: String,
        #[arg(long, value_enum, default_value = "a")]
        method: Method,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Trotter slices per controlled power (trotter mode only).
        #[arg(long, default_value_t = DEFAULT_TROTTER_STEPS)]
        trotter_steps: usize,
        /// 0 = exact enumeration only (exact mode).
        #[arg(long, default_value_t = 0)]
        shots: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// JSON result document.
        #[arg(long)]
        out: PathBuf,
        /// Also write a CSV histogram.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write an SVG bar chart.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Sample x_k = k/n from the z-register of the Hadamard state.
    RngDemo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check every method against the diagonalization oracle for n = 2..=n-max.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print register sizes and qubit indices.
    Layout {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "a")]
        method: Method,
    },
}

fn exit_code(e: &TqsfError) -> u8 {
    match e {
        TqsfError::Capacity { .. } => 3,
        TqsfError::Input(_) | TqsfError::Configuration(_) | TqsfError::Decode(_) => 2,
        TqsfError::Internal(_) => 1,
    }
}

fn execute(command: Command) -> Result<ExitCode, TqsfError> {
    match command {
        Command::Run {
            n,
            state,
            method,
            mode,
            trotter_steps,
            shots,
            seed,
            out,
            csv,
            plot,
        } => {
            let config = ExperimentConfig {
                n,
                initial_state: StateSpec::parse(&state),
                method: method.into(),
                mode: match mode {
                    Mode::Exact => EvolutionMode::Exact,
                    Mode::Trotter => EvolutionMode::Trotter {
                        steps: trotter_steps,
                    },
                },
                shots,
                seed,
            };
            let (doc, _) = cli::run(&config)?;
            cli::write_json(&doc, &out)?;
            if let Some(path) = csv {
                cli::write_csv(&doc, &path)?;
            }
            if let Some(path) = plot {
                cli::write_svg(&doc, &path)?;
            }
            print!("{}", cli::summarize(&doc));
            Ok(ExitCode::SUCCESS)
        }
        Command::RngDemo {
            n,
            shots,
            seed,
            out,
        } => {
            let summary = cli::rng_demo(n, shots, seed, out.as_deref())?;
            println!(
                "n = {}, {} shots via the {} route: mean {:.6}, variance {:.6} (binomial: 0.5, {:.6})",
                summary.n,
                summary.shots,
                summary.route,
                summary.mean,
                summary.variance,
                0.25 / n as f64
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { n_max, out } => {
            let report = verify(n_max)?;
            let text = serde_json::to_string_pretty(&report)
                .map_err(|e| TqsfError::Internal(e.to_string()))?;
            match out {
                Some(path) => std::fs::write(&path, text + "\n").map_err(|e| {
                    TqsfError::Input(format!("cannot write {}: {e}", path.display()))
                })?,
                None => println!("{text}"),
            }
            for c in report.failures() {
                eprintln!("FAILED {} (n = {}): {}", c.name, c.n, c.detail);
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Layout { n, method } => {
            print!("{}", cli::describe_layout(method.into(), n)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Cli::parse();
    match execute(args.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
