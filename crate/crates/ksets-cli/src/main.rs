//! `ksets` command line: seeded instance generation, per-k analysis tables,
//! verdict reports, randomized sweeps, and SVG plots.
//!
//! Exit codes: 0 = success and all verdicts hold; 1 = some verdict failed;
//! 2 = input or usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ksets::fileio::{parse_instance, write_instance};
use ksets::generate::{generate_instance, GenSpec, Shape};
use ksets::instance::Instance;
use ksets::svg::{render_svg, View};
use ksets::verify::{sweep, KChoice, Pipeline, SweepConfig};

#[derive(Parser)]
#[command(
    name = "ksets",
    version,
    about = "Exact k-set / k-level analysis of planar point sets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Uniform,
    Parabola,
    GridJitter,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Uniform => Shape::Uniform,
            ShapeArg::Parabola => Shape::Parabola,
            ShapeArg::GridJitter => Shape::GridJitter,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewArg {
    Primal,
    Dual,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded random instance and write it as an instance file.
    Gen {
        #[arg(long, value_enum, default_value = "uniform")]
        shape: ShapeArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the per-k count table for an instance.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the verifier and report every verdict.
    Verify {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        all_k: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate and verify many seeded instances; print the summary as JSON.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        all_k: bool,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "uniform")]
        shape: ShapeArg,
        #[arg(long, default_value_t = 1000)]
        range: i64,
    },
    /// Render an instance as SVG.
    Plot {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "dual")]
        view: ViewArg,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_instance(path: &PathBuf) -> Result<Instance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn pick_ks(n: usize, k: Option<usize>, all_k: bool) -> Result<Vec<usize>, String> {
    match (k, all_k) {
        (Some(_), true) => Err("pass either --k or --all-k, not both".into()),
        (Some(k), false) => Ok(vec![k]),
        (None, true) => Ok((1..n).collect()),
        (None, false) => Err("one of --k or --all-k is required".into()),
    }
}

/// Ok(true) = success with all verdicts holding, Ok(false) = a verdict
/// failed, Err = input error.
fn run(cli: Cli) -> Result<bool, String> {
    match cli.cmd {
        Cmd::Gen {
            shape,
            n,
            range,
            seed,
            output,
        } => {
            if n < 2 {
                return Err("--n must be at least 2".into());
            }
            let spec = GenSpec {
                shape: shape.into(),
                n,
                range,
                seed,
            };
            let inst = generate_instance(&spec).map_err(|e| e.to_string())?;
            emit(&output, &write_instance(&inst))?;
            Ok(true)
        }
        Cmd::Analyze { file, json } => {
            let inst = read_instance(&file)?;
            let pipeline = Pipeline::new(inst);
            let reports = pipeline.report_all().map_err(|e| e.to_string())?;
            if json {
                let all: Vec<_> = reports.iter().collect();
                println!("{}", serde_json::to_string_pretty(&all).unwrap());
            } else {
                println!(
                    "{:>3} {:>12} {:>12} {:>10} {:>12} {:>6} {:>8}",
                    "k", "ksets_above", "ksets_below", "t=|V_k-1|", "below_level", "nk", "verdicts"
                );
                for r in &reports {
                    println!(
                        "{:>3} {:>12} {:>12} {:>10} {:>12} {:>6} {:>8}",
                        r.k,
                        r.ksets_above,
                        r.ksets_below,
                        r.t,
                        r.below_level,
                        r.nk,
                        if r.all_hold() { "ok" } else { "FAILED" }
                    );
                }
            }
            Ok(reports.iter().all(|r| r.all_hold()))
        }
        Cmd::Verify {
            file,
            k,
            all_k,
            json,
        } => {
            let inst = read_instance(&file)?;
            let ks = pick_ks(inst.n(), k, all_k)?;
            let pipeline = Pipeline::new(inst);
            let mut reports = Vec::new();
            for k in ks {
                reports.push(pipeline.report(k).map_err(|e| e.to_string())?);
            }
            let ok = reports.iter().all(|r| r.all_hold());
            if json {
                if reports.len() == 1 {
                    println!("{}", reports[0].to_json());
                } else {
                    println!("{}", serde_json::to_string_pretty(&reports).unwrap());
                }
            } else {
                for r in &reports {
                    println!(
                        "n={} k={}: t={} x={} tangents={} chain_crossings={} below_level={} nk={} ksets_above={} ksets_below={} easy_case={} bound_ok={}",
                        r.n, r.k, r.t, r.x, r.tangents, r.chain_crossings, r.below_level, r.nk,
                        r.ksets_above, r.ksets_below, r.easy_case, r.bound_ok
                    );
                    for v in &r.verdicts {
                        println!(
                            "  {:10} {} {} {}",
                            v.name,
                            v.lhs,
                            v.rhs,
                            if v.holds { "ok" } else { "FAILED" }
                        );
                    }
                }
            }
            Ok(ok)
        }
        Cmd::Sweep {
            n,
            k,
            all_k,
            trials,
            seed,
            shape,
            range,
        } => {
            if n < 2 {
                return Err("--n must be at least 2".into());
            }
            let ks = pick_ks(n, k, all_k)?;
            let choice = if ks.len() == 1 {
                KChoice::One(ks[0])
            } else {
                KChoice::All
            };
            if let KChoice::One(k) = choice {
                if k < 1 || k > n - 1 {
                    return Err(format!("--k {k} out of range for --n {n}"));
                }
            }
            let cfg = SweepConfig {
                n,
                k: choice,
                trials,
                seed,
                shape: shape.into(),
                range,
            };
            let summary = sweep(&cfg);
            println!("{}", summary.to_json());
            Ok(summary.failures.is_empty())
        }
        Cmd::Plot {
            file,
            k,
            view,
            output,
        } => {
            let inst = read_instance(&file)?;
            let doc = match view {
                ViewArg::Primal => render_svg(&inst, k, View::Primal),
                ViewArg::Dual => render_svg(&inst, k, View::Dual),
            }
            .map_err(|e| e.to_string())?;
            emit(&output, &doc)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
