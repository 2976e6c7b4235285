use clap::{Parser, Subcommand};
use cuboid_core::pipeline::{
    default_golden_dir, format::write_poly, instance_check, parse_stage_list, run_all, Config,
    DumpObject, GoldenData, Pipeline, PipelineError, Verdict,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "certify",
    version,
    about = "Exact certificate that the second cuboid polynomial has no quintic 5+5 splitting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the certification stages and print or write the report.
    Run {
        /// Stages to run, e.g. `0-3,8`.
        #[arg(long, default_value = "0-8")]
        stages: String,
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, env = "CERTIFY_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Continue after a failed stage.
        #[arg(long)]
        keep_going: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Certify one coprime pair p != q.
    Instance {
        #[arg(long, allow_negative_numbers = true)]
        p: String,
        #[arg(long, allow_negative_numbers = true)]
        q: String,
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a computed object in the polynomial file format.
    Dump {
        #[arg(long, value_parser = ["E2", "E3", "F", "f", "disc", "P6", "P28"])]
        object: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, env = "CERTIFY_JOBS", default_value_t = 1)]
        jobs: usize,
    },
}

enum Failure {
    Verification,
    Usage(String),
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(json: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, json).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn config(golden: Option<PathBuf>, cache: Option<PathBuf>, jobs: usize) -> Config {
    Config {
        golden_dir: golden.unwrap_or_else(default_golden_dir),
        cache_dir: cache,
        jobs: jobs.max(1),
        ..Config::default()
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run {
            stages,
            golden,
            cache,
            jobs,
            keep_going,
            report,
        } => {
            let mut cfg = config(golden, cache, jobs);
            cfg.stages = parse_stage_list(&stages)?;
            cfg.keep_going = keep_going;
            let cert = run_all(&cfg)?;
            for s in &cert.stages {
                let status = serde_json::to_value(s.status).unwrap_or_default();
                eprintln!(
                    "stage {} {:<32} {:<7} {} ms{}",
                    s.stage,
                    s.title,
                    status.as_str().unwrap_or("?"),
                    s.wall_ms,
                    s.reason
                        .as_ref()
                        .map(|r| format!("  ({r})"))
                        .unwrap_or_default()
                );
            }
            emit(&cert.to_json_pretty(), report.as_deref())?;
            match cert.verdict {
                Verdict::Pass => Ok(()),
                Verdict::Fail => Err(Failure::Verification),
            }
        }
        Command::Instance {
            p,
            q,
            golden,
            cache,
            report,
        } => {
            let parse = |name: &str, v: &str| {
                v.parse::<cuboid_core::Int>()
                    .map_err(|e| Failure::Usage(format!("--{name}: {e}")))
            };
            let (p, q) = (parse("p", &p)?, parse("q", &q)?);
            let result = instance_check(p, q, &config(golden, cache, 1))?;
            eprintln!("s0 = {}: {}", result.s0, result.statement);
            let json = serde_json::to_string_pretty(&result).expect("reports serialize");
            emit(&json, report.as_deref())?;
            match result.verdict {
                Verdict::Pass => Ok(()),
                Verdict::Fail => Err(Failure::Verification),
            }
        }
        Command::Dump {
            object,
            out,
            golden,
            cache,
            jobs,
        } => {
            let object: DumpObject = object.parse()?;
            let cfg = config(golden, cache, jobs);
            let mut pipeline = Pipeline::new(GoldenData::load(&cfg.golden_dir)?, cfg);
            let poly = pipeline.dump(object)?;
            write_poly(&out, &poly).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
