use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use covering_hecke_cli::config::{self, Job};
use covering_hecke_cli::report;
use covering_hecke_cli::svg;

#[derive(Parser)]
#[command(name = "covering-hecke", version, about = "Depth-zero Hecke algebra computations on tame covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Path to the TOML job configuration.
    #[arg(long)]
    config: PathBuf,
    /// Override the config's sampling seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the word-length cap for sampled checks.
    #[arg(long)]
    bound_length: Option<u32>,
    /// Override the offset cap for wall enumeration and drawing.
    #[arg(long)]
    bound_offset: Option<i64>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured tasks and print the full report.
    Report(Common),
    /// Run the configured tasks and print only the pass/fail lines.
    Check(Common),
    /// Emit the rank <= 2 apartment figure for the first character.
    Apartment(Common),
}

fn load_job(common: &Common) -> Result<Job, config::ConfigError> {
    let (_, mut job) = config::load(&common.config)?;
    if let Some(s) = common.seed {
        job.seed = s;
    }
    if let Some(l) = common.bound_length {
        job.bounds.length = l;
    }
    if let Some(o) = common.bound_offset {
        job.bounds.offset = o;
    }
    Ok(job)
}

fn emit(common: &Common, text: &str) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Report(c) | Command::Check(c) | Command::Apartment(c) => c,
    };
    let job = match load_job(common) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let code = match &cli.command {
        Command::Report(_) | Command::Check(_) => {
            let rep = report::run(&job);
            let text = if matches!(cli.command, Command::Check(_)) {
                rep.text
                    .lines()
                    .filter(|l| l.contains("check ") || l.starts_with("summary"))
                    .map(|l| format!("{}\n", l.trim_start()))
                    .collect::<String>()
            } else {
                rep.text.clone()
            };
            if emit(common, &text).is_err() {
                eprintln!("cannot write output");
                return ExitCode::from(2);
            }
            if rep.errors > 0 {
                2
            } else if rep.failures > 0 {
                1
            } else {
                0
            }
        }
        Command::Apartment(_) => {
            let chi = &job.characters[0];
            match covering_hecke::chi_geometry::ChiGeometry::compute(&job.cover, &job.field, chi)
                .map_err(|e| svg::SvgError(e.to_string()))
                .and_then(|geom| svg::apartment_svg(&job.cover, &geom, job.bounds.offset))
            {
                Ok(doc) => {
                    if emit(common, &doc).is_err() {
                        eprintln!("cannot write output");
                        return ExitCode::from(2);
                    }
                    0
                }
                Err(e) => {
                    eprintln!("{e}");
                    2
                }
            }
        }
    };
    // Timing stays off stdout so reports are byte-stable.
    eprintln!("elapsed: {:?}", start.elapsed());
    ExitCode::from(code)
}
