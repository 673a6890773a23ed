use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use srcodes::cli::{self, CliError, DecoderChoice};

/// Binary 2x2 sum-rank-metric codes from pairs of quaternary codes:
/// parameters, encoding, two-step and baseline decoding, exhaustive
/// verification, Monte Carlo comparison, and design-region search.
#[derive(Parser)]
#[command(name = "srcodes", version)]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report pair parameters, dsr, radius and design conditions
    Params {
        #[arg(long)]
        config: PathBuf,
    },
    /// Encode a message pair into a sum-rank word
    Encode {
        #[arg(long)]
        config: PathBuf,
        /// Message for C1 (comma-separated symbols: 0, 1, w, w2)
        #[arg(long)]
        m1: String,
        /// Message for C2
        #[arg(long)]
        m2: String,
        /// Also print the 2x2 binary matrix dump
        #[arg(long)]
        matrices: bool,
    },
    /// Decode a received word (two-line v1:/v2: format)
    Decode {
        #[arg(long)]
        config: PathBuf,
        /// Word file; stdin when omitted
        #[arg(long)]
        input: Option<PathBuf>,
        /// two-step | symmetric | ccq | both
        #[arg(long, default_value = "two-step")]
        decoder: String,
    },
    /// Decode every error word up to the radius (or --wmax) exhaustively
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Heaviest error weight to enumerate (default: the unique radius)
        #[arg(long)]
        wmax: Option<usize>,
        /// two-step | both (both adds the baseline comparison)
        #[arg(long, default_value = "two-step")]
        decoder: String,
    },
    /// Monte Carlo success rates and decoder cost, as CSV
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated list of sum-rank error weights
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List code pairs decodable by two-step but outside the baseline
    /// region, verified exhaustively
    DesignRegion {
        #[arg(long, default_value_t = 4)]
        lmax: usize,
    },
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, exiting quietly if the downstream pipe has closed.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn run(args: Args) -> Result<ExitCode, CliError> {
    match args.cmd {
        Cmd::Params { config } => {
            let report = cli::cmd_params(&read_file(&config)?)?;
            emit(&report.to_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Encode { config, m1, m2, matrices } => {
            let out = cli::cmd_encode(&read_file(&config)?, &m1, &m2, matrices)?;
            emit(&out);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decode { config, input, decoder } => {
            let choice: DecoderChoice = decoder.parse()?;
            let word = match input {
                Some(path) => read_file(&path)?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
                    buf
                }
            };
            let out = cli::cmd_decode(&read_file(&config)?, &word, choice)?;
            emit(&out);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { config, wmax, decoder } => {
            let choice: DecoderChoice = decoder.parse()?;
            let report = cli::cmd_verify(&read_file(&config)?, wmax, choice)?;
            emit(&report.to_string());
            if report.failures_within_radius > 0 {
                eprintln!(
                    "verification FAILED: {} error(s) within the radius not decoded",
                    report.failures_within_radius
                );
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Simulate { config, weights, trials, seed, csv } => {
            let weights: Vec<usize> = weights
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("bad weight {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let report = cli::cmd_simulate(&read_file(&config)?, &weights, trials, seed)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            match csv {
                Some(path) => std::fs::write(&path, &report.csv)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => emit(&report.csv),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::DesignRegion { lmax } => {
            let witnesses = cli::cmd_design_region_search(lmax)?;
            if witnesses.is_empty() {
                emit(&format!("no witness pairs found up to l = {lmax}\n"));
            }
            for w in &witnesses {
                emit(&format!("{w}\n"));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
