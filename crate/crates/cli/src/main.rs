mod commands;
mod output;
mod spec_input;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{
    DisorderArgs, DisorderFormat, DisorderMode, DumpTarget, InjectedFault, LadderFormat, Method, TableFormat,
    VerifyFormat,
};
use output::Failure;
use spec_input::RingArgs;

/// Spectra, optical selection rules and accidental degeneracies of
/// hardcore-boson exciton rings.
#[derive(Debug, Parser)]
#[command(name = "exciton-ring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energies of the n-excitation sector
    Spectrum {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short = 'n', long = "excitations", default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Degenerate levels with bright/dark category counts
    Ladder {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short = 'n', long = "excitations", default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        #[arg(long, value_enum, default_value_t = LadderFormat::Json)]
        format: LadderFormat,
    },
    /// Selection-rule verdicts and dipole strengths from n to n+1
    Transitions {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short = 'n', long = "excitations", default_value_t = 1)]
        n: usize,
        #[arg(long)]
        only_allowed: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Accidental-degeneracy law over a range of ring sizes
    Scan {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 22)]
        n_max: usize,
        /// Only scan for evenly spaced cosine triples
        #[arg(long)]
        triples_only: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Complex-plane points of single-excitation and component states
    Statediagram {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Robustness of the accidental level under random disorder
    Disorder {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = DisorderMode::Site)]
        mode: DisorderMode,
        /// Site-energy disorder half-width
        #[arg(long, default_value_t = 1e-3)]
        eta: f64,
        /// Coupling half-width around 1
        #[arg(long, default_value_t = 0.9)]
        spread: f64,
        /// Number of consecutive seeds
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// First seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = DisorderFormat::Json)]
        format: DisorderFormat,
    },
    /// Oracle-equivalence suite; exits 1 if any property fails
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Same as --format json
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<InjectedFault>,
    },
    /// Raw matrices and state vectors as JSON
    Dump {
        #[arg(value_enum)]
        target: DumpTarget,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short = 'n', long = "excitations", default_value_t = 1)]
        n: usize,
        /// Momentum labels for `dump state`, comma separated
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<usize>>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Ladder { .. } => "ladder",
            Command::Transitions { .. } => "transitions",
            Command::Scan { .. } => "scan",
            Command::Statediagram { .. } => "statediagram",
            Command::Disorder { .. } => "disorder",
            Command::Verify { .. } => "verify",
            Command::Dump { .. } => "dump",
        }
    }

    fn run(self) -> Result<output::Rendered, Failure> {
        match self {
            Command::Spectrum { ring, n, method, format } => commands::spectrum(&ring, n, method, format),
            Command::Ladder { ring, n, method, format } => commands::ladder(&ring, n, method, format),
            Command::Transitions { ring, n, only_allowed, format } => {
                commands::transitions(&ring, n, only_allowed, format)
            }
            Command::Scan { n_min, n_max, triples_only, format } => commands::scan(n_min, n_max, triples_only, format),
            Command::Statediagram { ring, format } => commands::statediagram(&ring, format),
            Command::Disorder { ring, mode, eta, spread, seeds, seed, format } => {
                commands::disorder(&ring, &DisorderArgs { mode, eta, spread, seeds, seed, format })
            }
            Command::Verify { n_max, json, format, inject_fault } => {
                let format = if json { VerifyFormat::Json } else { format };
                commands::run_verify(n_max, format, inject_fault)
            }
            Command::Dump { target, ring, n, labels } => commands::dump(&ring, target, n, labels),
        }
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe downstream is not our failure
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let message = e.render().to_string();
                    emit(&Failure::usage(message.trim_end()).to_json(None));
                    ExitCode::from(2)
                }
            };
        }
    };
    let name = cli.command.name();
    match cli.command.run() {
        Ok(rendered) => {
            emit(&rendered.text);
            ExitCode::from(rendered.exit_code)
        }
        Err(failure) => {
            emit(&failure.to_json(Some(name)));
            ExitCode::from(2)
        }
    }
}
