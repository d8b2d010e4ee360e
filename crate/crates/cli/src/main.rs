//! `catbreed`: CSV/SVG sweeps of cat-state breeding and loss fidelities.

mod commands;
mod format;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use catbreed::Parity;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, CliResult, Output, Range};
use format::g9;

#[derive(Parser, Debug)]
#[command(name = "catbreed", version, about = "Cat-state breeding under mode mismatch and loss")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fidelity, best magnitude and success probability over an (alpha, eta) grid.
    BreedSweep(Sweep),
    /// Fidelity along alpha at fixed mode overlap, with the threshold alpha.
    CrossSection(Sweep),
    /// Closed-form and exact loss fidelities over an (alpha, loss) grid.
    LossSweep(Sweep),
    /// Loss fidelities along alpha at a fixed loss rate, with the largest
    /// alpha reaching the target fidelity.
    LossCrossSection(Sweep),
    /// Checks the coherent-state algebra against the number-basis oracle.
    Selftest,
}

#[derive(Args, Debug)]
struct Sweep {
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    alpha_steps: Option<usize>,
    #[arg(long)]
    eta_min: Option<f64>,
    #[arg(long)]
    eta_max: Option<f64>,
    #[arg(long)]
    eta_steps: Option<usize>,
    /// Fixed mode overlap (cross-section) or loss rate (loss-cross-section).
    #[arg(long)]
    eta: Option<f64>,
    /// Target fidelity for the threshold footers.
    #[arg(long, default_value_t = 0.9)]
    target_fidelity: f64,
    #[arg(long, value_enum, default_value_t = ParityArg::Odd)]
    parity: ParityArg,
    /// Use equal input magnitudes instead of pre-compensating the mismatch.
    #[arg(long)]
    unmatched: bool,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG rendering here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ParityArg {
    Odd,
    Even,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
        }
    }
}

/// Per-command grid defaults; cross-sections use `eta.min` as the fixed value.
struct Defaults {
    alpha: Range,
    eta: Range,
}

impl Sweep {
    fn alpha(&self, d: &Defaults) -> Range {
        Range {
            min: self.alpha_min.unwrap_or(d.alpha.min),
            max: self.alpha_max.unwrap_or(d.alpha.max),
            steps: self.alpha_steps.unwrap_or(d.alpha.steps),
        }
    }

    fn eta_range(&self, d: &Defaults) -> Range {
        Range {
            min: self.eta_min.unwrap_or(d.eta.min),
            max: self.eta_max.unwrap_or(d.eta.max),
            steps: self.eta_steps.unwrap_or(d.eta.steps),
        }
    }
}

fn echo_range(name: &str, r: Range) -> String {
    format!("--{name}-min {} --{name}-max {} --{name}-steps {}", g9(r.min), g9(r.max), r.steps)
}

fn echo_common(s: &Sweep) -> String {
    let parity = match s.parity {
        ParityArg::Odd => "odd",
        ParityArg::Even => "even",
    };
    let mut e = format!("--parity {parity} --target-fidelity {}", g9(s.target_fidelity));
    if s.unmatched {
        e.push_str(" --unmatched");
    }
    e
}

fn run(cli: Cli) -> CliResult<()> {
    let (sweep, output) = match &cli.command {
        Command::Selftest => {
            let (report, failures) = commands::selftest()?;
            print!("{report}");
            if failures > 0 {
                return Err(CliError::SelftestFailed(failures));
            }
            println!("selftest: all checks passed");
            return Ok(());
        }
        Command::BreedSweep(s) => {
            let d = Defaults {
                alpha: Range { min: 0.5, max: 5.0, steps: 10 },
                eta: Range { min: 0.9, max: 1.0, steps: 11 },
            };
            let (alpha, eta) = (s.alpha(&d), s.eta_range(&d));
            let echo = format!(
                "catbreed breed-sweep {} {} {}",
                echo_range("alpha", alpha),
                echo_range("eta", eta),
                echo_common(s)
            );
            let out = commands::breed_sweep(alpha, eta, s.parity.into(), s.unmatched, &echo, s.svg.is_some())?;
            (s, out)
        }
        Command::CrossSection(s) => {
            let d = Defaults {
                alpha: Range { min: 0.1, max: 6.0, steps: 60 },
                eta: Range { min: 0.99, max: 0.99, steps: 1 },
            };
            let alpha = s.alpha(&d);
            let eta = s.eta.unwrap_or(d.eta.min);
            let echo = format!(
                "catbreed cross-section {} --eta {} {}",
                echo_range("alpha", alpha),
                g9(eta),
                echo_common(s)
            );
            let out = commands::cross_section(
                alpha,
                eta,
                s.parity.into(),
                s.unmatched,
                s.target_fidelity,
                &echo,
                s.svg.is_some(),
            )?;
            (s, out)
        }
        Command::LossSweep(s) => {
            let d = Defaults {
                alpha: Range { min: 0.1, max: 3.0, steps: 30 },
                eta: Range { min: 0.0, max: 0.2, steps: 21 },
            };
            let (alpha, eta) = (s.alpha(&d), s.eta_range(&d));
            let echo = format!(
                "catbreed loss-sweep {} {} {}",
                echo_range("alpha", alpha),
                echo_range("eta", eta),
                echo_common(s)
            );
            let out = commands::loss_sweep(alpha, eta, s.parity.into(), &echo, s.svg.is_some())?;
            (s, out)
        }
        Command::LossCrossSection(s) => {
            let d = Defaults {
                alpha: Range { min: 0.1, max: 3.0, steps: 30 },
                eta: Range { min: 0.05, max: 0.05, steps: 1 },
            };
            let alpha = s.alpha(&d);
            let eta = s.eta.unwrap_or(d.eta.min);
            let echo = format!(
                "catbreed loss-cross-section {} --eta {} {}",
                echo_range("alpha", alpha),
                g9(eta),
                echo_common(s)
            );
            let out = commands::loss_cross_section(
                alpha,
                eta,
                s.parity.into(),
                s.target_fidelity,
                &echo,
                s.svg.is_some(),
            )?;
            (s, out)
        }
    };
    write_output(sweep, output)
}

fn write_output(sweep: &Sweep, output: Output) -> CliResult<()> {
    match &sweep.out {
        Some(path) => std::fs::write(path, &output.csv)?,
        None => print!("{}", output.csv),
    }
    if let (Some(path), Some(svg)) = (&sweep.svg, &output.svg) {
        std::fs::write(path, svg)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("catbreed: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
