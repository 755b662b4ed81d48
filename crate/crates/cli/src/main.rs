//! `zmcodes`: construct, analyze, simulate and verify short rate-compatible
//! codes over Z2/Z4 for coherent and non-coherent M-PSK detection.

mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "zmcodes", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Z2,
    Z4,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstraintArg {
    None,
    Ri,
    Nc4,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectorArg {
    Coherent,
    Noncoherent,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Zero,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstellationArg {
    Bpsk,
    Qpsk,
}

#[derive(Clone, Copy, ValueEnum)]
enum NcRouteArg {
    /// Treat the matrix as a rotationally invariant parent.
    Parent,
    /// Treat the matrix as the transmitted codebook under its natural map.
    Codebook,
    /// Binary codebook Gray-paired onto QPSK.
    Gray,
}

#[derive(Subcommand)]
enum Command {
    /// Build a rate-compatible family with the greedy algorithm.
    Construct {
        #[arg(long, value_enum)]
        ring: RingArg,
        /// Total dimension in bits (Z4 splits as k1 = K/2, k2 = K mod 2).
        #[arg(long, conflicts_with_all = ["k1", "k2"])]
        k: Option<usize>,
        #[arg(long, requires = "k2")]
        k1: Option<usize>,
        #[arg(long)]
        k2: Option<usize>,
        #[arg(long)]
        target_dmin: Option<u32>,
        /// Maximum length in symbols.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value = "none")]
        constraint: ConstraintArg,
        #[arg(long, default_value_t = 1)]
        runs: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Never append a column already present in the matrix.
        #[arg(long)]
        distinct_columns: bool,
        /// Code family JSON output path.
        #[arg(long)]
        out: PathBuf,
        /// Optional hex matrix export.
        #[arg(long)]
        hex: Option<PathBuf>,
        /// Optional CSV of the best length per distance over all runs.
        #[arg(long)]
        best_lengths: Option<PathBuf>,
    },
    /// Minimum distance of a matrix (hex or family JSON).
    Distance {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        prefix_bits: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full weight spectrum as CSV.
    Spectrum {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        prefix_bits: Option<usize>,
        /// Exclude the rotation words (needs a rotationally invariant
        /// matrix).
        #[arg(long)]
        exclude_rotations: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Non-coherent equivalent distance report.
    Ncdistance {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        prefix_bits: Option<usize>,
        #[arg(long, value_enum, default_value = "parent")]
        route: NcRouteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union-bound curves over an SNR grid as CSV.
    Bound {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        prefix_bits: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        snr_from: f64,
        #[arg(long, default_value_t = 12.0)]
        snr_to: f64,
        #[arg(long, default_value_t = 0.5)]
        snr_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest d_min whose conservative bound meets a FER target.
    RequiredDmin {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        fer: f64,
        /// Es/N0 in dB.
        #[arg(long)]
        snr: f64,
        #[arg(long = "const", value_enum)]
        constellation: ConstellationArg,
    },
    /// Monte Carlo FER estimation.
    Simulate {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        prefix_bits: Option<usize>,
        #[arg(long, value_enum)]
        detector: DetectorArg,
        /// Comma-separated SNR list in dB (alternative to the grid flags).
        #[arg(long, value_delimiter = ',')]
        snr: Vec<f64>,
        #[arg(long)]
        snr_from: Option<f64>,
        #[arg(long)]
        snr_to: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        snr_step: f64,
        #[arg(long, default_value_t = 10_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 100)]
        max_errors: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "uniform")]
        phase: PhaseArg,
        /// Transmit a binary code on QPSK through the Gray pairing.
        #[arg(long)]
        qpsk_gray: bool,
        /// Simulate a non-detectable codebook anyway.
        #[arg(long)]
        allow_ambiguous: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a matrix against expected distance milestones.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        /// Expectation JSON: targets plus whether rotational invariance is
        /// required at every prefix.
        #[arg(long)]
        expect: PathBuf,
    },
    /// Re-emit a matrix as hex, optionally trimmed to a prefix or with its
    /// constraint rows dropped.
    Export {
        /// Family JSON or hex matrix input.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        prefix_bits: Option<usize>,
        /// Remove the leading constraint rows (derives the transmitted
        /// code).
        #[arg(long)]
        drop_fixed: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            let kind = e
                .downcast_ref::<zmcodes_core::Error>()
                .map(|err| err.kind())
                .unwrap_or("cli");
            eprintln!(
                "{}",
                serde_json::json!({ "error": format!("{e:#}"), "kind": kind })
            );
            ExitCode::FAILURE
        }
    }
}
