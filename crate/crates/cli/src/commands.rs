use anyhow::{bail, Context, Result};
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use zmcodes_core::bounds::{bound_report, required_dmin, SnrPoint};
use zmcodes_core::hexfmt::{emit_hex_matrix, parse_hex_matrix};
use zmcodes_core::persist;
use zmcodes_core::sim::{estimate_fer, Detector, PhaseModel, SimConfig};
use zmcodes_core::spectrum::{nc_codebook_report, nc_gray_qpsk_report};
use zmcodes_core::{
    multi_run_best, BuildConfig, Constraint, GeneratorMatrix, NcDistanceReport, Ring,
};

use crate::{
    Command, ConstellationArg, ConstraintArg, DetectorArg, NcRouteArg, PhaseArg, RingArg,
};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Construct {
            ring,
            k,
            k1,
            k2,
            target_dmin,
            max_n,
            constraint,
            runs,
            seed,
            distinct_columns,
            out,
            hex,
            best_lengths,
        } => construct(
            ring,
            k,
            k1,
            k2,
            target_dmin,
            max_n,
            constraint,
            runs,
            seed,
            distinct_columns,
            out,
            hex,
            best_lengths,
        ),
        Command::Distance {
            matrix,
            prefix_bits,
            out,
        } => distance(&matrix, prefix_bits, out),
        Command::Spectrum {
            matrix,
            prefix_bits,
            exclude_rotations,
            out,
        } => spectrum(&matrix, prefix_bits, exclude_rotations, out),
        Command::Ncdistance {
            matrix,
            prefix_bits,
            route,
            out,
        } => ncdistance(&matrix, prefix_bits, route, out),
        Command::Bound {
            matrix,
            prefix_bits,
            snr_from,
            snr_to,
            snr_step,
            out,
        } => bound(&matrix, prefix_bits, snr_from, snr_to, snr_step, out),
        Command::RequiredDmin {
            k,
            fer,
            snr,
            constellation,
        } => {
            let a = match constellation {
                ConstellationArg::Bpsk => 1.0,
                ConstellationArg::Qpsk => 0.5,
            };
            let d = required_dmin(k, fer, SnrPoint::from_db(snr), a)?;
            println!("{d}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            matrix,
            prefix_bits,
            detector,
            snr,
            snr_from,
            snr_to,
            snr_step,
            trials,
            max_errors,
            seed,
            phase,
            qpsk_gray,
            allow_ambiguous,
            out,
        } => simulate(
            &matrix,
            prefix_bits,
            detector,
            snr,
            snr_from,
            snr_to,
            snr_step,
            trials,
            max_errors,
            seed,
            phase,
            qpsk_gray,
            allow_ambiguous,
            out,
        ),
        Command::Verify { matrix, expect } => verify(&matrix, &expect),
        Command::Export {
            input,
            prefix_bits,
            drop_fixed,
            out,
        } => export(&input, prefix_bits, drop_fixed, &out),
    }
}

/// Load a matrix from either a family JSON document or a hex matrix file,
/// returning the number of leading constraint rows.
fn load_matrix(path: &Path) -> Result<(GeneratorMatrix, usize)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let family = persist::from_json(&text)?;
        let fixed = family.fixed_rows();
        Ok((family.generator, fixed))
    } else {
        Ok(parse_hex_matrix(&text)?)
    }
}

fn load_prefixed(path: &Path, prefix_bits: Option<usize>) -> Result<(GeneratorMatrix, usize)> {
    let (matrix, fixed) = load_matrix(path)?;
    match prefix_bits {
        Some(bits) => Ok((matrix.prefix_bits(bits)?, fixed)),
        None => Ok((matrix, fixed)),
    }
}

fn write_output(out: Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(&path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn construct(
    ring: RingArg,
    k: Option<usize>,
    k1: Option<usize>,
    k2: Option<usize>,
    target_dmin: Option<u32>,
    max_n: Option<usize>,
    constraint: ConstraintArg,
    runs: u32,
    seed: u64,
    distinct_columns: bool,
    out: PathBuf,
    hex: Option<PathBuf>,
    best_lengths: Option<PathBuf>,
) -> Result<ExitCode> {
    let ring = match ring {
        RingArg::Z2 => Ring::Z2,
        RingArg::Z4 => Ring::Z4,
    };
    let (k1, k2) = match (k, k1, k2) {
        (Some(k), _, _) => match ring {
            Ring::Z2 => (0, k),
            // the type with the largest k1 for this dimension
            Ring::Z4 => (k / 2, k % 2),
        },
        (None, a, b) => (a.unwrap_or(0), b.unwrap_or(0)),
    };
    let config = BuildConfig {
        ring,
        k1,
        k2,
        target_d_min: target_dmin,
        max_n_sym: max_n,
        constraint: match constraint {
            ConstraintArg::None => Constraint::None,
            ConstraintArg::Ri => Constraint::RotationInvariant,
            ConstraintArg::Nc4 => Constraint::BinaryNc4,
        },
        enforce_distinct_columns: distinct_columns,
        rng_seed: seed,
        runs,
    };
    let outcome = multi_run_best(&config)?;
    let family = &outcome.best;
    fs::write(&out, persist::to_json(family)?)
        .with_context(|| format!("writing {}", out.display()))?;
    if let Some(path) = hex {
        fs::write(&path, emit_hex_matrix(&family.generator, family.fixed_rows())?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = best_lengths {
        let mut csv = format!(
            "# zmcodes {} construct ring={ring} k1={k1} k2={k2} constraint={:?} seed={seed} runs={runs}\n",
            env!("CARGO_PKG_VERSION"),
            config.constraint
        );
        csv.push_str("d_min,n_sym,n_bits,run_index\n");
        for b in &outcome.best_lengths {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                b.d_min,
                b.n_sym,
                b.n_sym * ring.bits_per_symbol(),
                b.run_index
            ));
        }
        fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!(
        "built K={} family over {ring}: n_sym={}, d_min={}, status={:?}, seed={seed}, runs={runs}",
        family.generator.dimension_bits(),
        family.generator.n_sym(),
        family.achieved_d_min(),
        family.status
    );
    Ok(ExitCode::SUCCESS)
}

fn distance(path: &Path, prefix_bits: Option<usize>, out: Option<PathBuf>) -> Result<ExitCode> {
    let (matrix, _) = load_prefixed(path, prefix_bits)?;
    let (d_min, multiplicity) = matrix.min_distance()?;
    let doc = serde_json::json!({
        "n_sym": matrix.n_sym(),
        "n_bits": matrix.n_bits(),
        "dimension_bits": matrix.dimension_bits(),
        "d_min": d_min,
        "multiplicity": multiplicity,
    });
    write_output(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    Ok(ExitCode::SUCCESS)
}

fn spectrum(
    path: &Path,
    prefix_bits: Option<usize>,
    exclude_rotations: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let (matrix, _) = load_prefixed(path, prefix_bits)?;
    let spectrum = if exclude_rotations {
        matrix.nc_excluded_spectrum()?
    } else {
        matrix.weight_spectrum()?
    };
    let mut csv = format!(
        "# zmcodes {} spectrum matrix={} n_bits={} exclude_rotations={exclude_rotations}\n",
        env!("CARGO_PKG_VERSION"),
        path.display(),
        matrix.n_bits()
    );
    csv.push_str("weight,multiplicity\n");
    for (w, mult) in spectrum.counts() {
        csv.push_str(&format!("{w},{mult}\n"));
    }
    write_output(out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn nc_report_json(report: &NcDistanceReport, route: &str) -> serde_json::Value {
    serde_json::json!({
        "route": route,
        "d_eq_min": report.d_eq_min,
        "attained_by": report.attained_by.as_ref().map(|w| w.to_string()),
        "detectable": report.detectable,
    })
}

fn ncdistance(
    path: &Path,
    prefix_bits: Option<usize>,
    route: NcRouteArg,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let (matrix, _) = load_prefixed(path, prefix_bits)?;
    let (report, name) = match route {
        NcRouteArg::Parent => (matrix.nc_min_distance()?, "parent"),
        NcRouteArg::Codebook => (nc_codebook_report(&matrix)?, "codebook"),
        NcRouteArg::Gray => (nc_gray_qpsk_report(&matrix)?, "gray"),
    };
    write_output(
        out,
        &format!(
            "{}\n",
            serde_json::to_string_pretty(&nc_report_json(&report, name))?
        ),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn bound(
    path: &Path,
    prefix_bits: Option<usize>,
    snr_from: f64,
    snr_to: f64,
    snr_step: f64,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    if snr_step <= 0.0 {
        bail!("snr-step must be positive");
    }
    let (matrix, _) = load_prefixed(path, prefix_bits)?;
    let grid = snr_grid(snr_from, snr_to, snr_step);
    let full = matrix.weight_spectrum()?;
    let nc = if matrix.is_rotationally_invariant()? {
        Some(matrix.nc_excluded_spectrum()?)
    } else {
        None
    };
    let report = bound_report(
        &full,
        nc.as_ref(),
        matrix.ring(),
        matrix.dimension_bits() as u32,
        &grid,
    )?;
    let mut csv = format!(
        "# zmcodes {} bound matrix={} K={} d_min={} A={} nc_asymptotic={}\n",
        env!("CARGO_PKG_VERSION"),
        path.display(),
        report.k_bits,
        report.d_min,
        report.a_factor,
        report.nc_asymptotic
    );
    csv.push_str("snr_db,ub_coherent,ub_noncoherent,ub_simple\n");
    for p in &report.points {
        let nc_cell = p
            .ub_noncoherent
            .map(|v| v.to_string())
            .unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{nc_cell},{}\n",
            p.snr_db, p.ub_coherent, p.ub_simple
        ));
    }
    write_output(out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn snr_grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut i = 0u32;
    loop {
        let v = from + step * i as f64;
        if v > to + 1e-9 {
            break;
        }
        grid.push(v);
        i += 1;
    }
    grid
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    path: &Path,
    prefix_bits: Option<usize>,
    detector: DetectorArg,
    snr: Vec<f64>,
    snr_from: Option<f64>,
    snr_to: Option<f64>,
    snr_step: f64,
    trials: u64,
    max_errors: u64,
    seed: u64,
    phase: PhaseArg,
    qpsk_gray: bool,
    allow_ambiguous: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let (code, _) = load_prefixed(path, prefix_bits)?;
    let snr_db = if !snr.is_empty() {
        snr
    } else {
        match (snr_from, snr_to) {
            (Some(a), Some(b)) => snr_grid(a, b, snr_step),
            _ => bail!("give --snr or both --snr-from and --snr-to"),
        }
    };
    let detector = match detector {
        DetectorArg::Coherent => Detector::Coherent,
        DetectorArg::Noncoherent => Detector::NonCoherent,
    };
    let constellation_m = if qpsk_gray || code.ring() == Ring::Z4 {
        4
    } else {
        2
    };
    let config = SimConfig {
        code,
        detector,
        constellation_m,
        snr_db,
        max_trials: trials,
        max_frame_errors: max_errors,
        rng_seed: seed,
        phase_model: match phase {
            PhaseArg::Zero => PhaseModel::Zero,
            PhaseArg::Uniform => PhaseModel::UniformConstant,
        },
        allow_ambiguous,
    };
    let result = estimate_fer(&config)?;
    let detector_name = match detector {
        Detector::Coherent => "coherent",
        Detector::NonCoherent => "noncoherent",
    };
    let mut csv = format!(
        "# zmcodes {} simulate matrix={} detector={detector_name} seed={seed} max_trials={trials} max_errors={max_errors} constellation_m={constellation_m}\n",
        env!("CARGO_PKG_VERSION"),
        path.display()
    );
    csv.push_str("snr_db,detector,seed,trials,frame_errors,fer,wilson_low,wilson_high\n");
    for p in &result.points {
        let fer = p.fer.map(|v| v.to_string()).unwrap_or_else(|| "nan".into());
        let (lo, hi) = p
            .wilson_95
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .unwrap_or_default();
        csv.push_str(&format!(
            "{},{detector_name},{seed},{},{},{fer},{lo},{hi}\n",
            p.snr_db, p.trials, p.frame_errors
        ));
    }
    write_output(out, &csv)?;
    eprintln!(
        "simulated {} SNR points in {:.2?}",
        result.points.len(),
        result.elapsed
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct Expectation {
    #[serde(default)]
    require_rotational_invariance: bool,
    targets: Vec<ExpectTarget>,
}

#[derive(Deserialize)]
struct ExpectTarget {
    d_min: u32,
    n_bits: usize,
}

fn verify(matrix_path: &Path, expect_path: &Path) -> Result<ExitCode> {
    let (matrix, _) = load_matrix(matrix_path)?;
    let text = fs::read_to_string(expect_path)
        .with_context(|| format!("reading {}", expect_path.display()))?;
    let expectation: Expectation = serde_json::from_str(&text)?;
    let mut all_pass = true;

    for target in &expectation.targets {
        let prefix = matrix.prefix_bits(target.n_bits)?;
        let (d, _) = prefix.min_distance()?;
        let mut detail = format!("measured d_min={d}");
        let mut pass = d >= target.d_min;
        if expectation.require_rotational_invariance {
            let ri = prefix.is_rotationally_invariant()?;
            pass &= ri;
            if ri {
                let report = prefix.nc_min_distance()?;
                match report.d_eq_min {
                    Some(deq) => detail.push_str(&format!(", d_eq_min={deq}")),
                    None => detail.push_str(", d_eq_min=undefined"),
                }
            } else {
                detail.push_str(", not rotationally invariant");
            }
        }
        println!(
            "{} d_min >= {} at N_bits={} ({detail})",
            if pass { "PASS" } else { "FAIL" },
            target.d_min,
            target.n_bits
        );
        all_pass &= pass;
    }

    if expectation.require_rotational_invariance {
        let mut ri_everywhere = true;
        for n in 0..=matrix.n_sym() {
            if !matrix.prefix(n)?.is_rotationally_invariant()? {
                ri_everywhere = false;
                println!("FAIL rotationally invariant at prefix n_sym={n}");
                break;
            }
        }
        if ri_everywhere {
            println!(
                "PASS rotationally invariant at all {} prefixes",
                matrix.n_sym() + 1
            );
        }
        all_pass &= ri_everywhere;
    }

    println!("{}", if all_pass { "VERIFY PASS" } else { "VERIFY FAIL" });
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn export(
    input: &Path,
    prefix_bits: Option<usize>,
    drop_fixed: bool,
    out: &Path,
) -> Result<ExitCode> {
    let (mut matrix, mut fixed) = load_matrix(input)?;
    if drop_fixed {
        if fixed == 0 {
            bail!("matrix has no constraint rows to drop");
        }
        matrix = matrix.remove_leading_rows(fixed)?;
        fixed = 0;
    }
    if let Some(bits) = prefix_bits {
        matrix = matrix.prefix_bits(bits)?;
    }
    fs::write(out, emit_hex_matrix(&matrix, fixed)?)
        .with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}
