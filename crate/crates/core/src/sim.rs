//! Monte Carlo frame-error-rate estimation over AWGN with unknown constant
//! phase, using exhaustive-correlation ML detectors.
//!
//! Reproducibility contract: every frame draws its randomness from a stream
//! seeded `rng_seed ^ frame_index`, and the stopping rule is evaluated at
//! fixed chunk boundaries, so a given `(config, seed)` produces identical
//! counts whatever the thread count. A run may therefore overshoot
//! `max_frame_errors` by up to one chunk.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::time::{Duration, Instant};

use crate::bounds::SnrPoint;
use crate::constellation::ConstellationMap;
use crate::error::{Error, Result};
use crate::matrix::GeneratorMatrix;
use crate::ring::Ring;
use crate::rng::SplitMix64;
use crate::spectrum::{for_each_codeword, nc_codebook_report, nc_gray_qpsk_report};
use crate::word::InfoWord;

/// Exhaustive detection caps the codebook at `2^20` entries.
pub const DETECTION_CAP_LOG2: u32 = 20;

const FRAME_CHUNK: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Detector {
    Coherent,
    NonCoherent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseModel {
    /// Known carrier: theta = 0 on every frame.
    Zero,
    /// One uniform draw of theta per frame, constant across the frame.
    UniformConstant,
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub code: GeneratorMatrix,
    pub detector: Detector,
    /// Constellation order: the code's own modulus, or 4 with a binary code
    /// for Gray-paired transmission on QPSK.
    pub constellation_m: u8,
    pub snr_db: Vec<f64>,
    pub max_trials: u64,
    pub max_frame_errors: u64,
    pub rng_seed: u64,
    pub phase_model: PhaseModel,
    /// Skip the non-coherent detectability precondition (the run then
    /// measures the ambiguity floor instead of erroring out).
    pub allow_ambiguous: bool,
}

/// Result for one SNR point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FerPoint {
    pub snr_db: f64,
    pub trials: u64,
    pub frame_errors: u64,
    /// `None` when no trials ran (undefined estimate).
    pub fer: Option<f64>,
    /// 95% Wilson score interval.
    pub wilson_95: Option<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FerResult {
    pub points: Vec<FerPoint>,
    pub seed: u64,
    pub detector: Detector,
    pub phase_model: PhaseModel,
    pub max_trials: u64,
    pub max_frame_errors: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Precomputed constellation sequences for every info word.
pub struct Codebook {
    k1: usize,
    k2: usize,
    words: Vec<Vec<Complex64>>,
}

impl Codebook {
    pub fn words(&self) -> &[Vec<Complex64>] {
        &self.words
    }
}

pub fn build_codebook(code: &GeneratorMatrix, map: &ConstellationMap) -> Result<Codebook> {
    if code.dimension_bits() > DETECTION_CAP_LOG2 as usize {
        return Err(Error::EnumerationCapExceeded {
            dimension_bits: code.dimension_bits(),
            cap_log2: DETECTION_CAP_LOG2,
        });
    }
    let gray = code.ring() == Ring::Z2 && map.m() == 4;
    if gray && !code.n_sym().is_multiple_of(2) {
        return Err(Error::OddBitLength {
            n_bits: code.n_sym(),
        });
    }
    if !gray && code.ring().modulus() != map.m() {
        return Err(Error::InvalidConfig(format!(
            "code over Z{} cannot ride an order-{} constellation",
            code.ring().modulus(),
            map.m()
        )));
    }
    let mut words = Vec::with_capacity(1usize << code.dimension_bits());
    let mut mapping_error = None;
    for_each_codeword(code, &mut |_, symbols| {
        if mapping_error.is_some() {
            return;
        }
        let cw = crate::matrix::Codeword::new(code.ring(), symbols.to_vec()).expect("in range");
        match map.map_to_constellation(&cw) {
            Ok(seq) => words.push(seq),
            Err(e) => mapping_error = Some(e),
        }
    })?;
    if let Some(e) = mapping_error {
        return Err(e);
    }
    Ok(Codebook {
        k1: code.k1(),
        k2: code.k2(),
        words,
    })
}

/// Pass a constellation sequence through the channel: `y_k = s_k e^{j
/// theta} + n_k` with circularly symmetric complex Gaussian noise of total
/// variance N0 per symbol (Es = 1). The phase is drawn once per call.
pub fn transmit(
    s: &[Complex64],
    snr: SnrPoint,
    phase_model: PhaseModel,
    rng: &mut SplitMix64,
) -> Vec<Complex64> {
    let theta = match phase_model {
        PhaseModel::Zero => 0.0,
        PhaseModel::UniformConstant => std::f64::consts::TAU * rng.next_f64(),
    };
    let rotation = Complex64::new(theta.cos(), theta.sin());
    let sigma = (snr.n0() / 2.0).sqrt();
    s.iter()
        .map(|&sk| {
            let (nr, ni) = rng.next_normal_pair();
            sk * rotation + Complex64::new(nr * sigma, ni * sigma)
        })
        .collect()
}

#[inline]
fn correlation(y: &[Complex64], s: &[Complex64]) -> Complex64 {
    y.iter()
        .zip(s)
        .map(|(&yk, &sk)| yk * sk.conj())
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

fn detect_coherent_index(y: &[Complex64], codebook: &Codebook) -> u32 {
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0u32;
    for (idx, s) in codebook.words.iter().enumerate() {
        let metric = correlation(y, s).re;
        if metric > best {
            best = metric;
            best_idx = idx as u32;
        }
    }
    best_idx
}

fn detect_noncoherent_index(y: &[Complex64], codebook: &Codebook) -> u32 {
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0u32;
    for (idx, s) in codebook.words.iter().enumerate() {
        let metric = correlation(y, s).norm_sqr();
        if metric > best {
            best = metric;
            best_idx = idx as u32;
        }
    }
    best_idx
}

/// Coherent ML: argmax of `Re(y . s*(c))`, ties to the lowest info index.
pub fn detect_coherent(y: &[Complex64], codebook: &Codebook) -> InfoWord {
    InfoWord::from_index(codebook.k1, codebook.k2, detect_coherent_index(y, codebook))
}

/// Non-coherent ML: argmax of `|y . s*(c)|`, invariant to any global phase
/// on `y`; ties to the lowest info index.
pub fn detect_noncoherent(y: &[Complex64], codebook: &Codebook) -> InfoWord {
    InfoWord::from_index(
        codebook.k1,
        codebook.k2,
        detect_noncoherent_index(y, codebook),
    )
}

fn simulate_frame(
    codebook: &Codebook,
    detector: Detector,
    phase_model: PhaseModel,
    snr: SnrPoint,
    seed: u64,
    frame: u64,
) -> bool {
    let mut rng = SplitMix64::new(seed ^ frame);
    let tx = rng.next_below(codebook.words.len() as u64) as u32;
    let y = transmit(&codebook.words[tx as usize], snr, phase_model, &mut rng);
    let decoded = match detector {
        Detector::Coherent => detect_coherent_index(&y, codebook),
        Detector::NonCoherent => detect_noncoherent_index(&y, codebook),
    };
    decoded != tx
}

/// 95% Wilson score interval for `errors` successes in `trials`.
pub fn wilson_95(errors: u64, trials: u64) -> Option<(f64, f64)> {
    if trials == 0 {
        return None;
    }
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Some(((center - half).max(0.0), (center + half).min(1.0)))
}

fn validate(config: &SimConfig) -> Result<()> {
    match (config.code.ring(), config.constellation_m) {
        (Ring::Z2, 2) | (Ring::Z4, 4) | (Ring::Z2, 4) => {}
        (ring, m) => {
            return Err(Error::InvalidConfig(format!(
                "code over Z{} with constellation order {m} is not supported",
                ring.modulus()
            )))
        }
    }
    if config.detector == Detector::NonCoherent && !config.allow_ambiguous {
        let report = if config.code.ring() == Ring::Z2 && config.constellation_m == 4 {
            nc_gray_qpsk_report(&config.code)?
        } else {
            nc_codebook_report(&config.code)?
        };
        if !report.detectable {
            return Err(Error::NotNcDetectable);
        }
    }
    Ok(())
}

/// Estimate the frame error rate at each SNR point: draw a uniform info
/// word, transmit, detect, count mismatches, stopping at
/// `max_frame_errors` (checked per chunk) or `max_trials`.
pub fn estimate_fer(config: &SimConfig) -> Result<FerResult> {
    validate(config)?;
    let map = ConstellationMap::natural(config.constellation_m)?;
    let codebook = build_codebook(&config.code, &map)?;
    let start = Instant::now();
    let mut points = Vec::with_capacity(config.snr_db.len());
    for &db in &config.snr_db {
        let snr = SnrPoint::from_db(db);
        let mut trials = 0u64;
        let mut errors = 0u64;
        while trials < config.max_trials
            && (config.max_frame_errors == 0 || errors < config.max_frame_errors)
        {
            let batch = FRAME_CHUNK.min(config.max_trials - trials);
            let batch_errors: u64 = (trials..trials + batch)
                .into_par_iter()
                .map(|frame| {
                    simulate_frame(
                        &codebook,
                        config.detector,
                        config.phase_model,
                        snr,
                        config.rng_seed,
                        frame,
                    ) as u64
                })
                .sum();
            errors += batch_errors;
            trials += batch;
        }
        points.push(FerPoint {
            snr_db: db,
            trials,
            frame_errors: errors,
            fer: (trials > 0).then(|| errors as f64 / trials as f64),
            wilson_95: wilson_95(errors, trials),
        });
    }
    Ok(FerResult {
        points,
        seed: config.rng_seed,
        detector: config.detector,
        phase_model: config.phase_model,
        max_trials: config.max_trials,
        max_frame_errors: config.max_frame_errors,
        elapsed: start.elapsed(),
    })
}
