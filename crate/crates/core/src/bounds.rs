//! Analytic frame-error-rate machinery: pairwise error probability bounds,
//! coherent and non-coherent union bounds over weight spectra, the
//! conservative minimum-distance bound and its inversion.
//!
//! With unit-energy symbols the squared Euclidean distance between two
//! mapped codewords is `kappa_M * w * Es`, where `w` is the Z_M weight of
//! their difference and `kappa_2 = 4` (antipodal BPSK), `kappa_4 = 2`
//! (adjacent QPSK). All bounds below are parameterized that way, so
//! `A = kappa_M / 4` recovers the erfc-bound factors A=1 (BPSK) and A=1/2
//! (QPSK).

use serde::Serialize;

use crate::erfc::erfc;
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::spectrum::WeightSpectrum;

/// One SNR operating point; symbols are normalized to unit energy, so
/// `N0 = 1 / (Es/N0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SnrPoint {
    es_over_n0_db: f64,
    es_over_n0_lin: f64,
}

impl SnrPoint {
    pub fn from_db(db: f64) -> SnrPoint {
        SnrPoint {
            es_over_n0_db: db,
            es_over_n0_lin: 10f64.powf(db / 10.0),
        }
    }

    pub fn from_linear(lin: f64) -> SnrPoint {
        SnrPoint {
            es_over_n0_db: 10.0 * lin.log10(),
            es_over_n0_lin: lin,
        }
    }

    pub fn db(&self) -> f64 {
        self.es_over_n0_db
    }

    pub fn linear(&self) -> f64 {
        self.es_over_n0_lin
    }

    /// Noise spectral density at `Es = 1`.
    pub fn n0(&self) -> f64 {
        1.0 / self.es_over_n0_lin
    }
}

/// Squared Euclidean distance per unit weight at unit symbol energy.
pub fn euclid_scale(ring: Ring) -> f64 {
    match ring {
        Ring::Z2 => 4.0,
        Ring::Z4 => 2.0,
    }
}

/// The constellation factor inside the erfc bounds: `A = kappa_M / 4`.
pub fn a_factor(ring: Ring) -> f64 {
    euclid_scale(ring) / 4.0
}

/// Chernoff-style pairwise error probability bound
/// `exp(-||s - s'||^2 / (4 N0)) = exp(-kappa_M * w * Es / (4 N0))`.
pub fn pep_exp(weight: u32, ring: Ring, snr: SnrPoint) -> f64 {
    (-euclid_scale(ring) * weight as f64 * snr.linear() / 4.0).exp()
}

/// Union bound on frame error probability with coherent detection, summed
/// over the full weight spectrum (geometric uniformity collapses the outer
/// codeword sum).
pub fn union_bound_coherent(spectrum: &WeightSpectrum, ring: Ring, snr: SnrPoint) -> f64 {
    spectrum
        .counts()
        .iter()
        .map(|(&w, &mult)| mult as f64 * pep_exp(w, ring, snr))
        .sum()
}

/// Union bound for non-coherent detection of the code derived from a
/// rotationally invariant parent: the parent's coherent union bound with
/// every rotation word removed from the sum. Valid asymptotically in the
/// code length.
pub fn union_bound_noncoherent(
    parent_spectrum: &WeightSpectrum,
    ring: Ring,
    snr: SnrPoint,
) -> Result<f64> {
    if !parent_spectrum.rotations_excluded() {
        return Err(Error::MissingRotationExclusions);
    }
    Ok(union_bound_coherent(parent_spectrum, ring, snr))
}

/// Union bound with the exact erfc pairwise term instead of the Chernoff
/// exponential: `sum_w mult(w) * 0.5 * erfc(sqrt(A * w * Es/N0))`.
pub fn union_bound_erfc(spectrum: &WeightSpectrum, snr: SnrPoint, a: f64) -> f64 {
    spectrum
        .counts()
        .iter()
        .map(|(&w, &mult)| mult as f64 * 0.5 * erfc((a * w as f64 * snr.linear()).sqrt()))
        .sum()
}

/// Conservative single-term bound
/// `FER <= (2^K - 1) * 0.5 * erfc(sqrt(A * d_min * Es/N0))`.
pub fn ub_simple(k_bits: u32, d_min: u32, snr: SnrPoint, a: f64) -> f64 {
    let words = 2f64.powi(k_bits as i32) - 1.0;
    words * 0.5 * erfc((a * d_min as f64 * snr.linear()).sqrt())
}

/// Smallest minimum distance whose conservative bound meets the FER target
/// at the given SNR. Monotonicity of the bound makes the increment search
/// exact.
pub fn required_dmin(k_bits: u32, fer_target: f64, snr: SnrPoint, a: f64) -> Result<u32> {
    if !(fer_target > 0.0 && fer_target <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "FER target must be in (0, 1], got {fer_target}"
        )));
    }
    let mut d = 1u32;
    while ub_simple(k_bits, d, snr, a) > fer_target {
        d += 1;
    }
    Ok(d)
}

/// Bound curves over an SNR grid for one code (optionally with the
/// rotation-excluded parent spectrum for the non-coherent curve).
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub points: Vec<BoundPoint>,
    pub k_bits: u32,
    pub d_min: u32,
    pub a_factor: f64,
    pub ring: Ring,
    /// The non-coherent bound is an asymptotic (large-N) statement; short
    /// codes can exceed it.
    pub nc_asymptotic: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundPoint {
    pub snr_db: f64,
    pub ub_coherent: f64,
    pub ub_noncoherent: Option<f64>,
    pub ub_simple: f64,
}

pub fn bound_report(
    spectrum: &WeightSpectrum,
    nc_spectrum: Option<&WeightSpectrum>,
    ring: Ring,
    k_bits: u32,
    snr_grid_db: &[f64],
) -> Result<BoundReport> {
    let d_min = spectrum.min_weight().unwrap_or(0);
    let a = a_factor(ring);
    let mut points = Vec::with_capacity(snr_grid_db.len());
    for &db in snr_grid_db {
        let snr = SnrPoint::from_db(db);
        let nc = match nc_spectrum {
            Some(s) => Some(union_bound_noncoherent(s, ring, snr)?),
            None => None,
        };
        points.push(BoundPoint {
            snr_db: db,
            ub_coherent: union_bound_coherent(spectrum, ring, snr),
            ub_noncoherent: nc,
            ub_simple: ub_simple(k_bits, d_min, snr, a),
        });
    }
    Ok(BoundReport {
        points,
        k_bits,
        d_min,
        a_factor: a,
        ring,
        nc_asymptotic: nc_spectrum.is_some(),
    })
}
