//! Exhaustive weight spectra, minimum distances and non-coherent equivalent
//! distances.
//!
//! Enumeration walks all `2^K` info words with an odometer that adds one
//! row-contribution per carried digit (for Z_M rings a digit wrap is the
//! same ring operation as an increment, so each step touches the
//! accumulator at most `K` times and amortizes to two row additions). The
//! index space is split into fixed chunks that merge commutatively, so
//! parallel runs are bit-identical to sequential ones.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::GeneratorMatrix;
use crate::ring::Ring;
use crate::word::InfoWord;

use std::collections::BTreeMap;

/// Refuse exhaustive enumeration beyond `2^24` info words rather than fall
/// back to sampling.
pub const ENUMERATION_CAP_LOG2: u32 = 24;

const CHUNK_WORDS: u64 = 1 << 15;

/// Weight -> multiplicity map over all enumerated info words (the all-zero
/// word and any explicit exclusions are left out).
///
/// Multiplicities count info words, not distinct codewords, so
/// non-injective generators need no special casing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpectrum {
    counts: BTreeMap<u32, u64>,
    excluded: Vec<InfoWord>,
    rotations_excluded: bool,
}

impl WeightSpectrum {
    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    /// Smallest weight present; `None` when nothing was enumerated.
    pub fn min_weight(&self) -> Option<u32> {
        self.counts.keys().next().copied()
    }

    pub fn min_weight_multiplicity(&self) -> u64 {
        self.min_weight()
            .map(|w| self.counts[&w])
            .unwrap_or(0)
    }

    /// Number of info words counted.
    pub fn total_words(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Info words that were excluded from the enumeration.
    pub fn excluded(&self) -> &[InfoWord] {
        &self.excluded
    }

    /// True when the exclusions are exactly the rotation words `i * all-one`
    /// (the precondition of the non-coherent union bound).
    pub fn rotations_excluded(&self) -> bool {
        self.rotations_excluded
    }
}

/// Outcome of [`GeneratorMatrix::nc_min_distance`]: the minimum weight among
/// parent codewords that are not a rotation word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcDistanceReport {
    /// Minimum equivalent distance in weight units; `None` when every
    /// codeword is a rotation word.
    pub d_eq_min: Option<u32>,
    /// Lowest-index info word attaining the minimum (when meaningful).
    pub attained_by: Option<InfoWord>,
    /// `d_eq_min > 0`: the code can resolve the phase ambiguity.
    pub detectable: bool,
}

struct Engine {
    /// Contribution of one digit step per row (B rows already doubled for Z4).
    units: Vec<Vec<u8>>,
    orders: Vec<u8>,
    shifts: Vec<u32>,
    modulus: u8,
    ring: Ring,
    n_sym: usize,
    total: u64,
}

impl Engine {
    fn new(g: &GeneratorMatrix) -> Result<Engine> {
        let bits = g.dimension_bits();
        if bits > ENUMERATION_CAP_LOG2 as usize {
            return Err(Error::EnumerationCapExceeded {
                dimension_bits: bits,
                cap_log2: ENUMERATION_CAP_LOG2,
            });
        }
        let mut units = Vec::with_capacity(g.rows());
        let mut orders = Vec::with_capacity(g.rows());
        let mut shifts = Vec::with_capacity(g.rows());
        let mut shift = 0u32;
        for row in g.a_rows() {
            units.push(row.clone());
            orders.push(4);
            shifts.push(shift);
            shift += 2;
        }
        let scale = if g.ring() == Ring::Z4 { 2 } else { 1 };
        for row in g.b_rows() {
            units.push(row.iter().map(|&b| b * scale).collect());
            orders.push(2);
            shifts.push(shift);
            shift += 1;
        }
        Ok(Engine {
            units,
            orders,
            shifts,
            modulus: g.ring().modulus(),
            ring: g.ring(),
            n_sym: g.n_sym(),
            total: 1u64 << bits,
        })
    }

    fn digits_of(&self, idx: u64) -> Vec<u8> {
        self.orders
            .iter()
            .zip(&self.shifts)
            .map(|(&o, &s)| ((idx >> s) & (o as u64 - 1)) as u8)
            .collect()
    }

    fn accumulate(&self, digits: &[u8]) -> Vec<u8> {
        let m = self.modulus as u16;
        let mut acc = vec![0u16; self.n_sym];
        for (unit, &d) in self.units.iter().zip(digits) {
            if d != 0 {
                for (a, &u) in acc.iter_mut().zip(unit) {
                    *a = (*a + d as u16 * u as u16) % m;
                }
            }
        }
        acc.into_iter().map(|s| s as u8).collect()
    }

    #[inline]
    fn add_unit(&self, acc: &mut [u8], row: usize) {
        let m = self.modulus;
        for (a, &u) in acc.iter_mut().zip(&self.units[row]) {
            let s = *a + u;
            *a = if s >= m { s - m } else { s };
        }
    }

    /// Visit `(index, weight, codeword)` for every info word in
    /// `start..end`, in ascending index order.
    fn scan_range(&self, start: u64, end: u64, f: &mut impl FnMut(u32, u32, &[u8])) {
        if start >= end {
            return;
        }
        let mut digits = self.digits_of(start);
        let mut acc = self.accumulate(&digits);
        f(start as u32, self.ring.sequence_weight(&acc), &acc);
        let mut idx = start;
        while idx + 1 < end {
            idx += 1;
            let mut d = 0;
            loop {
                self.add_unit(&mut acc, d);
                digits[d] += 1;
                if digits[d] == self.orders[d] {
                    digits[d] = 0;
                    d += 1;
                } else {
                    break;
                }
            }
            f(idx as u32, self.ring.sequence_weight(&acc), &acc);
        }
    }

    fn max_weight(&self) -> u32 {
        let per_symbol = if self.modulus == 4 { 2 } else { 1 };
        per_symbol * self.n_sym as u32
    }

    /// Rotation words as (weight, symbol value) pairs, for value-based
    /// exclusion gated on weight.
    fn rotation_checks(&self) -> Vec<(u32, u8)> {
        (0..self.modulus)
            .map(|i| (self.ring.weight_unchecked(i) * self.n_sym as u32, i))
            .collect()
    }
}

#[derive(Clone)]
struct ScanOptions {
    exclude_indices: Vec<u32>,
    exclude_rotation_values: bool,
    collect_minima: bool,
}

impl ScanOptions {
    fn plain() -> Self {
        ScanOptions {
            exclude_indices: Vec::new(),
            exclude_rotation_values: false,
            collect_minima: false,
        }
    }
}

struct ScanOutcome {
    hist: Vec<u64>,
    enumerated: u64,
    min_weight: u32,
    min_index: u32,
    min_count: u64,
    minima: Vec<u32>,
}

impl ScanOutcome {
    fn empty(max_weight: u32) -> Self {
        ScanOutcome {
            hist: vec![0; max_weight as usize + 1],
            enumerated: 0,
            min_weight: u32::MAX,
            min_index: 0,
            min_count: 0,
            minima: Vec::new(),
        }
    }

    fn merge(mut self, other: ScanOutcome) -> ScanOutcome {
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
        self.enumerated += other.enumerated;
        if other.min_weight < self.min_weight {
            self.min_weight = other.min_weight;
            self.min_index = other.min_index;
            self.min_count = other.min_count;
            self.minima = other.minima;
        } else if other.min_weight == self.min_weight && other.min_count > 0 {
            self.min_count += other.min_count;
            self.minima.extend(other.minima);
        }
        self
    }
}

fn scan_chunk(engine: &Engine, opts: &ScanOptions, start: u64, end: u64) -> ScanOutcome {
    let mut out = ScanOutcome::empty(engine.max_weight());
    let rotations = if opts.exclude_rotation_values {
        engine.rotation_checks()
    } else {
        Vec::new()
    };
    engine.scan_range(start, end, &mut |idx, w, acc| {
        if idx == 0 {
            return;
        }
        if !opts.exclude_indices.is_empty() && opts.exclude_indices.binary_search(&idx).is_ok() {
            return;
        }
        if opts.exclude_rotation_values {
            for &(rw, v) in &rotations {
                if w == rw && acc.iter().all(|&s| s == v) {
                    return;
                }
            }
        }
        out.enumerated += 1;
        out.hist[w as usize] += 1;
        if w < out.min_weight {
            out.min_weight = w;
            out.min_index = idx;
            out.min_count = 1;
            if opts.collect_minima {
                out.minima.clear();
                out.minima.push(idx);
            }
        } else if w == out.min_weight {
            out.min_count += 1;
            if opts.collect_minima {
                out.minima.push(idx);
            }
        }
    });
    out
}

fn run_scan(engine: &Engine, opts: &ScanOptions) -> ScanOutcome {
    let total = engine.total;
    if total <= CHUNK_WORDS {
        return scan_chunk(engine, opts, 0, total);
    }
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(CHUNK_WORDS as usize)
        .map(|s| (s, (s + CHUNK_WORDS).min(total)))
        .collect();
    chunks
        .into_par_iter()
        .map(|(s, e)| scan_chunk(engine, opts, s, e))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(ScanOutcome::empty(engine.max_weight()), ScanOutcome::merge)
}

fn spectrum_from(outcome: &ScanOutcome, excluded: Vec<InfoWord>, rotations: bool) -> WeightSpectrum {
    let counts = outcome
        .hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, &c)| (w as u32, c))
        .collect();
    WeightSpectrum {
        counts,
        excluded,
        rotations_excluded: rotations,
    }
}

impl GeneratorMatrix {
    /// Exhaustive weight spectrum over all nonzero info words.
    pub fn weight_spectrum(&self) -> Result<WeightSpectrum> {
        self.weight_spectrum_excluding(&[])
    }

    /// Weight spectrum with specific info words excluded (in addition to the
    /// all-zero word).
    pub fn weight_spectrum_excluding(&self, excluded: &[InfoWord]) -> Result<WeightSpectrum> {
        let engine = Engine::new(self)?;
        let mut indices = Vec::with_capacity(excluded.len());
        for w in excluded {
            if w.k1() != self.k1() || w.k2() != self.k2() {
                return Err(Error::DimensionMismatch {
                    expected_k1: self.k1(),
                    expected_k2: self.k2(),
                    got_k1: w.k1(),
                    got_k2: w.k2(),
                });
            }
            indices.push(w.index());
        }
        indices.sort_unstable();
        indices.dedup();
        let opts = ScanOptions {
            exclude_indices: indices,
            ..ScanOptions::plain()
        };
        let outcome = run_scan(&engine, &opts);
        Ok(spectrum_from(&outcome, excluded.to_vec(), false))
    }

    /// Spectrum of a rotationally invariant matrix with the rotation info
    /// words excluded: the quantity summed by the non-coherent union bound.
    pub fn nc_excluded_spectrum(&self) -> Result<WeightSpectrum> {
        let preimages = self.rotation_preimages()?;
        let mut indices: Vec<u32> = preimages.iter().map(|w| w.index()).collect();
        indices.sort_unstable();
        indices.dedup();
        let engine = Engine::new(self)?;
        let opts = ScanOptions {
            exclude_indices: indices,
            ..ScanOptions::plain()
        };
        let outcome = run_scan(&engine, &opts);
        Ok(spectrum_from(&outcome, preimages, true))
    }

    /// `(d_min, multiplicity)` over all nonzero info words; `(0, 0)` only
    /// for the degenerate case where nothing is enumerated.
    pub fn min_distance(&self) -> Result<(u32, u64)> {
        let engine = Engine::new(self)?;
        let outcome = run_scan(&engine, &ScanOptions::plain());
        if outcome.min_weight == u32::MAX {
            Ok((0, 0))
        } else {
            Ok((outcome.min_weight, outcome.min_count))
        }
    }

    /// The nearest-neighbor set: every nonzero info word whose codeword
    /// weight equals the minimum distance, in ascending index order.
    pub fn nearest_neighbors(&self) -> Result<Vec<InfoWord>> {
        let engine = Engine::new(self)?;
        let opts = ScanOptions {
            collect_minima: true,
            ..ScanOptions::plain()
        };
        let outcome = run_scan(&engine, &opts);
        Ok(outcome
            .minima
            .iter()
            .map(|&idx| InfoWord::from_index(self.k1(), self.k2(), idx))
            .collect())
    }

    /// True iff the all-one codeword lies in the row span, i.e. the codebook
    /// is closed under the M constellation rotations.
    pub fn is_rotationally_invariant(&self) -> Result<bool> {
        let engine = Engine::new(self)?;
        Ok(self.find_constant_preimage(&engine, 1).is_some())
    }

    /// Non-coherent equivalent distance of a rotationally invariant parent:
    /// the minimum weight over codewords that are not equal to any rotation
    /// word `i * all-one` (compared by value, so non-injective parents are
    /// handled exactly).
    pub fn nc_min_distance(&self) -> Result<NcDistanceReport> {
        if !self.is_rotationally_invariant()? {
            return Err(Error::NotRotationallyInvariant);
        }
        let engine = Engine::new(self)?;
        let opts = ScanOptions {
            exclude_rotation_values: true,
            ..ScanOptions::plain()
        };
        let outcome = run_scan(&engine, &opts);
        if outcome.min_weight == u32::MAX {
            return Ok(NcDistanceReport {
                d_eq_min: None,
                attained_by: None,
                detectable: false,
            });
        }
        Ok(NcDistanceReport {
            d_eq_min: Some(outcome.min_weight),
            attained_by: Some(InfoWord::from_index(
                self.k1(),
                self.k2(),
                outcome.min_index,
            )),
            detectable: outcome.min_weight > 0,
        })
    }

    /// Lowest-index info words encoding each rotation word `i * all-one`,
    /// `i = 1..M-1`. Errors when the matrix is not rotationally invariant.
    pub fn rotation_preimages(&self) -> Result<Vec<InfoWord>> {
        let engine = Engine::new(self)?;
        // Fast path: an all-one first row maps (i, 0, ..) onto i * all-one.
        // For Z4 the all-one row must be an A-block row (order 4).
        let first_all_one = match self.ring() {
            Ring::Z4 => self.k1() > 0 && self.a_rows()[0].iter().all(|&s| s == 1),
            Ring::Z2 => self.k2() > 0 && self.b_rows()[0].iter().all(|&s| s == 1),
        };
        if first_all_one {
            return Ok((1..self.ring().modulus())
                .map(|i| InfoWord::from_index(self.k1(), self.k2(), i as u32))
                .collect());
        }
        let mut out = Vec::new();
        for i in 1..self.ring().modulus() {
            match self.find_constant_preimage(&engine, i) {
                Some(idx) => out.push(InfoWord::from_index(self.k1(), self.k2(), idx)),
                None => return Err(Error::NotRotationallyInvariant),
            }
        }
        Ok(out)
    }

    fn find_constant_preimage(&self, engine: &Engine, value: u8) -> Option<u32> {
        let target_w = self.ring().weight_unchecked(value) * self.n_sym() as u32;
        let mut found = None;
        // Sequential with early exit; enumeration sizes in practice are
        // small (K <= 15).
        let total = engine.total;
        let mut idx = 0u64;
        while idx < total && found.is_none() {
            let end = (idx + CHUNK_WORDS).min(total);
            engine.scan_range(idx, end, &mut |i, w, acc| {
                if found.is_none() && i != 0 && w == target_w && acc.iter().all(|&s| s == value)
                {
                    found = Some(i);
                }
            });
            idx = end;
        }
        found
    }
}

/// Visit every info word of the code, including the all-zero one, in
/// ascending index order, with its codeword symbols.
pub(crate) fn for_each_codeword(
    g: &GeneratorMatrix,
    f: &mut impl FnMut(u32, &[u8]),
) -> Result<()> {
    let engine = Engine::new(g)?;
    engine.scan_range(0, engine.total, &mut |idx, _w, acc| f(idx, acc));
    Ok(())
}

/// Non-coherent detectability report for a transmit codebook given by a
/// linear code under the natural mapping: the pairwise minimum, over
/// codeword pairs and all M rotations, of the difference weight. Computed by
/// augmenting the code with the all-one row and scanning once.
pub fn nc_codebook_report(code: &GeneratorMatrix) -> Result<NcDistanceReport> {
    // An explicit rotation word inside the code itself (including a repeated
    // codeword, i = 0) makes two codebook entries indistinguishable.
    let engine = Engine::new(code)?;
    let rotations = engine.rotation_checks();
    let mut ambiguous: Option<u32> = None;
    let total = engine.total;
    let mut idx = 0u64;
    while idx < total && ambiguous.is_none() {
        let end = (idx + CHUNK_WORDS).min(total);
        engine.scan_range(idx, end, &mut |i, w, acc| {
            if ambiguous.is_none() && i != 0 {
                for &(rw, v) in &rotations {
                    if w == rw && acc.iter().all(|&s| s == v) {
                        ambiguous = Some(i);
                        return;
                    }
                }
            }
        });
        idx = end;
    }
    if let Some(witness) = ambiguous {
        return Ok(NcDistanceReport {
            d_eq_min: Some(0),
            attained_by: Some(InfoWord::from_index(code.k1(), code.k2(), witness)),
            detectable: false,
        });
    }
    let augmented = augment_with_all_one(code)?;
    let report = augmented.nc_min_distance()?;
    Ok(report)
}

/// Prepend the all-one row, turning a transmit code into the rotationally
/// invariant parent whose non-rotation codewords are exactly all
/// `c - c' + i * all-one` pair differences.
fn augment_with_all_one(code: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let ones = vec![1u8; code.n_sym()];
    match code.ring() {
        Ring::Z4 => {
            let mut a = Vec::with_capacity(code.k1() + 1);
            a.push(ones);
            a.extend(code.a_rows().iter().cloned());
            GeneratorMatrix::from_rows(Ring::Z4, a, code.b_rows().to_vec())
        }
        Ring::Z2 => {
            let mut b = Vec::with_capacity(code.k2() + 1);
            b.push(ones);
            b.extend(code.b_rows().iter().cloned());
            GeneratorMatrix::from_rows(Ring::Z2, vec![], b)
        }
    }
}

/// Pairwise non-coherent equivalent distance of a binary code transmitted
/// on QPSK through the Gray bit pairing. Z4 and Z2^2 are not isomorphic, so
/// there is no spectrum shortcut; all codeword pairs are compared against
/// all four rotations.
pub fn nc_gray_qpsk_report(code: &GeneratorMatrix) -> Result<NcDistanceReport> {
    if code.ring() != Ring::Z2 {
        return Err(Error::InvalidConfig(
            "Gray-paired QPSK analysis applies to binary codes".into(),
        ));
    }
    if !code.n_sym().is_multiple_of(2) {
        return Err(Error::OddBitLength { n_bits: code.n_sym() });
    }
    let bits = code.dimension_bits();
    if 2 * bits + 2 > ENUMERATION_CAP_LOG2 as usize {
        return Err(Error::EnumerationCapExceeded {
            dimension_bits: 2 * bits + 2,
            cap_log2: ENUMERATION_CAP_LOG2,
        });
    }
    let engine = Engine::new(code)?;
    let mut mapped: Vec<Vec<u8>> = Vec::with_capacity(1 << bits);
    engine.scan_range(0, engine.total, &mut |_, _, acc| {
        mapped.push(crate::ring::gray_qpsk_symbols(acc).expect("even validated"));
    });
    let mut best: Option<u32> = None;
    for i in 0..mapped.len() {
        for j in (i + 1)..mapped.len() {
            let mut counts = [0u32; 4];
            for (&a, &b) in mapped[i].iter().zip(&mapped[j]) {
                counts[((a + 4 - b) % 4) as usize] += 1;
            }
            let pair_min = (0..4u8)
                .map(|r| {
                    (0..4u8)
                        .map(|v| counts[v as usize] * crate::ring::W4[((v + r) % 4) as usize])
                        .sum::<u32>()
                })
                .min()
                .unwrap();
            if best.is_none_or(|b| pair_min < b) {
                best = Some(pair_min);
                if pair_min == 0 {
                    return Ok(NcDistanceReport {
                        d_eq_min: Some(0),
                        attained_by: None,
                        detectable: false,
                    });
                }
            }
        }
    }
    Ok(NcDistanceReport {
        d_eq_min: best,
        attained_by: None,
        detectable: best.is_some_and(|b| b > 0),
    })
}
