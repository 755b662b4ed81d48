//! Greedy construction of rate-compatible code families.
//!
//! Starting from an empty generator, each step finds the nearest-neighbor
//! set U (info words at the current minimum distance), scores every
//! admissible column by how many of those neighbors it helps, and appends a
//! uniformly drawn best column. Because columns are only ever appended,
//! every prefix of the result is itself a constructed code: one build yields
//! a whole rate-compatible family.
//!
//! Constraints restrict the candidate columns. `RotationInvariant` forces
//! the first row to stay all-one, which keeps the all-one codeword in the
//! codebook at every length. `BinaryNc4` forces the two leading binary rows
//! to the all-one and alternating patterns whose span contains all QPSK
//! rotation images of the bit stream.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::GeneratorMatrix;
use crate::ring::{Ring, W4};
use crate::rng::SplitMix64;
use crate::spectrum::{nc_gray_qpsk_report, NcDistanceReport, ENUMERATION_CAP_LOG2};
use crate::word::InfoWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    None,
    /// First row forced to all-one.
    RotationInvariant,
    /// Binary only: row 0 forced to all-one, row 1 to the alternating
    /// 0,1,0,1,... pattern (column j gets j mod 2).
    BinaryNc4,
}

impl Constraint {
    /// Number of leading rows the constraint pins.
    pub fn fixed_rows(self) -> usize {
        match self {
            Constraint::None => 0,
            Constraint::RotationInvariant => 1,
            Constraint::BinaryNc4 => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BuildConfig {
    pub ring: Ring,
    /// Z4-row count, including a constrained all-one row.
    pub k1: usize,
    /// Binary-row count, including constrained rows.
    pub k2: usize,
    /// Stop once the minimum distance first reaches this value.
    pub target_d_min: Option<u32>,
    /// Stop once this many symbols have been appended.
    pub max_n_sym: Option<usize>,
    pub constraint: Constraint,
    /// Optional step-6 rule: never reuse a column already in the matrix.
    pub enforce_distinct_columns: bool,
    pub rng_seed: u64,
    /// Independent runs for [`multi_run_best`]; run `i` is seeded
    /// `rng_seed ^ i`, so run 0 reproduces [`greedy_construct`].
    pub runs: u32,
}

impl BuildConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ring == Ring::Z2 && self.k1 != 0 {
            return Err(Error::InvalidConfig("binary codes need k1 = 0".into()));
        }
        let bits = 2 * self.k1 + self.k2;
        if bits == 0 {
            return Err(Error::InvalidConfig("need at least one row".into()));
        }
        if bits > ENUMERATION_CAP_LOG2 as usize {
            return Err(Error::EnumerationCapExceeded {
                dimension_bits: bits,
                cap_log2: ENUMERATION_CAP_LOG2,
            });
        }
        match (self.target_d_min, self.max_n_sym) {
            (None, None) => {
                return Err(Error::InvalidConfig(
                    "need a target minimum distance or a maximum length".into(),
                ))
            }
            (Some(0), _) => {
                return Err(Error::InvalidConfig("target minimum distance must be >= 1".into()))
            }
            _ => {}
        }
        match self.constraint {
            Constraint::None => {}
            Constraint::RotationInvariant => {
                if self.ring == Ring::Z4 && self.k1 == 0 {
                    return Err(Error::InvalidConfig(
                        "a rotationally invariant Z4 code needs an order-4 all-one row (k1 >= 1)"
                            .into(),
                    ));
                }
            }
            Constraint::BinaryNc4 => {
                if self.ring != Ring::Z2 {
                    return Err(Error::InvalidConfig(
                        "the two-fixed-row construction is a binary construction".into(),
                    ));
                }
                if self.k2 < 2 {
                    return Err(Error::InvalidConfig(
                        "the two-fixed-row construction needs k2 >= 2".into(),
                    ));
                }
            }
        }
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be >= 1".into()));
        }
        Ok(())
    }
}

/// First length (in symbols) at which the family's minimum distance reached
/// `d_min`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Milestone {
    pub d_min: u32,
    pub n_sym: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildStatus {
    ReachedTarget,
    ReachedMaxLen,
    /// The admissible candidate set became empty (possible with distinct
    /// columns enforced); the family is returned as built so far.
    CandidatesExhausted,
}

/// A constructed rate-compatible family: the longest generator built plus
/// the per-distance length milestones of its prefixes.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeFamily {
    pub generator: GeneratorMatrix,
    /// One entry per distance value 1..=d_max, in order.
    pub milestones: Vec<Milestone>,
    pub constraint: Constraint,
    pub seed: u64,
    pub distinct_columns: bool,
    pub status: BuildStatus,
}

impl CodeFamily {
    /// Milestone for a given distance target, when it was reached.
    pub fn milestone_for(&self, d_min: u32) -> Option<Milestone> {
        if d_min == 0 {
            return Some(Milestone { d_min: 0, n_sym: 0 });
        }
        self.milestones.get(d_min as usize - 1).copied()
    }

    /// Largest distance any prefix reached.
    pub fn achieved_d_min(&self) -> u32 {
        self.milestones.last().map(|m| m.d_min).unwrap_or(0)
    }

    pub fn fixed_rows(&self) -> usize {
        self.constraint.fixed_rows()
    }
}

/// Best-of-R outcome: the selected family plus, per distance value, the
/// shortest length any run achieved (what the best-of-100 tables report).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiRunBest {
    pub best: CodeFamily,
    pub best_lengths: Vec<BestLength>,
    pub runs: u32,
    pub base_seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestLength {
    pub d_min: u32,
    pub n_sym: usize,
    pub run_index: u32,
}

/// Number of neighbors a binary candidate column helps: the sum of scalar
/// products `g . u` over Z2. The greedy picks an argmax.
pub fn score_column_binary(column: &[u8], neighbors: &[InfoWord]) -> u64 {
    neighbors
        .iter()
        .map(|u| {
            debug_assert_eq!(column.len(), u.k2());
            let dot: u8 = column
                .iter()
                .zip(u.z2_part())
                .map(|(&g, &b)| g & b)
                .fold(0, |acc, x| acc ^ x);
            dot as u64
        })
        .sum()
}

/// Z4 candidate score: how many neighbors the column leaves untouched
/// (weight-0 products) and how many it helps only marginally (weight-1
/// products). The greedy picks the lexicographic argmin.
pub fn score_column_z4(
    column_a: &[u8],
    column_b: &[u8],
    neighbors: &[InfoWord],
) -> (u64, u64) {
    let mut zero = 0u64;
    let mut one = 0u64;
    for u in neighbors {
        debug_assert_eq!(column_a.len(), u.k1());
        debug_assert_eq!(column_b.len(), u.k2());
        let mut dot: u32 = 0;
        for (&g, &s) in column_a.iter().zip(u.z4_part()) {
            dot += g as u32 * s as u32;
        }
        for (&g, &b) in column_b.iter().zip(u.z2_part()) {
            dot += 2 * (g & b) as u32;
        }
        match W4[(dot % 4) as usize] {
            0 => zero += 1,
            1 => one += 1,
            _ => {}
        }
    }
    (zero, one)
}

struct Builder<'c> {
    cfg: &'c BuildConfig,
    k1: usize,
    k2: usize,
    total_words: u32,
    matrix: GeneratorMatrix,
    /// Current codeword weight per info-word index.
    weights: Vec<u32>,
    used_columns: HashSet<u64>,
    rng: SplitMix64,
}

impl<'c> Builder<'c> {
    fn new(cfg: &'c BuildConfig, seed: u64) -> Result<Self> {
        let matrix = GeneratorMatrix::new(cfg.ring, cfg.k1, cfg.k2)?;
        let bits = 2 * cfg.k1 + cfg.k2;
        Ok(Builder {
            cfg,
            k1: cfg.k1,
            k2: cfg.k2,
            total_words: 1u32 << bits,
            matrix,
            weights: vec![0; 1usize << bits],
            used_columns: HashSet::new(),
            rng: SplitMix64::new(seed),
        })
    }

    fn column_mask(column: &[u8]) -> u32 {
        column
            .iter()
            .enumerate()
            .fold(0u32, |m, (j, &g)| m | ((g as u32) << j))
    }

    /// Z4 product of a column with the info word at `index`.
    #[inline]
    fn dot_z4(&self, column: &[u8], index: u32) -> u8 {
        let mut dot = 0u32;
        for (i, &g) in column[..self.k1].iter().enumerate() {
            dot += g as u32 * ((index >> (2 * i)) & 3);
        }
        for (j, &g) in column[self.k1..].iter().enumerate() {
            dot += 2 * g as u32 * ((index >> (2 * self.k1 + j)) & 1);
        }
        (dot % 4) as u8
    }

    fn column_key(column: &[u8]) -> u64 {
        column
            .iter()
            .enumerate()
            .fold(0u64, |k, (i, &s)| k | ((s as u64) << (2 * i)))
    }

    fn forced_entries(&self, next_column_index: usize) -> Vec<(usize, u8)> {
        match self.cfg.constraint {
            Constraint::None => vec![],
            Constraint::RotationInvariant => vec![(0, 1)],
            Constraint::BinaryNc4 => vec![(0, 1), (1, (next_column_index % 2) as u8)],
        }
    }

    /// All admissible candidate columns for the next append, in a fixed
    /// deterministic order.
    fn candidates(&self, next_column_index: usize) -> Vec<Vec<u8>> {
        let forced = self.forced_entries(next_column_index);
        let rows = self.k1 + self.k2;
        let free_rows: Vec<usize> = (0..rows)
            .filter(|&r| forced.iter().all(|&(fr, _)| fr != r))
            .collect();
        let mut free_bits = 0u32;
        for &r in &free_rows {
            free_bits += if r < self.k1 { 2 } else { 1 };
        }
        let mut out = Vec::with_capacity(1usize << free_bits);
        for c in 0..(1u64 << free_bits) {
            let mut column = vec![0u8; rows];
            for &(r, v) in &forced {
                column[r] = v;
            }
            let mut shift = 0;
            for &r in &free_rows {
                let width = if r < self.k1 { 2 } else { 1 };
                column[r] = ((c >> shift) & ((1 << width) - 1)) as u8;
                shift += width;
            }
            if column.iter().all(|&s| s == 0) {
                continue;
            }
            if self.cfg.enforce_distinct_columns
                && self.used_columns.contains(&Self::column_key(&column))
            {
                continue;
            }
            out.push(column);
        }
        out
    }

    fn current_d_min(&self) -> u32 {
        self.weights[1..].iter().copied().min().unwrap_or(0)
    }

    fn neighbor_indices(&self, d: u32) -> Vec<u32> {
        (1..self.total_words)
            .filter(|&u| self.weights[u as usize] == d)
            .collect()
    }

    /// Pick the best-scoring candidate (random uniform among ties) or None
    /// when the candidate set is empty.
    fn choose_column(&mut self, candidates: Vec<Vec<u8>>, neighbors: &[u32]) -> Option<Vec<u8>> {
        if candidates.is_empty() {
            return None;
        }
        let mut best: Vec<Vec<u8>> = Vec::new();
        match self.cfg.ring {
            Ring::Z2 => {
                let mut best_score = 0i64;
                for column in candidates {
                    let mask = Self::column_mask(&column);
                    let score: i64 = neighbors
                        .iter()
                        .map(|&u| ((mask & u).count_ones() & 1) as i64)
                        .sum();
                    if best.is_empty() || score > best_score {
                        best_score = score;
                        best = vec![column];
                    } else if score == best_score {
                        best.push(column);
                    }
                }
            }
            Ring::Z4 => {
                let mut best_score = (u64::MAX, u64::MAX);
                for column in candidates {
                    let mut zero = 0u64;
                    let mut one = 0u64;
                    for &u in neighbors {
                        match W4[self.dot_z4(&column, u) as usize] {
                            0 => zero += 1,
                            1 => one += 1,
                            _ => {}
                        }
                    }
                    let score = (zero, one);
                    if best.is_empty() || score < best_score {
                        best_score = score;
                        best = vec![column];
                    } else if score == best_score {
                        best.push(column);
                    }
                }
            }
        }
        let pick = self.rng.next_below(best.len() as u64) as usize;
        Some(best.swap_remove(pick))
    }

    fn append(&mut self, column: &[u8]) -> Result<()> {
        match self.cfg.ring {
            Ring::Z2 => {
                let mask = Self::column_mask(column);
                for u in 1..self.total_words {
                    self.weights[u as usize] += (mask & u).count_ones() & 1;
                }
            }
            Ring::Z4 => {
                for u in 1..self.total_words {
                    let s = self.dot_z4(column, u);
                    self.weights[u as usize] += W4[s as usize];
                }
            }
        }
        if self.cfg.enforce_distinct_columns {
            self.used_columns.insert(Self::column_key(column));
        }
        self.matrix.push_column(column)
    }

    fn run(mut self, seed: u64) -> Result<CodeFamily> {
        let mut milestones: Vec<Milestone> = Vec::new();
        let status = loop {
            let d = self.current_d_min();
            if let Some(target) = self.cfg.target_d_min {
                if d >= target {
                    break BuildStatus::ReachedTarget;
                }
            }
            if let Some(max_n) = self.cfg.max_n_sym {
                if self.matrix.n_sym() >= max_n {
                    break BuildStatus::ReachedMaxLen;
                }
            }
            let neighbors = self.neighbor_indices(d);
            let candidates = self.candidates(self.matrix.n_sym());
            let Some(column) = self.choose_column(candidates, &neighbors) else {
                break BuildStatus::CandidatesExhausted;
            };
            self.append(&column)?;
            let new_d = self.current_d_min();
            let recorded = milestones.last().map(|m| m.d_min).unwrap_or(0);
            for t in recorded + 1..=new_d {
                milestones.push(Milestone {
                    d_min: t,
                    n_sym: self.matrix.n_sym(),
                });
            }
        };
        Ok(CodeFamily {
            generator: self.matrix,
            milestones,
            constraint: self.cfg.constraint,
            seed,
            distinct_columns: self.cfg.enforce_distinct_columns,
            status,
        })
    }
}

/// One seeded greedy construction.
pub fn greedy_construct(config: &BuildConfig) -> Result<CodeFamily> {
    config.validate()?;
    Builder::new(config, config.rng_seed)?.run(config.rng_seed)
}

/// `config.runs` independent constructions (run `i` seeded
/// `rng_seed ^ i`), reduced to the per-target best lengths and the single
/// family that reaches the configured target soonest.
pub fn multi_run_best(config: &BuildConfig) -> Result<MultiRunBest> {
    config.validate()?;
    let families: Vec<CodeFamily> = (0..config.runs)
        .into_par_iter()
        .map(|i| {
            let seed = config.rng_seed ^ i as u64;
            let mut cfg = config.clone();
            cfg.rng_seed = seed;
            cfg.runs = 1;
            Builder::new(&cfg, seed)?.run(seed)
        })
        .collect::<Result<Vec<_>>>()?;

    let d_max = families.iter().map(|f| f.achieved_d_min()).max().unwrap_or(0);
    let mut best_lengths = Vec::new();
    for d in 1..=d_max {
        let mut entry: Option<BestLength> = None;
        for (i, family) in families.iter().enumerate() {
            if let Some(m) = family.milestone_for(d) {
                if entry.is_none_or(|e| m.n_sym < e.n_sym) {
                    entry = Some(BestLength {
                        d_min: d,
                        n_sym: m.n_sym,
                        run_index: i as u32,
                    });
                }
            }
        }
        if let Some(e) = entry {
            best_lengths.push(e);
        }
    }

    let best_index = match config.target_d_min {
        Some(target) => {
            let mut choice = 0usize;
            let mut choice_len = usize::MAX;
            for (i, family) in families.iter().enumerate() {
                let len = family
                    .milestone_for(target)
                    .map(|m| m.n_sym)
                    .unwrap_or(usize::MAX - 1);
                if len < choice_len {
                    choice = i;
                    choice_len = len;
                }
            }
            choice
        }
        None => {
            // No explicit target: prefer the run that got furthest, then
            // shortest, then lowest index.
            let mut choice = 0usize;
            for (i, family) in families.iter().enumerate().skip(1) {
                let cur = &families[choice];
                let better = family.achieved_d_min() > cur.achieved_d_min()
                    || (family.achieved_d_min() == cur.achieved_d_min()
                        && family.generator.n_sym() < cur.generator.n_sym());
                if better {
                    choice = i;
                }
            }
            choice
        }
    };

    Ok(MultiRunBest {
        best: families.into_iter().nth(best_index).expect("runs >= 1"),
        best_lengths,
        runs: config.runs,
        base_seed: config.rng_seed,
    })
}

/// The code actually transmitted for non-coherent detection: the parent
/// family's generator with its constrained rows removed, paired with the
/// relevant equivalent-distance report (the parent's spectrum-based one for
/// rotationally invariant parents, the pairwise Gray-mapped one for the
/// binary QPSK construction).
pub fn derive_nc_code(family: &CodeFamily) -> Result<DerivedNcCode> {
    match family.constraint {
        Constraint::None => Err(Error::InvalidConfig(
            "family was built without fixed rows; nothing to remove".into(),
        )),
        Constraint::RotationInvariant => {
            let generator = family.generator.remove_leading_rows(1)?;
            let report = family.generator.nc_min_distance()?;
            Ok(DerivedNcCode { generator, report })
        }
        Constraint::BinaryNc4 => {
            let generator = family.generator.remove_leading_rows(2)?;
            let report = nc_gray_qpsk_report(&generator)?;
            Ok(DerivedNcCode { generator, report })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedNcCode {
    pub generator: GeneratorMatrix,
    pub report: NcDistanceReport,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(ring: Ring, k1: usize, k2: usize, target: u32) -> BuildConfig {
        BuildConfig {
            ring,
            k1,
            k2,
            target_d_min: Some(target),
            max_n_sym: None,
            constraint: Constraint::None,
            enforce_distinct_columns: false,
            rng_seed: 1,
            runs: 1,
        }
    }

    #[test]
    fn score_binary_spec_cases() {
        let u = vec![
            InfoWord::binary(vec![1, 0]).unwrap(),
            InfoWord::binary(vec![0, 1]).unwrap(),
            InfoWord::binary(vec![1, 1]).unwrap(),
        ];
        assert_eq!(score_column_binary(&[1, 1], &u), 2);
        assert_eq!(score_column_binary(&[0, 0], &u), 0);
        let single = vec![InfoWord::binary(vec![1, 0]).unwrap()];
        assert_eq!(score_column_binary(&[1, 0], &single), 1);
    }

    #[test]
    fn score_z4_spec_cases() {
        // g orthogonal to every neighbor counts them all as zero-weight.
        let u = vec![
            InfoWord::new(vec![0], vec![]).unwrap(),
            InfoWord::new(vec![2], vec![]).unwrap(),
        ];
        assert_eq!(score_column_z4(&[2], &[], &u), (2, 0));
        // products 2 and 2 -> neither zero- nor one-weight
        let u = vec![
            InfoWord::new(vec![1], vec![]).unwrap(),
            InfoWord::new(vec![3], vec![]).unwrap(),
        ];
        assert_eq!(score_column_z4(&[2], &[], &u), (0, 0));
        // product 1 -> one weight-1 product
        let u = vec![InfoWord::new(vec![1], vec![]).unwrap()];
        assert_eq!(score_column_z4(&[1], &[], &u), (0, 1));
    }

    #[test]
    fn cordaro_wagner_lengths_for_k2() {
        // K=2 binary codes are optimal for every seed.
        for seed in [1u64, 99, 31337] {
            let mut cfg = config(Ring::Z2, 0, 2, 50);
            cfg.rng_seed = seed;
            let family = greedy_construct(&cfg).unwrap();
            assert_eq!(family.status, BuildStatus::ReachedTarget);
            let expected = [(2, 3), (4, 6), (10, 15), (20, 30), (30, 45), (50, 75)];
            for (d, n) in expected {
                assert_eq!(family.milestone_for(d).unwrap().n_sym, n, "seed {seed} d={d}");
            }
        }
    }

    #[test]
    fn k3_binary_lengths_are_optimal() {
        for seed in [7u64, 2024] {
            let mut cfg = config(Ring::Z2, 0, 3, 50);
            cfg.rng_seed = seed;
            let family = greedy_construct(&cfg).unwrap();
            let expected = [(2, 4), (4, 7), (10, 18), (20, 35), (30, 53), (50, 88)];
            for (d, n) in expected {
                assert_eq!(family.milestone_for(d).unwrap().n_sym, n, "seed {seed} d={d}");
            }
        }
    }

    #[test]
    fn target_one_needs_full_rank() {
        // d_min = 1 means no nonzero word has weight 0, which takes exactly
        // K independent columns.
        let family = greedy_construct(&config(Ring::Z2, 0, 1, 1)).unwrap();
        assert_eq!(family.milestone_for(1).unwrap().n_sym, 1);
        let family = greedy_construct(&config(Ring::Z2, 0, 3, 1)).unwrap();
        assert_eq!(family.milestone_for(1).unwrap().n_sym, 3);
    }

    #[test]
    fn deterministic_under_seed() {
        let cfg = config(Ring::Z4, 2, 1, 6);
        let a = greedy_construct(&cfg).unwrap();
        let b = greedy_construct(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ri_constraint_keeps_all_one_row_at_every_prefix() {
        let mut cfg = config(Ring::Z4, 2, 0, 8);
        cfg.constraint = Constraint::RotationInvariant;
        let family = greedy_construct(&cfg).unwrap();
        let g = &family.generator;
        assert!(g.a_rows()[0].iter().all(|&s| s == 1));
        for n in 0..=g.n_sym() {
            assert!(g.prefix(n).unwrap().is_rotationally_invariant().unwrap());
        }
    }

    #[test]
    fn nc4_constraint_rows() {
        let mut cfg = config(Ring::Z2, 0, 4, 6);
        cfg.constraint = Constraint::BinaryNc4;
        let family = greedy_construct(&cfg).unwrap();
        let rows = family.generator.b_rows();
        assert!(rows[0].iter().all(|&b| b == 1));
        for (j, &b) in rows[1].iter().enumerate() {
            assert_eq!(b as usize, j % 2);
        }
    }

    #[test]
    fn nc4_requires_binary() {
        let mut cfg = config(Ring::Z4, 2, 0, 4);
        cfg.constraint = Constraint::BinaryNc4;
        assert!(greedy_construct(&cfg).is_err());
    }

    #[test]
    fn distinct_columns_exhaust() {
        let mut cfg = config(Ring::Z2, 0, 2, 1000);
        cfg.enforce_distinct_columns = true;
        cfg.max_n_sym = Some(50);
        let family = greedy_construct(&cfg).unwrap();
        assert_eq!(family.status, BuildStatus::CandidatesExhausted);
        assert_eq!(family.generator.n_sym(), 3); // all nonzero K=2 columns
    }

    #[test]
    fn multi_run_single_equals_direct() {
        let mut cfg = config(Ring::Z2, 0, 4, 8);
        cfg.rng_seed = 555;
        let direct = greedy_construct(&cfg).unwrap();
        let multi = multi_run_best(&cfg).unwrap();
        assert_eq!(multi.best, direct);
        assert_eq!(multi.runs, 1);
    }

    #[test]
    fn best_of_many_never_worse() {
        let mut cfg = config(Ring::Z2, 0, 5, 12);
        let single = greedy_construct(&cfg).unwrap();
        cfg.runs = 16;
        let multi = multi_run_best(&cfg).unwrap();
        for d in 1..=12 {
            let best = multi.best_lengths.iter().find(|b| b.d_min == d).unwrap();
            let base = single.milestone_for(d).unwrap();
            assert!(best.n_sym <= base.n_sym, "d={d}");
        }
    }

    #[test]
    fn chosen_columns_score_maximally() {
        // Re-score every appended column post hoc against the full
        // candidate set of its step.
        let mut cfg = config(Ring::Z2, 0, 4, 5);
        cfg.rng_seed = 9;
        let family = greedy_construct(&cfg).unwrap();
        let g = &family.generator;
        for n in 0..g.n_sym() {
            let prefix = g.prefix(n).unwrap();
            let neighbors = prefix.nearest_neighbors().unwrap();
            let chosen: Vec<u8> = (0..g.rows()).map(|r| g.entry(r, n)).collect();
            let chosen_score = score_column_binary(&chosen, &neighbors);
            for c in 1u32..(1 << 4) {
                let cand: Vec<u8> = (0..4).map(|r| ((c >> r) & 1) as u8).collect();
                assert!(
                    score_column_binary(&cand, &neighbors) <= chosen_score,
                    "step {n}: candidate {cand:?} beats chosen {chosen:?}"
                );
            }
        }
    }

    #[test]
    fn derive_nc_removes_rows() {
        let mut cfg = config(Ring::Z2, 0, 4, 4);
        cfg.constraint = Constraint::RotationInvariant;
        let family = greedy_construct(&cfg).unwrap();
        let derived = derive_nc_code(&family).unwrap();
        assert_eq!(derived.generator.k2(), 3);
        assert_eq!(
            derived.generator.b_rows(),
            &family.generator.b_rows()[1..]
        );
        assert!(derived.report.d_eq_min.is_some());

        let plain = greedy_construct(&config(Ring::Z2, 0, 3, 3)).unwrap();
        assert!(derive_nc_code(&plain).is_err());
    }

    #[test]
    fn z4_family_reaches_target() {
        let cfg = config(Ring::Z4, 2, 0, 6);
        let family = greedy_construct(&cfg).unwrap();
        assert_eq!(family.status, BuildStatus::ReachedTarget);
        let (d, _) = family.generator.min_distance().unwrap();
        assert!(d >= 6);
        // milestone prefixes really achieve their distances
        for m in &family.milestones {
            let (dp, _) = family
                .generator
                .prefix(m.n_sym)
                .unwrap()
                .min_distance()
                .unwrap();
            assert!(dp >= m.d_min);
        }
    }
}
