//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured values (run with `--nocapture` to see them).
//!
//! Criterion 2's published-table checks for the two non-coherent parent
//! matrices fail: the appendix matrices measurably come from different
//! greedy runs than the table rows they are described as corresponding to
//! (the coherent BPSK matrix, by contrast, reproduces its table column
//! milestone-exactly). The failing assertions are kept as stated, and the
//! diagnostics list every mismatch; see the README for the measured curves.

use std::fs;
use std::path::PathBuf;

use zmcodes_core::bounds::{
    a_factor, required_dmin, ub_simple, union_bound_coherent, union_bound_erfc,
    union_bound_noncoherent, SnrPoint,
};
use zmcodes_core::hexfmt::{emit_hex_matrix, parse_hex_matrix};
use zmcodes_core::rng::SplitMix64;
use zmcodes_core::sim::{
    detect_noncoherent, estimate_fer, Codebook, Detector, PhaseModel, SimConfig,
};
use zmcodes_core::{
    derive_nc_code, greedy_construct, multi_run_best, BuildConfig, Constraint, GeneratorMatrix,
    InfoWord, Ring,
};

fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load_fixture(name: &str) -> (String, GeneratorMatrix, usize) {
    let text = fs::read_to_string(data_path(name)).expect(name);
    let (matrix, fixed) = parse_hex_matrix(&text).expect(name);
    (text, matrix, fixed)
}

const TARGETS: [u32; 6] = [2, 4, 10, 20, 30, 50];

#[test]
fn criterion1_table3_required_dmin() {
    let cases = [
        (0.0, 1.0, 22u32),
        (5.0, 1.0, 7),
        (10.0, 1.0, 3),
        (0.0, 0.5, 43),
        (5.0, 0.5, 14),
        (10.0, 0.5, 5),
    ];
    for (db, a, expected) in cases {
        let got = required_dmin(8, 1e-8, SnrPoint::from_db(db), a).unwrap();
        assert_eq!(
            got, expected,
            "required_dmin(K=8, 1e-8, {db} dB, A={a}) = {got}, want {expected}"
        );
    }
    println!("ACCEPTANCE 1 (table 3 inversion): PASS — BPSK {{22,7,3}}, QPSK {{43,14,5}}");
}

#[test]
fn criterion2_appendix_coherent_milestones() {
    let (_, bpsk, _) = load_fixture("bpsk_coherent.txt");
    let bpsk_bits = [9usize, 14, 27, 49, 69, 110];
    for (&bits, &d) in bpsk_bits.iter().zip(&TARGETS) {
        let (got, _) = bpsk.prefix_bits(bits).unwrap().min_distance().unwrap();
        assert!(got >= d, "BPSK coherent: d_min {got} < {d} at {bits} bits");
    }
    let (_, z4, _) = load_fixture("qpsk_z4_coherent.txt");
    let z4_bits = [10usize, 16, 30, 52, 76, 118];
    for (&bits, &d) in z4_bits.iter().zip(&TARGETS) {
        let (got, _) = z4.prefix_bits(bits).unwrap().min_distance().unwrap();
        assert!(got >= d, "Z4 coherent: d_min {got} < {d} at {bits} bits");
    }
    println!("ACCEPTANCE 2a (appendix coherent milestones): PASS — both coherent matrices meet every listed prefix target");
}

#[test]
fn criterion2_appendix_nc_parent_milestones() {
    // Stated against Table 1 columns 2RI2 and 4RI4. The rotational
    // invariance checks hold at every prefix; several distance targets do
    // not hold for the published matrices (different greedy runs than the
    // table rows). All mismatches are collected before asserting.
    let mut failures = Vec::new();
    let cases = [
        ("bpsk_nc_parent.txt", [10usize, 14, 28, 50, 71, 110]),
        ("qpsk_z4_nc_parent.txt", [10, 16, 30, 52, 72, 112]),
    ];
    for (name, bits_list) in cases {
        let (_, parent, fixed) = load_fixture(name);
        assert_eq!(fixed, 1, "{name}: expected one constraint row");
        for n in 0..=parent.n_sym() {
            assert!(
                parent.prefix(n).unwrap().is_rotationally_invariant().unwrap(),
                "{name}: prefix {n} not rotationally invariant"
            );
        }
        for (&bits, &d) in bits_list.iter().zip(&TARGETS) {
            let (got, _) = parent.prefix_bits(bits).unwrap().min_distance().unwrap();
            if got < d {
                failures.push(format!("{name}: d_min {got} < {d} at {bits} bits"));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "appendix NC parents miss table milestones (paper-internal data/table mismatch):\n  {}",
        failures.join("\n  ")
    );
    println!("ACCEPTANCE 2b (appendix NC parent milestones): PASS");
}

#[test]
fn criterion2_hex_round_trip() {
    for name in [
        "bpsk_coherent.txt",
        "bpsk_nc_parent.txt",
        "qpsk_z4_coherent.txt",
        "qpsk_z4_nc_parent.txt",
        "qpsk_binary_nc4_parent.txt",
    ] {
        let (text, matrix, fixed) = load_fixture(name);
        let emitted = emit_hex_matrix(&matrix, fixed).unwrap();
        assert_eq!(emitted, text, "{name}: round trip not byte-identical");
    }
    println!("ACCEPTANCE 2c (hex round-trip): PASS — all five appendix sections byte-identical");
}

#[test]
fn criterion3_greedy_reaches_published_lengths() {
    let best_lengths = |k2: usize| {
        let outcome = multi_run_best(&BuildConfig {
            ring: Ring::Z2,
            k1: 0,
            k2,
            target_d_min: Some(50),
            max_n_sym: Some(200),
            constraint: Constraint::None,
            enforce_distinct_columns: false,
            rng_seed: 20260808,
            runs: 100,
        })
        .unwrap();
        TARGETS.map(|d| {
            outcome
                .best_lengths
                .iter()
                .find(|b| b.d_min == d)
                .map(|b| b.n_sym)
                .unwrap_or(usize::MAX)
        })
    };

    // K=2 and K=3 must reach the optimal lengths exactly.
    assert_eq!(best_lengths(2), [3, 6, 15, 30, 45, 75], "K=2");
    assert_eq!(best_lengths(3), [4, 7, 18, 35, 53, 88], "K=3");

    // K=4..8: within +2 symbols of the published best-of-100 values.
    let published: [(usize, [usize; 6]); 5] = [
        (4, [5, 9, 20, 38, 57, 95]),
        (5, [6, 10, 21, 40, 59, 99]),
        (6, [7, 11, 23, 42, 62, 102]),
        (7, [8, 12, 25, 45, 65, 105]),
        (8, [9, 14, 26, 47, 68, 109]),
    ];
    let mut summary = Vec::new();
    for (k, reference) in published {
        let got = best_lengths(k);
        for (i, (&g, &r)) in got.iter().zip(&reference).enumerate() {
            assert!(
                g <= r + 2,
                "K={k}, d_min={}: achieved {g} > published {r} + 2",
                TARGETS[i]
            );
        }
        summary.push(format!("K={k}: {got:?} vs {reference:?}"));
    }
    println!(
        "ACCEPTANCE 3 (greedy lengths, 100 runs): PASS — K=2/3 optimal exactly; {}",
        summary.join("; ")
    );
}

/// Pairwise brute-force equivalent distance over all parent codeword pairs
/// and all M rotations, skipping rotation-equivalent pairs.
fn pairwise_d_eq(parent: &GeneratorMatrix) -> Option<u32> {
    let total = 1u32 << parent.dimension_bits();
    let words: Vec<_> = (0..total)
        .map(|i| {
            parent
                .encode(&InfoWord::from_index(parent.k1(), parent.k2(), i))
                .unwrap()
        })
        .collect();
    let m = parent.ring().modulus();
    let mut best = None;
    for a in 0..words.len() {
        for b in 0..words.len() {
            if a == b {
                continue;
            }
            let diff = words[a].sub(&words[b]);
            if (0..m).any(|i| diff.add_constant(i).weight() == 0) {
                continue;
            }
            let pair_min = (0..m).map(|i| diff.add_constant(i).weight()).min().unwrap();
            if best.is_none_or(|cur| pair_min < cur) {
                best = Some(pair_min);
            }
        }
    }
    best
}

#[test]
fn criterion4_nc_distance_oracle_equivalence() {
    let mut rng = SplitMix64::new(0xACCE97);
    let mut checked = 0;
    while checked < 50 {
        let ring = if checked % 2 == 0 { Ring::Z2 } else { Ring::Z4 };
        let n = 1 + rng.next_below(16) as usize;
        let (k1, k2) = match ring {
            Ring::Z2 => (0, 2 + rng.next_below(7) as usize), // K <= 8
            Ring::Z4 => {
                let k1 = 1 + rng.next_below(3) as usize; // 1..=3
                let k2 = rng.next_below(1 + (8 - 2 * k1) as u64) as usize;
                (k1, k2)
            }
        };
        let mut a_rows = Vec::new();
        let mut b_rows = Vec::new();
        for i in 0..k1 {
            if i == 0 {
                a_rows.push(vec![1u8; n]);
            } else {
                a_rows.push((0..n).map(|_| rng.next_below(4) as u8).collect());
            }
        }
        for j in 0..k2 {
            if j == 0 && ring == Ring::Z2 {
                b_rows.push(vec![1u8; n]);
            } else {
                b_rows.push((0..n).map(|_| rng.next_below(2) as u8).collect());
            }
        }
        let parent = GeneratorMatrix::from_rows(ring, a_rows, b_rows).unwrap();
        let report = parent.nc_min_distance().unwrap();
        let oracle = pairwise_d_eq(&parent);
        assert_eq!(
            report.d_eq_min, oracle,
            "instance {checked}: spectrum route {:?} != pairwise oracle {:?} for {parent:?}",
            report.d_eq_min, oracle
        );
        checked += 1;
    }
    println!("ACCEPTANCE 4 (non-coherent distance vs pairwise oracle): PASS — 50/50 instances exact");
}

#[test]
fn criterion5_bound_orderings() {
    let grid: Vec<f64> = (0..=24).map(|i| i as f64 * 0.5).collect();

    let build = |ring, k1, k2, constraint| {
        greedy_construct(&BuildConfig {
            ring,
            k1,
            k2,
            target_d_min: Some(10),
            max_n_sym: None,
            constraint,
            enforce_distinct_columns: false,
            rng_seed: 5,
            runs: 1,
        })
        .unwrap()
    };

    // K=8 families of all four kinds.
    let plain2 = build(Ring::Z2, 0, 8, Constraint::None);
    let parent2 = build(Ring::Z2, 0, 9, Constraint::RotationInvariant);
    let plain4 = build(Ring::Z4, 4, 0, Constraint::None);
    let parent4 = build(Ring::Z4, 5, 0, Constraint::RotationInvariant);

    for family in [&plain2, &parent2, &plain4, &parent4] {
        let g = &family.generator;
        let spectrum = g.weight_spectrum().unwrap();
        let k = g.dimension_bits() as u32;
        let a = a_factor(g.ring());
        let d = spectrum.min_weight().unwrap();
        for &db in &grid {
            let snr = SnrPoint::from_db(db);
            let erfc_ub = union_bound_erfc(&spectrum, snr, a);
            let simple = ub_simple(k, d, snr, a);
            assert!(
                erfc_ub <= simple * (1.0 + 1e-12),
                "erfc union bound {erfc_ub} > simple bound {simple} at {db} dB"
            );
        }
    }

    for parent in [&parent2, &parent4] {
        let g = &parent.generator;
        let full = g.weight_spectrum().unwrap();
        let excl = g.nc_excluded_spectrum().unwrap();
        for &db in &grid {
            let snr = SnrPoint::from_db(db);
            let nc = union_bound_noncoherent(&excl, g.ring(), snr).unwrap();
            let coh = union_bound_coherent(&full, g.ring(), snr);
            assert!(nc <= coh, "nc bound {nc} > coherent {coh} at {db} dB");
        }
    }
    println!("ACCEPTANCE 5 (bound orderings on 0-12 dB grid): PASS");
}

#[test]
fn criterion6_simulation_consistency() {
    // Coherent: K=8 binary family with d_min = 3 at an SNR where the
    // conservative bound sits near 1e-3.
    let family = greedy_construct(&BuildConfig {
        ring: Ring::Z2,
        k1: 0,
        k2: 8,
        target_d_min: Some(3),
        max_n_sym: None,
        constraint: Constraint::None,
        enforce_distinct_columns: false,
        rng_seed: 11,
        runs: 1,
    })
    .unwrap();
    let code = family.generator.clone();
    let (d_min, _) = code.min_distance().unwrap();
    assert_eq!(d_min, 3);

    let mut snr_db = 0.0;
    while ub_simple(8, 3, SnrPoint::from_db(snr_db), 1.0) > 1e-3 {
        snr_db += 0.1;
    }
    let bound = ub_simple(8, 3, SnrPoint::from_db(snr_db), 1.0);

    let coherent = estimate_fer(&SimConfig {
        code: code.clone(),
        detector: Detector::Coherent,
        constellation_m: 2,
        snr_db: vec![snr_db],
        max_trials: 4_000_000,
        max_frame_errors: 300,
        rng_seed: 1002,
        phase_model: PhaseModel::Zero,
        allow_ambiguous: false,
    })
    .unwrap();
    let point = &coherent.points[0];
    let (_, wilson_hi) = point.wilson_95.unwrap();
    assert!(
        point.frame_errors >= 100,
        "too few errors ({}) for a stable estimate",
        point.frame_errors
    );
    assert!(
        wilson_hi <= bound,
        "Wilson upper edge {wilson_hi} exceeds ub_simple {bound} at {snr_db} dB"
    );

    // Non-coherent: derived K=8 code under unknown constant phase vs the
    // coherent FER of its rotationally invariant parent at the same SNR.
    let parent = greedy_construct(&BuildConfig {
        ring: Ring::Z2,
        k1: 0,
        k2: 9,
        target_d_min: Some(3),
        max_n_sym: None,
        constraint: Constraint::RotationInvariant,
        enforce_distinct_columns: false,
        rng_seed: 12,
        runs: 1,
    })
    .unwrap();
    let derived = derive_nc_code(&parent).unwrap();
    assert!(derived.report.detectable);

    let nc = estimate_fer(&SimConfig {
        code: derived.generator.clone(),
        detector: Detector::NonCoherent,
        constellation_m: 2,
        snr_db: vec![snr_db],
        max_trials: 4_000_000,
        max_frame_errors: 300,
        rng_seed: 1003,
        phase_model: PhaseModel::UniformConstant,
        allow_ambiguous: false,
    })
    .unwrap();
    let parent_coherent = estimate_fer(&SimConfig {
        code: parent.generator.clone(),
        detector: Detector::Coherent,
        constellation_m: 2,
        snr_db: vec![snr_db],
        max_trials: 4_000_000,
        max_frame_errors: 300,
        rng_seed: 1004,
        phase_model: PhaseModel::Zero,
        allow_ambiguous: false,
    })
    .unwrap();

    let fer_nc = nc.points[0].fer.unwrap();
    let fer_parent = parent_coherent.points[0].fer.unwrap();
    assert!(nc.points[0].frame_errors >= 100);
    assert!(parent_coherent.points[0].frame_errors >= 100);
    let ratio = fer_nc / fer_parent;
    assert!(
        (1.0 / 3.0..=3.0).contains(&ratio),
        "NC/parent-coherent FER ratio {ratio} outside [1/3, 3] (nc {fer_nc}, parent {fer_parent})"
    );
    println!(
        "ACCEPTANCE 6 (simulation consistency): PASS — at {snr_db:.1} dB: coherent FER {:.3e} (Wilson hi {:.3e}) <= bound {:.3e}; NC/parent ratio {:.2}",
        point.fer.unwrap(),
        wilson_hi,
        bound,
        ratio
    );
}

#[test]
fn criterion7_invariant_suites() {
    // Exact phase invariance of the non-coherent detector.
    let code = greedy_construct(&BuildConfig {
        ring: Ring::Z2,
        k1: 0,
        k2: 5,
        target_d_min: Some(4),
        max_n_sym: None,
        constraint: Constraint::None,
        enforce_distinct_columns: false,
        rng_seed: 21,
        runs: 1,
    })
    .unwrap()
    .generator;
    let map = zmcodes_core::constellation::ConstellationMap::natural(2).unwrap();
    let codebook: Codebook = zmcodes_core::sim::build_codebook(&code, &map).unwrap();
    let mut rng = SplitMix64::new(9);
    for _ in 0..500 {
        let y: Vec<num_complex::Complex64> = (0..code.n_sym())
            .map(|_| {
                let (a, b) = rng.next_normal_pair();
                num_complex::Complex64::new(a, b)
            })
            .collect();
        let phi = std::f64::consts::TAU * rng.next_f64();
        let rot = num_complex::Complex64::new(phi.cos(), phi.sin());
        let y_rot: Vec<_> = y.iter().map(|&v| v * rot).collect();
        assert_eq!(
            detect_noncoherent(&y, &codebook),
            detect_noncoherent(&y_rot, &codebook)
        );
    }

    // d_min monotonicity along a family's prefixes.
    let family = greedy_construct(&BuildConfig {
        ring: Ring::Z4,
        k1: 2,
        k2: 1,
        target_d_min: Some(8),
        max_n_sym: None,
        constraint: Constraint::RotationInvariant,
        enforce_distinct_columns: false,
        rng_seed: 23,
        runs: 1,
    })
    .unwrap();
    let g = &family.generator;
    let mut last = 0;
    for n in 0..=g.n_sym() {
        let (d, _) = g.prefix(n).unwrap().min_distance().unwrap();
        assert!(d >= last, "d_min decreased at prefix {n}");
        last = d;
    }

    // RI closure, exhaustively.
    assert!(g.is_rotationally_invariant().unwrap());
    let total = 1u32 << g.dimension_bits();
    let codebook: std::collections::HashSet<Vec<u8>> = (0..total)
        .map(|i| {
            g.encode(&InfoWord::from_index(g.k1(), g.k2(), i))
                .unwrap()
                .symbols()
                .to_vec()
        })
        .collect();
    for cw in &codebook {
        for i in 0..4u8 {
            let rotated: Vec<u8> = cw.iter().map(|&s| (s + i) % 4).collect();
            assert!(codebook.contains(&rotated), "codebook not closed under rotation");
        }
    }

    // Determinism under fixed seeds across thread counts.
    let sim_config = SimConfig {
        code,
        detector: Detector::Coherent,
        constellation_m: 2,
        snr_db: vec![3.0, 5.0],
        max_trials: 50_000,
        max_frame_errors: 100,
        rng_seed: 99,
        phase_model: PhaseModel::UniformConstant,
        allow_ambiguous: true,
    };
    let wide = estimate_fer(&sim_config).unwrap();
    let build_cfg = BuildConfig {
        ring: Ring::Z2,
        k1: 0,
        k2: 6,
        target_d_min: Some(6),
        max_n_sym: None,
        constraint: Constraint::None,
        enforce_distinct_columns: false,
        rng_seed: 31,
        runs: 8,
    };
    let wide_build = multi_run_best(&build_cfg).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let (narrow, narrow_build) =
        pool.install(|| (estimate_fer(&sim_config).unwrap(), multi_run_best(&build_cfg).unwrap()));
    assert_eq!(wide.points, narrow.points);
    assert_eq!(wide_build, narrow_build);

    println!("ACCEPTANCE 7 (invariant suites): PASS — phase invariance, monotonicity, RI closure, cross-thread determinism");
}
