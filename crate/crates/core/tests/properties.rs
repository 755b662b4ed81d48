//! Property tests over randomly drawn matrices.

use proptest::prelude::*;

use zmcodes_core::hexfmt::{emit_hex_matrix, parse_hex_matrix};
use zmcodes_core::{GeneratorMatrix, InfoWord, Ring};

fn arb_matrix() -> impl Strategy<Value = (GeneratorMatrix, usize)> {
    (any::<bool>(), 0usize..3, 1usize..5, 0usize..130, any::<u64>()).prop_map(
        |(z4, k1, k2, n_sym, seed)| {
            let ring = if z4 { Ring::Z4 } else { Ring::Z2 };
            let k1 = if z4 { k1 } else { 0 };
            let mut rng = zmcodes_core::rng::SplitMix64::new(seed);
            // keep Z4 bit lengths within the 256-bit regime
            let n_sym = if z4 { n_sym.min(128) } else { n_sym };
            let a_rows: Vec<Vec<u8>> = (0..k1)
                .map(|_| (0..n_sym).map(|_| rng.next_below(4) as u8).collect())
                .collect();
            let b_rows: Vec<Vec<u8>> = (0..k2)
                .map(|_| (0..n_sym).map(|_| rng.next_below(2) as u8).collect())
                .collect();
            // Z4 fixed rows must be A-block rows.
            let fixed_limit = if z4 { k1 } else { k1 + k2 };
            let fixed = rng.next_below(1 + fixed_limit as u64) as usize;
            (
                GeneratorMatrix::from_rows(ring, a_rows, b_rows).unwrap(),
                fixed,
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hex_round_trip_is_identity((matrix, fixed) in arb_matrix()) {
        let text = emit_hex_matrix(&matrix, fixed).unwrap();
        let (back, back_fixed) = parse_hex_matrix(&text).unwrap();
        prop_assert_eq!(&back, &matrix);
        prop_assert_eq!(back_fixed, fixed);
        // emitting again is byte-stable
        prop_assert_eq!(emit_hex_matrix(&back, back_fixed).unwrap(), text);
    }

    #[test]
    fn encode_is_linear((matrix, _) in arb_matrix(), ia in any::<u32>(), ib in any::<u32>()) {
        let total = 1u32 << matrix.dimension_bits();
        let a = InfoWord::from_index(matrix.k1(), matrix.k2(), ia % total);
        let b = InfoWord::from_index(matrix.k1(), matrix.k2(), ib % total);
        let sum = InfoWord::new(
            a.z4_part().iter().zip(b.z4_part()).map(|(&x, &y)| (x + y) % 4).collect(),
            a.z2_part().iter().zip(b.z2_part()).map(|(&x, &y)| (x + y) % 2).collect(),
        ).unwrap();
        let lhs = matrix.encode(&sum).unwrap();
        let rhs = matrix.encode(&a).unwrap().add(&matrix.encode(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn prefix_of_append_is_identity((matrix, _) in arb_matrix(), seed in any::<u64>()) {
        let mut rng = zmcodes_core::rng::SplitMix64::new(seed);
        let column: Vec<u8> = (0..matrix.rows())
            .map(|r| {
                if r < matrix.k1() {
                    rng.next_below(4) as u8
                } else {
                    rng.next_below(2) as u8
                }
            })
            .collect();
        let extended = matrix.append_column(&column).unwrap();
        prop_assert_eq!(extended.prefix(matrix.n_sym()).unwrap(), matrix.clone());
        // appending never decreases the minimum distance
        if matrix.dimension_bits() <= 10 {
            let (before, _) = matrix.min_distance().unwrap();
            let (after, _) = extended.min_distance().unwrap();
            prop_assert!(after >= before);
        }
    }
}
