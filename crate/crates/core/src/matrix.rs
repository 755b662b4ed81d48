//! Generator matrices over Z2 and Z4 and the codewords they produce.
//!
//! A Z4 generator has the two-block form `G = [A; 2B]`: `k1` rows with
//! entries in Z4 and `k2` rows with entries in {0, 1} that enter codewords
//! doubled. Binary generators are the `k1 = 0` special case with plain Z2
//! rows. Matrices grow column by column and existing columns are never
//! mutated, which is what makes a family of prefixes rate compatible.

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::word::InfoWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    ring: Ring,
    n_sym: usize,
    /// Rows with entries in Z4 (empty for Z2 codes).
    a_rows: Vec<Vec<u8>>,
    /// Rows with entries in {0, 1}; doubled on encoding when the ring is Z4.
    b_rows: Vec<Vec<u8>>,
}

/// A codeword: `n_sym` symbols of Z_M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    ring: Ring,
    symbols: Vec<u8>,
}

impl GeneratorMatrix {
    /// An empty matrix (zero columns) of the given row type.
    pub fn new(ring: Ring, k1: usize, k2: usize) -> Result<Self> {
        if ring == Ring::Z2 && k1 != 0 {
            return Err(Error::InvalidConfig(
                "binary codes have no Z4 rows (k1 must be 0)".into(),
            ));
        }
        if 2 * k1 + k2 == 0 {
            return Err(Error::InvalidConfig("matrix needs at least one row".into()));
        }
        Ok(GeneratorMatrix {
            ring,
            n_sym: 0,
            a_rows: vec![Vec::new(); k1],
            b_rows: vec![Vec::new(); k2],
        })
    }

    /// Build from explicit rows; all rows must have equal length and entries
    /// in range for their block.
    pub fn from_rows(ring: Ring, a_rows: Vec<Vec<u8>>, b_rows: Vec<Vec<u8>>) -> Result<Self> {
        if ring == Ring::Z2 && !a_rows.is_empty() {
            return Err(Error::InvalidConfig(
                "binary codes have no Z4 rows (k1 must be 0)".into(),
            ));
        }
        if 2 * a_rows.len() + b_rows.len() == 0 {
            return Err(Error::InvalidConfig("matrix needs at least one row".into()));
        }
        let n_sym = a_rows.first().or_else(|| b_rows.first()).unwrap().len();
        for row in &a_rows {
            if row.len() != n_sym {
                return Err(Error::InvalidConfig("rows have unequal lengths".into()));
            }
            if let Some(&s) = row.iter().find(|&&s| s > 3) {
                return Err(Error::SymbolOutOfRange { symbol: s, modulus: 4 });
            }
        }
        for row in &b_rows {
            if row.len() != n_sym {
                return Err(Error::InvalidConfig("rows have unequal lengths".into()));
            }
            if let Some(&s) = row.iter().find(|&&s| s > 1) {
                return Err(Error::SymbolOutOfRange { symbol: s, modulus: 2 });
            }
        }
        Ok(GeneratorMatrix {
            ring,
            n_sym,
            a_rows,
            b_rows,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn k1(&self) -> usize {
        self.a_rows.len()
    }

    pub fn k2(&self) -> usize {
        self.b_rows.len()
    }

    /// Total row count `k1 + k2`.
    pub fn rows(&self) -> usize {
        self.a_rows.len() + self.b_rows.len()
    }

    /// Dimension in bits: `K = 2*k1 + k2`.
    pub fn dimension_bits(&self) -> usize {
        2 * self.a_rows.len() + self.b_rows.len()
    }

    /// Current length in symbols.
    pub fn n_sym(&self) -> usize {
        self.n_sym
    }

    /// Current length in bits: `n_sym * log2(M)`.
    pub fn n_bits(&self) -> usize {
        self.n_sym * self.ring.bits_per_symbol()
    }

    pub fn a_rows(&self) -> &[Vec<u8>] {
        &self.a_rows
    }

    pub fn b_rows(&self) -> &[Vec<u8>] {
        &self.b_rows
    }

    /// Entry of the stored generator at (row, col), with B-block rows
    /// reported in their {0, 1} form.
    pub fn entry(&self, row: usize, col: usize) -> u8 {
        if row < self.a_rows.len() {
            self.a_rows[row][col]
        } else {
            self.b_rows[row - self.a_rows.len()][col]
        }
    }

    /// Append one column; entries are ordered A-block rows then B-block
    /// rows. Returns the extended matrix, leaving `self` untouched.
    pub fn append_column(&self, column: &[u8]) -> Result<Self> {
        let mut out = self.clone();
        out.push_column(column)?;
        Ok(out)
    }

    pub(crate) fn push_column(&mut self, column: &[u8]) -> Result<()> {
        if column.len() != self.rows() {
            return Err(Error::ColumnLength {
                expected: self.rows(),
                got: column.len(),
            });
        }
        let k1 = self.a_rows.len();
        for (i, &s) in column[..k1].iter().enumerate() {
            if s > 3 {
                return Err(Error::SymbolOutOfRange { symbol: s, modulus: 4 });
            }
            let _ = i;
        }
        for &s in &column[k1..] {
            if s > 1 {
                return Err(Error::SymbolOutOfRange { symbol: s, modulus: 2 });
            }
        }
        for (row, &s) in self.a_rows.iter_mut().zip(&column[..k1]) {
            row.push(s);
        }
        for (row, &s) in self.b_rows.iter_mut().zip(&column[k1..]) {
            row.push(s);
        }
        self.n_sym += 1;
        Ok(())
    }

    /// The first `n_sym` columns as a new matrix.
    pub fn prefix(&self, n_sym: usize) -> Result<Self> {
        if n_sym > self.n_sym {
            return Err(Error::PrefixOutOfRange {
                requested: n_sym,
                available: self.n_sym,
            });
        }
        Ok(GeneratorMatrix {
            ring: self.ring,
            n_sym,
            a_rows: self.a_rows.iter().map(|r| r[..n_sym].to_vec()).collect(),
            b_rows: self.b_rows.iter().map(|r| r[..n_sym].to_vec()).collect(),
        })
    }

    /// Prefix by bit length; for Z4 the bit count must be even.
    pub fn prefix_bits(&self, n_bits: usize) -> Result<Self> {
        let bps = self.ring.bits_per_symbol();
        if !n_bits.is_multiple_of(bps) {
            return Err(Error::OddBitLength { n_bits });
        }
        self.prefix(n_bits / bps)
    }

    /// Remove the first `count` rows (A-block rows first); used to turn a
    /// constrained parent into the code actually transmitted.
    pub fn remove_leading_rows(&self, count: usize) -> Result<Self> {
        let k1 = self.a_rows.len();
        let (a_drop, b_drop) = if count <= k1 {
            (count, 0)
        } else {
            (k1, count - k1)
        };
        if b_drop > self.b_rows.len() || 2 * (k1 - a_drop) + (self.b_rows.len() - b_drop) == 0 {
            return Err(Error::InvalidConfig(format!(
                "cannot remove {count} rows from a (k1={}, k2={}) matrix",
                k1,
                self.b_rows.len()
            )));
        }
        Ok(GeneratorMatrix {
            ring: self.ring,
            n_sym: self.n_sym,
            a_rows: self.a_rows[a_drop..].to_vec(),
            b_rows: self.b_rows[b_drop..].to_vec(),
        })
    }

    /// Multiply an info word against the matrix.
    ///
    /// Symbol `j` of the result is `sum_i u1_i * A[i][j] + 2 * sum_j u2_j *
    /// B[j][j]` in Z_M.
    pub fn encode(&self, word: &InfoWord) -> Result<Codeword> {
        if word.k1() != self.k1() || word.k2() != self.k2() {
            return Err(Error::DimensionMismatch {
                expected_k1: self.k1(),
                expected_k2: self.k2(),
                got_k1: word.k1(),
                got_k2: word.k2(),
            });
        }
        let m = self.ring.modulus() as u16;
        let mut symbols = vec![0u16; self.n_sym];
        for (row, &u) in self.a_rows.iter().zip(word.z4_part()) {
            if u != 0 {
                for (acc, &g) in symbols.iter_mut().zip(row) {
                    *acc = (*acc + u as u16 * g as u16) % m;
                }
            }
        }
        let scale = if self.ring == Ring::Z4 { 2 } else { 1 };
        for (row, &u) in self.b_rows.iter().zip(word.z2_part()) {
            if u != 0 {
                for (acc, &g) in symbols.iter_mut().zip(row) {
                    *acc = (*acc + scale * g as u16) % m;
                }
            }
        }
        Ok(Codeword {
            ring: self.ring,
            symbols: symbols.into_iter().map(|s| s as u8).collect(),
        })
    }

    /// The length-`n_sym` word with every symbol equal to `value`.
    pub fn constant_codeword(&self, value: u8) -> Result<Codeword> {
        if value >= self.ring.modulus() {
            return Err(Error::SymbolOutOfRange {
                symbol: value,
                modulus: self.ring.modulus(),
            });
        }
        Ok(Codeword {
            ring: self.ring,
            symbols: vec![value; self.n_sym],
        })
    }
}

impl Codeword {
    pub fn new(ring: Ring, symbols: Vec<u8>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s >= ring.modulus()) {
            return Err(Error::SymbolOutOfRange {
                symbol: s,
                modulus: ring.modulus(),
            });
        }
        Ok(Codeword { ring, symbols })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Weight under the ring's distance-inducing symbol weight.
    pub fn weight(&self) -> u32 {
        self.ring.sequence_weight(&self.symbols)
    }

    /// Symbol-wise sum in Z_M.
    pub fn add(&self, rhs: &Codeword) -> Codeword {
        let m = self.ring.modulus();
        Codeword {
            ring: self.ring,
            symbols: self
                .symbols
                .iter()
                .zip(&rhs.symbols)
                .map(|(&a, &b)| (a + b) % m)
                .collect(),
        }
    }

    /// Symbol-wise difference in Z_M.
    pub fn sub(&self, rhs: &Codeword) -> Codeword {
        let m = self.ring.modulus();
        Codeword {
            ring: self.ring,
            symbols: self
                .symbols
                .iter()
                .zip(&rhs.symbols)
                .map(|(&a, &b)| (a + m - b) % m)
                .collect(),
        }
    }

    /// Add the all-`value` word: the codebook image of rotating the mapped
    /// constellation sequence by `2*pi*value/M`.
    pub fn add_constant(&self, value: u8) -> Codeword {
        let m = self.ring.modulus();
        Codeword {
            ring: self.ring,
            symbols: self.symbols.iter().map(|&a| (a + value) % m).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(rows: &[&[u8]]) -> GeneratorMatrix {
        GeneratorMatrix::from_rows(Ring::Z2, vec![], rows.iter().map(|r| r.to_vec()).collect())
            .unwrap()
    }

    #[test]
    fn encode_zero_word_is_zero() {
        let g = binary(&[&[1, 1, 0], &[0, 1, 1]]);
        let cw = g.encode(&InfoWord::zero(0, 2)).unwrap();
        assert_eq!(cw.symbols(), &[0, 0, 0]);
        assert_eq!(cw.weight(), 0);
    }

    #[test]
    fn encode_binary_row_sum() {
        // G rows {110, 011}, u = (1,1) -> 101
        let g = binary(&[&[1, 1, 0], &[0, 1, 1]]);
        let cw = g.encode(&InfoWord::binary(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(cw.symbols(), &[1, 0, 1]);
    }

    #[test]
    fn encode_z4_scaling() {
        // A = [1 1 1 1], u = (3) -> (3,3,3,3) with w4 weight 4; exhaustive
        // over all four info words as an oracle.
        let g = GeneratorMatrix::from_rows(Ring::Z4, vec![vec![1, 1, 1, 1]], vec![]).unwrap();
        let expect = [(0u8, 0u32), (1, 4), (2, 8), (3, 4)];
        for (u, w) in expect {
            let cw = g.encode(&InfoWord::new(vec![u], vec![]).unwrap()).unwrap();
            assert_eq!(cw.symbols(), &[u; 4]);
            assert_eq!(cw.weight(), w);
        }
    }

    #[test]
    fn encode_z4_b_rows_are_doubled() {
        let g =
            GeneratorMatrix::from_rows(Ring::Z4, vec![vec![1, 2]], vec![vec![1, 0]]).unwrap();
        let cw = g
            .encode(&InfoWord::new(vec![1], vec![1]).unwrap())
            .unwrap();
        // symbol 0: 1*1 + 2*1 = 3; symbol 1: 1*2 + 0 = 2
        assert_eq!(cw.symbols(), &[3, 2]);
    }

    #[test]
    fn encode_dimension_mismatch() {
        let g = binary(&[&[1, 0]]);
        assert!(matches!(
            g.encode(&InfoWord::binary(vec![1, 0]).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn append_then_prefix_round_trips() {
        let g = binary(&[&[1, 1], &[0, 1]]);
        let extended = g.append_column(&[1, 0]).unwrap();
        assert_eq!(extended.n_sym(), 3);
        assert_eq!(extended.prefix(2).unwrap(), g);
        assert_eq!(g.prefix(0).unwrap().n_sym(), 0);
    }

    #[test]
    fn append_rejects_bad_entries() {
        let g = binary(&[&[1, 1]]);
        assert!(g.append_column(&[2]).is_err());
        assert!(g.append_column(&[1, 1]).is_err());
        let z4 = GeneratorMatrix::from_rows(Ring::Z4, vec![vec![1]], vec![vec![0]]).unwrap();
        assert!(z4.append_column(&[3, 1]).is_ok());
        assert!(z4.append_column(&[3, 2]).is_err());
        assert!(z4.append_column(&[4, 1]).is_err());
    }

    #[test]
    fn encode_linearity_exhaustive_small() {
        let g = GeneratorMatrix::from_rows(
            Ring::Z4,
            vec![vec![1, 3, 2], vec![0, 1, 1]],
            vec![vec![1, 1, 0]],
        )
        .unwrap();
        let total = 1u32 << g.dimension_bits();
        for ia in 0..total {
            for ib in 0..total {
                let a = InfoWord::from_index(2, 1, ia);
                let b = InfoWord::from_index(2, 1, ib);
                // group addition of the info words, component-wise
                let sum = InfoWord::new(
                    a.z4_part()
                        .iter()
                        .zip(b.z4_part())
                        .map(|(&x, &y)| (x + y) % 4)
                        .collect(),
                    a.z2_part()
                        .iter()
                        .zip(b.z2_part())
                        .map(|(&x, &y)| (x + y) % 2)
                        .collect(),
                )
                .unwrap();
                let lhs = g.encode(&sum).unwrap();
                let rhs = g.encode(&a).unwrap().add(&g.encode(&b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
