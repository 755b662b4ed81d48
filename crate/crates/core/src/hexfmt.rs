//! Bit-exact hex matrix format.
//!
//! One row of text per generator row: a label, then 32-bit column groups as
//! eight hex digits each. Each group is read LSB-first, so bit j of the row
//! is bit `j % 32` of group `j / 32`. For Z4 matrices consecutive bit pairs
//! encode one symbol, low bit first. Constraint rows carry the label `-`;
//! information rows are labelled by their 1-based bit positions (`3` for a
//! binary row, `3-4` for a Z4 row).
//!
//! ```text
//! ring: z4
//! bits: 256
//! - 55555555 55555555 ...
//! 1-2 773F8EF4 A840C467 ...
//! ```
//!
//! `bits:` records the true column count; when it is not a multiple of 32
//! the final group is right-padded with zero bits. Parsing accepts blank
//! lines, `#` comments and lowercase hex; emission is canonical (uppercase,
//! single spaces), so emit-then-parse is the identity and parse-then-emit
//! canonicalizes.

use crate::error::{Error, Result};
use crate::matrix::GeneratorMatrix;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// Entries in Z4, two bits per symbol (A block).
    Z4,
    /// Entries in {0, 1} (binary rows, or the 2B block stored as {0, 2}).
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexRow {
    pub fixed: bool,
    pub kind: RowKind,
    pub groups: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexMatrixDocument {
    pub ring: Ring,
    pub n_bits: usize,
    pub rows: Vec<HexRow>,
}

impl HexMatrixDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut ring: Option<Ring> = None;
        let mut bits: Option<usize> = None;
        let mut rows: Vec<HexRow> = Vec::new();
        let mut seen_info_row = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| Error::HexParse {
                line: lineno + 1,
                message,
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(value) = line.strip_prefix("ring:") {
                ring = Some(match value.trim() {
                    "z2" => Ring::Z2,
                    "z4" => Ring::Z4,
                    other => return Err(err(format!("unknown ring '{other}'"))),
                });
                continue;
            }
            if let Some(value) = line.strip_prefix("bits:") {
                bits = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad bit count '{}'", value.trim())))?,
                );
                continue;
            }
            let ring = ring.ok_or_else(|| err("row before 'ring:' header".into()))?;
            let mut tokens = line.split_whitespace();
            let label = tokens.next().expect("non-empty line");
            let fixed = label == "-" || label == "\u{2212}";
            let kind = if fixed {
                match ring {
                    Ring::Z4 => RowKind::Z4,
                    Ring::Z2 => RowKind::Binary,
                }
            } else if label.contains('-') {
                if ring == Ring::Z2 {
                    return Err(err(format!(
                        "bit-pair label '{label}' in a binary matrix"
                    )));
                }
                RowKind::Z4
            } else if label.chars().all(|c| c.is_ascii_digit()) {
                RowKind::Binary
            } else {
                return Err(err(format!("unrecognized row label '{label}'")));
            };
            if fixed && seen_info_row {
                return Err(err("constraint rows must come first".into()));
            }
            if !fixed {
                seen_info_row = true;
            }
            let mut groups = Vec::new();
            for tok in tokens {
                if tok.len() != 8 || !tok.chars().all(|c| c.is_ascii_hexdigit()) {
                    return Err(err(format!("'{tok}' is not an 8-digit hex group")));
                }
                groups.push(u32::from_str_radix(tok, 16).expect("validated hex"));
            }
            if let Some(first) = rows.first() {
                if groups.len() != first.groups.len() {
                    return Err(err(format!(
                        "ragged rows: {} groups here, {} in the first row",
                        groups.len(),
                        first.groups.len()
                    )));
                }
            }
            rows.push(HexRow {
                fixed,
                kind,
                groups,
            });
        }

        let ring = ring.ok_or(Error::HexParse {
            line: 0,
            message: "missing 'ring:' header".into(),
        })?;
        let group_count = rows.first().map(|r| r.groups.len()).unwrap_or(0);
        let n_bits = bits.unwrap_or(group_count * 32);
        if n_bits > group_count * 32 || (group_count > 0 && n_bits + 32 <= group_count * 32) {
            return Err(Error::HexParse {
                line: 0,
                message: format!(
                    "bit count {n_bits} inconsistent with {group_count} 32-bit groups"
                ),
            });
        }
        let doc = HexMatrixDocument { ring, n_bits, rows };
        doc.check_padding()?;
        Ok(doc)
    }

    fn check_padding(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for j in self.n_bits..row.groups.len() * 32 {
                if (row.groups[j / 32] >> (j % 32)) & 1 != 0 {
                    return Err(Error::HexParse {
                        line: 0,
                        message: format!(
                            "row {} has a nonzero bit at padded column {j}",
                            i + 1
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Canonical text form.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ring: {}\n", self.ring));
        out.push_str(&format!("bits: {}\n", self.n_bits));
        let mut info_bit = 1usize;
        for row in &self.rows {
            let label = if row.fixed {
                "-".to_string()
            } else {
                match row.kind {
                    RowKind::Z4 => {
                        let l = format!("{}-{}", info_bit, info_bit + 1);
                        info_bit += 2;
                        l
                    }
                    RowKind::Binary => {
                        let l = format!("{info_bit}");
                        info_bit += 1;
                        l
                    }
                }
            };
            out.push_str(&label);
            for g in &row.groups {
                out.push_str(&format!(" {g:08X}"));
            }
            out.push('\n');
        }
        out
    }

    fn row_bit(row: &HexRow, j: usize) -> u8 {
        ((row.groups[j / 32] >> (j % 32)) & 1) as u8
    }

    /// Decode into a generator matrix plus the number of leading constraint
    /// rows.
    pub fn to_matrix(&self) -> Result<(GeneratorMatrix, usize)> {
        let fixed_rows = self.rows.iter().take_while(|r| r.fixed).count();
        match self.ring {
            Ring::Z2 => {
                let rows: Vec<Vec<u8>> = self
                    .rows
                    .iter()
                    .map(|r| (0..self.n_bits).map(|j| Self::row_bit(r, j)).collect())
                    .collect();
                Ok((GeneratorMatrix::from_rows(Ring::Z2, vec![], rows)?, fixed_rows))
            }
            Ring::Z4 => {
                if !self.n_bits.is_multiple_of(2) {
                    return Err(Error::OddBitLength { n_bits: self.n_bits });
                }
                let n_sym = self.n_bits / 2;
                let mut a_rows = Vec::new();
                let mut b_rows = Vec::new();
                for (i, row) in self.rows.iter().enumerate() {
                    let symbols: Vec<u8> = (0..n_sym)
                        .map(|t| Self::row_bit(row, 2 * t) + 2 * Self::row_bit(row, 2 * t + 1))
                        .collect();
                    match row.kind {
                        RowKind::Z4 => {
                            if !b_rows.is_empty() {
                                return Err(Error::HexParse {
                                    line: 0,
                                    message: format!(
                                        "row {}: Z4 rows must precede binary rows",
                                        i + 1
                                    ),
                                });
                            }
                            a_rows.push(symbols);
                        }
                        RowKind::Binary => {
                            // The stored generator row is 2B; entries must be
                            // 0 or 2.
                            let b: Result<Vec<u8>> = symbols
                                .iter()
                                .map(|&s| {
                                    if s % 2 == 0 {
                                        Ok(s / 2)
                                    } else {
                                        Err(Error::HexParse {
                                            line: 0,
                                            message: format!(
                                                "row {}: odd symbol {s} in a 2B row",
                                                i + 1
                                            ),
                                        })
                                    }
                                })
                                .collect();
                            b_rows.push(b?);
                        }
                    }
                }
                Ok((
                    GeneratorMatrix::from_rows(Ring::Z4, a_rows, b_rows)?,
                    fixed_rows,
                ))
            }
        }
    }

    /// Encode a matrix, flagging its first `fixed_rows` rows as constraint
    /// rows. In a Z4 document a fixed row must be an A-block row: the `-`
    /// label carries no block information, and the only row a constraint
    /// ever pins over Z4 is the order-4 all-one row.
    pub fn from_matrix(g: &GeneratorMatrix, fixed_rows: usize) -> Result<Self> {
        if fixed_rows > g.rows() {
            return Err(Error::InvalidConfig(format!(
                "{fixed_rows} fixed rows in a {}-row matrix",
                g.rows()
            )));
        }
        if g.ring() == Ring::Z4 && fixed_rows > g.k1() {
            return Err(Error::InvalidConfig(format!(
                "{fixed_rows} fixed rows but only {} Z4 rows; fixed rows must be A-block rows",
                g.k1()
            )));
        }
        let n_bits = g.n_bits();
        let group_count = n_bits.div_ceil(32);
        let mut rows = Vec::with_capacity(g.rows());
        let pack = |bit_of: &dyn Fn(usize) -> u8| -> Vec<u32> {
            let mut groups = vec![0u32; group_count];
            for j in 0..n_bits {
                groups[j / 32] |= (bit_of(j) as u32) << (j % 32);
            }
            groups
        };
        for (r, row) in g.a_rows().iter().enumerate() {
            rows.push(HexRow {
                fixed: r < fixed_rows,
                kind: RowKind::Z4,
                groups: pack(&|j| (row[j / 2] >> (j % 2)) & 1),
            });
        }
        for (r, row) in g.b_rows().iter().enumerate() {
            let doc_index = g.k1() + r;
            let groups = match g.ring() {
                // stored generator row is 2B: symbol 2b has low bit 0, high
                // bit b
                Ring::Z4 => pack(&|j| if j % 2 == 1 { row[j / 2] } else { 0 }),
                Ring::Z2 => pack(&|j| row[j]),
            };
            rows.push(HexRow {
                fixed: doc_index < fixed_rows,
                kind: RowKind::Binary,
                groups,
            });
        }
        Ok(HexMatrixDocument {
            ring: g.ring(),
            n_bits,
            rows,
        })
    }
}

/// Parse a hex matrix document into `(matrix, fixed_row_count)`.
pub fn parse_hex_matrix(text: &str) -> Result<(GeneratorMatrix, usize)> {
    HexMatrixDocument::parse(text)?.to_matrix()
}

/// Emit a matrix in the canonical hex format.
pub fn emit_hex_matrix(g: &GeneratorMatrix, fixed_rows: usize) -> Result<String> {
    Ok(HexMatrixDocument::from_matrix(g, fixed_rows)?.emit())
}
