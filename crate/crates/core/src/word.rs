//! Information words: the inputs multiplied against a generator matrix.

use crate::error::{Error, Result};

/// An information word split into its Z4 and Z2 parts.
///
/// A code of type `(k1, k2)` over Z4 takes `k1` symbols in Z4 and `k2`
/// symbols in {0, 1}; its dimension in bits is `K = 2*k1 + k2`. Binary codes
/// have `k1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfoWord {
    z4: Vec<u8>,
    z2: Vec<u8>,
}

impl InfoWord {
    pub fn new(z4: Vec<u8>, z2: Vec<u8>) -> Result<Self> {
        if let Some(&s) = z4.iter().find(|&&s| s > 3) {
            return Err(Error::SymbolOutOfRange { symbol: s, modulus: 4 });
        }
        if let Some(&s) = z2.iter().find(|&&s| s > 1) {
            return Err(Error::SymbolOutOfRange { symbol: s, modulus: 2 });
        }
        Ok(InfoWord { z4, z2 })
    }

    /// A purely binary word (`k1 = 0`).
    pub fn binary(bits: impl Into<Vec<u8>>) -> Result<Self> {
        InfoWord::new(Vec::new(), bits.into())
    }

    pub fn zero(k1: usize, k2: usize) -> Self {
        InfoWord {
            z4: vec![0; k1],
            z2: vec![0; k2],
        }
    }

    pub fn z4_part(&self) -> &[u8] {
        &self.z4
    }

    pub fn z2_part(&self) -> &[u8] {
        &self.z2
    }

    pub fn k1(&self) -> usize {
        self.z4.len()
    }

    pub fn k2(&self) -> usize {
        self.z2.len()
    }

    pub fn dimension_bits(&self) -> usize {
        2 * self.z4.len() + self.z2.len()
    }

    pub fn is_zero(&self) -> bool {
        self.z4.iter().all(|&s| s == 0) && self.z2.iter().all(|&s| s == 0)
    }

    /// Canonical enumeration index: Z4 symbol `i` occupies bits `2i..2i+2`,
    /// Z2 symbol `j` occupies bit `2*k1 + j`. Deterministic tie-breaks
    /// ("lowest info word") refer to this ordering.
    pub fn index(&self) -> u32 {
        let mut idx = 0u32;
        for (i, &s) in self.z4.iter().enumerate() {
            idx |= (s as u32) << (2 * i);
        }
        let base = 2 * self.z4.len();
        for (j, &b) in self.z2.iter().enumerate() {
            idx |= (b as u32) << (base + j);
        }
        idx
    }

    /// Inverse of [`InfoWord::index`] for a given word shape.
    pub fn from_index(k1: usize, k2: usize, idx: u32) -> Self {
        let z4 = (0..k1).map(|i| ((idx >> (2 * i)) & 3) as u8).collect();
        let z2 = (0..k2)
            .map(|j| ((idx >> (2 * k1 + j)) & 1) as u8)
            .collect();
        InfoWord { z4, z2 }
    }
}

impl std::fmt::Display for InfoWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.z4.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        if !self.z4.is_empty() && !self.z2.is_empty() {
            write!(f, ";")?;
        }
        for (j, b) in self.z2.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for idx in 0..1u32 << 8 {
            let w = InfoWord::from_index(3, 2, idx);
            assert_eq!(w.index(), idx);
            assert_eq!(w.dimension_bits(), 8);
        }
    }

    #[test]
    fn rejects_out_of_range_symbols() {
        assert!(InfoWord::new(vec![4], vec![]).is_err());
        assert!(InfoWord::new(vec![], vec![2]).is_err());
        assert!(InfoWord::new(vec![3], vec![1]).is_ok());
    }
}
