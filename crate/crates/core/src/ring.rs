//! The symbol rings Z2 and Z4 and their distance-inducing weights.
//!
//! Under the natural M-PSK mapping `m -> e^{j2*pi*m/M}` the squared Euclidean
//! distance between two constellation points depends only on the Z_M
//! difference of their symbols, through a per-symbol weight: Hamming weight
//! for Z2, and `w4(0,1,2,3) = (0,1,2,1)` for Z4.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weight of each Z4 symbol under the natural QPSK mapping.
pub const W4: [u32; 4] = [0, 1, 2, 1];

/// Gray pairing of bit pairs onto QPSK symbols, indexed by `(b0 << 1) | b1`
/// where `b0` is the earlier bit: (00, 01, 11, 10) -> (0, 1, 2, 3).
pub const GRAY_QPSK_PAIRING: [u8; 4] = [0, 1, 3, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Z2,
    Z4,
}

impl Ring {
    pub fn modulus(self) -> u8 {
        match self {
            Ring::Z2 => 2,
            Ring::Z4 => 4,
        }
    }

    /// Bits carried by one symbol: log2(M).
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Ring::Z2 => 1,
            Ring::Z4 => 2,
        }
    }

    /// Weight of a single symbol: Hamming for Z2, `w4` for Z4.
    pub fn weight(self, symbol: u8) -> Result<u32> {
        if symbol >= self.modulus() {
            return Err(Error::SymbolOutOfRange {
                symbol,
                modulus: self.modulus(),
            });
        }
        Ok(self.weight_unchecked(symbol))
    }

    #[inline]
    pub(crate) fn weight_unchecked(self, symbol: u8) -> u32 {
        match self {
            Ring::Z2 => symbol as u32,
            Ring::Z4 => W4[symbol as usize],
        }
    }

    /// Weight of a whole symbol sequence.
    #[inline]
    pub(crate) fn sequence_weight(self, symbols: &[u8]) -> u32 {
        match self {
            Ring::Z2 => symbols.iter().map(|&s| s as u32).sum(),
            Ring::Z4 => symbols.iter().map(|&s| W4[s as usize]).sum(),
        }
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ring::Z2 => write!(f, "z2"),
            Ring::Z4 => write!(f, "z4"),
        }
    }
}

/// Map a bit sequence onto QPSK symbols via the Gray pairing, two bits per
/// symbol (earlier bit first in the pair).
pub fn gray_qpsk_symbols(bits: &[u8]) -> Result<Vec<u8>> {
    if !bits.len().is_multiple_of(2) {
        return Err(Error::OddBitLength { n_bits: bits.len() });
    }
    bits.chunks_exact(2)
        .map(|pair| {
            if pair[0] > 1 || pair[1] > 1 {
                return Err(Error::SymbolOutOfRange {
                    symbol: pair[0].max(pair[1]),
                    modulus: 2,
                });
            }
            Ok(GRAY_QPSK_PAIRING[((pair[0] << 1) | pair[1]) as usize])
        })
        .collect()
}
