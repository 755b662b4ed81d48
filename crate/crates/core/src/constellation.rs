//! M-PSK constellation mapping of codewords.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Codeword;
use crate::ring::{gray_qpsk_symbols, GRAY_QPSK_PAIRING};

/// Natural M-PSK map `m -> e^{j*2*pi*m/M}` at unit symbol energy, plus the
/// Gray bit pairing used when a binary code rides on QPSK.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstellationMap {
    m: u8,
    points: Vec<Complex64>,
}

impl ConstellationMap {
    pub fn natural(m: u8) -> Result<ConstellationMap> {
        // Exact constellation points for the supported orders; cos/sin of
        // multiples of pi/2 would leave 1e-16 residues.
        let points = match m {
            2 => vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            4 => vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, -1.0),
            ],
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "unsupported constellation order {m}"
                )))
            }
        };
        Ok(ConstellationMap { m, points })
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn point(&self, symbol: u8) -> Result<Complex64> {
        self.points
            .get(symbol as usize)
            .copied()
            .ok_or(Error::SymbolOutOfRange {
                symbol,
                modulus: self.m,
            })
    }

    /// The bit-pair to symbol rule for binary codes on QPSK.
    pub fn binary_pairing(&self) -> [u8; 4] {
        GRAY_QPSK_PAIRING
    }

    /// Map a codeword to its constellation sequence. A codeword over the
    /// map's own ring maps symbol-wise; a binary codeword on a QPSK map is
    /// Gray-paired two bits per symbol.
    pub fn map_to_constellation(&self, codeword: &Codeword) -> Result<Vec<Complex64>> {
        let code_m = codeword.ring().modulus();
        if code_m == self.m {
            return codeword
                .symbols()
                .iter()
                .map(|&s| self.point(s))
                .collect();
        }
        if code_m == 2 && self.m == 4 {
            let symbols = gray_qpsk_symbols(codeword.symbols())?;
            return symbols.iter().map(|&s| self.point(s)).collect();
        }
        Err(Error::InvalidConfig(format!(
            "cannot map Z{code_m} codewords onto an order-{m} constellation",
            m = self.m
        )))
    }
}
