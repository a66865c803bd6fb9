use std::fmt;

use crate::error::{Error, Result};

/// A cell `x_1 x_2 ... x_n` of a binary table.
///
/// The linear index is `sum_t x_t * 2^(n - t)`, so `x_1` is the most
/// significant bit and the last variable the least significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex {
    n: usize,
    index: usize,
}

impl CellIndex {
    pub fn new(n: usize, index: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::NoVariables);
        }
        if n > super::MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        if index >= 1 << n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: usize::BITS as usize - index.leading_zeros() as usize,
            });
        }
        Ok(CellIndex { n, index })
    }

    /// The all-zero cell.
    pub fn zero(n: usize) -> Self {
        CellIndex { n, index: 0 }
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut index = 0usize;
        for &b in bits {
            if b > 1 {
                return Err(Error::DimensionMismatch {
                    expected: bits.len(),
                    found: 0,
                });
            }
            index = (index << 1) | b as usize;
        }
        Self::new(bits.len(), index)
    }

    /// Parses a word over `{0,1}` such as `0110`.
    pub fn parse(word: &str) -> Option<Self> {
        if word.is_empty() || !word.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        let bits: Vec<u8> = word.bytes().map(|b| b - b'0').collect();
        Self::from_bits(&bits).ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Value of variable `t` (1-based).
    pub fn bit(&self, t: usize) -> u8 {
        debug_assert!((1..=self.n).contains(&t));
        ((self.index >> (self.n - t)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.n).map(|t| self.bit(t)).collect()
    }

    /// Restriction to `vertices` (ascending), linearized like a cell index.
    pub fn restrict(&self, vertices: &[usize]) -> usize {
        restrict_index(self.n, self.index, vertices)
    }
}

pub(crate) fn restrict_index(n: usize, index: usize, vertices: &[usize]) -> usize {
    vertices
        .iter()
        .fold(0, |acc, &v| (acc << 1) | ((index >> (n - v)) & 1))
}

/// Writes `value` as a `width`-bit binary word, most significant bit first.
pub(crate) fn bitstring(value: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|k| if (value >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bitstring(self.index, self.n))
    }
}

impl fmt::Debug for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{self}")
    }
}
