//! Binary words of length at most 64.
//!
//! Positions are 1-based at every public interface; position `i` is stored
//! in bit `i - 1` of the mask. The text form prints position 1 leftmost.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_LEN: usize = 64;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A vector of F_2^n, identified with its support.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    bits: u64,
    len: u8,
}

impl BitWord {
    pub fn new(bits: u64, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::LengthOutOfRange(len));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::StrayBits { bits, len });
        }
        Ok(Self { bits, len: len as u8 })
    }

    /// Caller guarantees `1 <= len <= 64` and no stray bits.
    #[inline]
    pub(crate) fn from_raw(bits: u64, len: usize) -> Self {
        debug_assert!((1..=MAX_LEN).contains(&len) && bits & !low_mask(len) == 0);
        Self { bits, len: len as u8 }
    }

    pub fn zero(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::new(low_mask(len.min(MAX_LEN)), len)
    }

    /// Builds a word from 1-based positions.
    pub fn from_positions(positions: &[usize], len: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &p in positions {
            if p == 0 || p > len {
                return Err(Error::PositionOutOfRange { pos: p, len });
            }
            bits |= 1 << (p - 1);
        }
        Self::new(bits, len)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// 1-based positions of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        support_of(self.bits)
    }

    pub fn contains(&self, pos: usize) -> bool {
        pos >= 1 && pos <= self.len() && self.bits >> (pos - 1) & 1 == 1
    }

    pub fn xor(&self, other: &BitWord) -> Result<BitWord> {
        self.check_len(other)?;
        Ok(Self::from_raw(self.bits ^ other.bits, self.len()))
    }

    /// Inner product over F_2.
    pub fn dot(&self, other: &BitWord) -> Result<bool> {
        self.check_len(other)?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }

    pub(crate) fn check_len(&self, other: &BitWord) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

/// 1-based support of a raw mask.
pub(crate) fn support_of(mut bits: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize + 1);
        bits &= bits - 1;
    }
    out
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let len = s.len();
        if len == 0 || len > MAX_LEN {
            return Err(Error::LengthOutOfRange(len));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected character {other:?} in binary word"),
                    })
                }
            }
        }
        Self::new(bits, len)
    }
}

impl Serialize for BitWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_of_zero_word_is_empty() {
        assert!(BitWord::zero(6).unwrap().support().is_empty());
    }

    #[test]
    fn support_uses_one_based_positions() {
        let w: BitWord = "001111".parse().unwrap();
        assert_eq!(w.support(), vec![3, 4, 5, 6]);
        let w: BitWord = "101100".parse().unwrap();
        assert_eq!(w.support(), vec![1, 3, 4]);
        assert_eq!(w.weight(), 3);
    }

    #[test]
    fn text_form_puts_position_one_first() {
        let w = BitWord::from_positions(&[1, 3, 4], 6).unwrap();
        assert_eq!(w.to_string(), "101100");
        assert_eq!(w.bits(), 0b001101);
    }

    #[test]
    fn rejects_bad_lengths_and_bits() {
        assert_eq!(BitWord::new(0, 0), Err(Error::LengthOutOfRange(0)));
        assert_eq!(BitWord::new(0, 65), Err(Error::LengthOutOfRange(65)));
        assert!(matches!(BitWord::new(0b100, 2), Err(Error::StrayBits { .. })));
        assert!(BitWord::new(u64::MAX, 64).is_ok());
        assert!(matches!(
            BitWord::from_positions(&[7], 6),
            Err(Error::PositionOutOfRange { pos: 7, len: 6 })
        ));
        assert!("01a1".parse::<BitWord>().is_err());
    }

    #[test]
    fn xor_requires_matching_lengths() {
        let a = BitWord::new(1, 3).unwrap();
        let b = BitWord::new(1, 4).unwrap();
        assert!(matches!(a.xor(&b), Err(Error::LengthMismatch { .. })));
    }
}
