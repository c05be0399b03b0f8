//! Hamming codes `H_m` and extended Hamming codes `H~_m`.
//!
//! Column `i` of `H_m` is the binary expansion of `i` (top row most
//! significant), for `i = 1..2^m - 1`. `H~_m` has an all-ones first row above
//! the binary expansion of `i mod 2^m`, for `i = 1..2^m`; its zero column sits
//! at position `2^m`, and removing the first row and that column gives `H_m`
//! with identical position numbering.

use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::matrix::BitMatrix;

/// Largest `m` whose code fits in 64 coordinates.
pub const MAX_BUILD_M: u32 = 6;

/// Largest `m` accepted by the position arithmetic.
pub const MAX_POSITION_M: u32 = 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Standard,
    Extended,
}

#[derive(Clone, Debug)]
pub struct HammingFamily {
    m: u32,
    variant: Variant,
    code: LinearCode,
}

impl HammingFamily {
    pub fn build(m: u32, variant: Variant) -> Result<Self> {
        if !(2..=MAX_BUILD_M).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "m = {m} outside 2..={MAX_BUILD_M}"
            )));
        }
        let n = code_length(m, variant);
        let mut rows = Vec::new();
        if variant == Variant::Extended {
            rows.push(crate::word::low_mask(n));
        }
        for r in 0..m {
            let bit = m - 1 - r;
            let row = (1..=n).fold(0u64, |acc, i| {
                let v = (i as u64) & ((1 << m) - 1);
                acc | (v >> bit & 1) << (i - 1)
            });
            rows.push(row);
        }
        let h = BitMatrix::from_rows(rows, n)?;
        Ok(Self {
            m,
            variant,
            code: LinearCode::new(h),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn minimum_distance(&self) -> usize {
        match self.variant {
            Variant::Standard => 3,
            Variant::Extended => 4,
        }
    }
}

pub fn code_length(m: u32, variant: Variant) -> usize {
    match variant {
        Variant::Standard => (1 << m) - 1,
        Variant::Extended => 1 << m,
    }
}

fn check_m(m: u32) -> Result<()> {
    if !(2..=MAX_POSITION_M).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "m = {m} outside 2..={MAX_POSITION_M}"
        )));
    }
    Ok(())
}

fn check_position(p: usize, n: usize) -> Result<()> {
    if p == 0 || p > n {
        return Err(Error::PositionOutOfRange { pos: p, len: n });
    }
    Ok(())
}

/// The third coordinate of the weight-3 codeword of `H_m` through `{a, b}`.
pub fn third_point(a: usize, b: usize, m: u32) -> Result<usize> {
    check_m(m)?;
    let n = code_length(m, Variant::Standard);
    check_position(a, n)?;
    check_position(b, n)?;
    if a == b {
        return Err(Error::DegeneratePositions(vec![a, b]));
    }
    Ok(a ^ b)
}

/// The unique `d` with `{a, b, c, d}` a codeword of `H~_m`.
pub fn fourth_point(a: usize, b: usize, c: usize, m: u32) -> Result<usize> {
    check_m(m)?;
    let n = code_length(m, Variant::Extended);
    for p in [a, b, c] {
        check_position(p, n)?;
    }
    if a == b || b == c || a == c {
        return Err(Error::DegeneratePositions(vec![a, b, c]));
    }
    let mask = n - 1;
    let d = match (a & mask) ^ (b & mask) ^ (c & mask) {
        0 => n,
        v => v,
    };
    if d == a || d == b || d == c {
        return Err(Error::DegeneratePositions(vec![a, b, c]));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::BitWord;

    #[test]
    fn standard_m2_matrix_and_code() {
        let h = HammingFamily::build(2, Variant::Standard).unwrap();
        assert_eq!(h.code().parity_check().to_string(), "011\n101\n");
        let words = h.code().enumerate_codewords().unwrap();
        assert_eq!(words.to_string(), "000\n111\n");
    }

    #[test]
    fn extended_m2_is_repetition_code() {
        let h = HammingFamily::build(2, Variant::Extended).unwrap();
        assert_eq!(h.code().parity_check().to_string(), "1111\n0110\n1010\n");
        let words = h.code().enumerate_codewords().unwrap();
        assert_eq!(words.to_string(), "0000\n1111\n");
    }

    #[test]
    fn deleting_first_row_and_zero_column_gives_standard() {
        for m in 2..=MAX_BUILD_M {
            let ext = HammingFamily::build(m, Variant::Extended).unwrap();
            let std = HammingFamily::build(m, Variant::Standard).unwrap();
            let n = ext.len();
            assert_eq!(ext.code().parity_check().column(n - 1), 1, "zero column at 2^m");
            let punctured = ext.code().parity_check().delete(0, n - 1).unwrap();
            assert_eq!(&punctured, std.code().parity_check(), "m = {m}");
        }
    }

    #[test]
    fn parameters() {
        for m in 2..=4 {
            let std = HammingFamily::build(m, Variant::Standard).unwrap();
            let n = (1usize << m) - 1;
            assert_eq!(std.len(), n);
            assert_eq!(std.code().dimension(), n - m as usize);
            let words = std.code().enumerate_codewords().unwrap();
            let min = words.raw().iter().skip(1).map(|w| w.count_ones()).min().unwrap();
            assert_eq!(min, 3);
            let weight3 = words.raw().iter().filter(|w| w.count_ones() == 3).count();
            assert_eq!(weight3, (n * (n - 1)) / 6);

            let ext = HammingFamily::build(m, Variant::Extended).unwrap();
            assert_eq!(ext.code().dimension(), n - m as usize);
            let words = ext.code().enumerate_codewords().unwrap();
            assert!(words.raw().iter().all(|w| w.count_ones() % 2 == 0));
            let min = words.raw().iter().skip(1).map(|w| w.count_ones()).min().unwrap();
            assert_eq!(min, 4);
        }
        let h3 = HammingFamily::build(3, Variant::Standard).unwrap();
        let words = h3.code().enumerate_codewords().unwrap();
        assert_eq!(words.size(), 16);
        assert!(words.raw().iter().all(|w| [0, 3, 4, 7].contains(&w.count_ones())));
    }

    #[test]
    fn build_range() {
        assert!(HammingFamily::build(1, Variant::Standard).is_err());
        assert!(HammingFamily::build(7, Variant::Extended).is_err());
        assert!(HammingFamily::build(6, Variant::Extended).is_ok());
    }

    #[test]
    fn third_point_examples() {
        assert_eq!(third_point(1, 2, 2).unwrap(), 3);
        assert_eq!(third_point(4, 8, 4).unwrap(), 12);
        assert!(third_point(5, 5, 4).is_err());
        assert!(third_point(1, 16, 4).is_err());
    }

    #[test]
    fn third_point_completes_codewords() {
        for m in 2..=5 {
            let h = HammingFamily::build(m, Variant::Standard).unwrap();
            let n = h.len();
            for a in 1..=n {
                for b in a + 1..=n {
                    let c = third_point(a, b, m).unwrap();
                    let w = BitWord::from_positions(&[a, b, c], n).unwrap();
                    assert_eq!(w.weight(), 3);
                    assert!(h.code().is_member(&w).unwrap());
                }
            }
        }
    }

    #[test]
    fn fourth_point_examples() {
        assert_eq!(fourth_point(1, 2, 3, 2).unwrap(), 4);
        assert!(fourth_point(1, 1, 3, 2).is_err());
        let h = HammingFamily::build(4, Variant::Extended).unwrap();
        for (a, b, c) in [(1, 2, 3), (5, 9, 16), (7, 11, 13), (2, 15, 16)] {
            let d = fourth_point(a, b, c, 4).unwrap();
            let w = BitWord::from_positions(&[a, b, c, d], 16).unwrap();
            assert_eq!(w.weight(), 4);
            assert!(h.code().is_member(&w).unwrap());
            for (x, y, z) in [(b, a, c), (c, b, a), (b, c, a), (a, c, b)] {
                assert_eq!(fourth_point(x, y, z, 4).unwrap(), d);
            }
        }
        // large m uses the same arithmetic
        assert_eq!(fourth_point(1, 2, 4, 20).unwrap(), 7);
        assert_eq!(fourth_point(1, 2, 3, 20).unwrap(), 1 << 20);
    }
}
