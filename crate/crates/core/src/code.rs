use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::BitMatrix;
use crate::word::{BitWord, MAX_LEN};

/// Largest code dimension whose codewords will be listed.
pub const MAX_ENUM_DIMENSION: usize = 24;

/// A binary linear code given by its parity-check matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    parity_check: BitMatrix,
    rank: usize,
}

impl LinearCode {
    pub fn new(parity_check: BitMatrix) -> Self {
        let rank = parity_check.rank();
        Self { parity_check, rank }
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn len(&self) -> usize {
        self.parity_check.ncols()
    }

    /// `k = n - rank(H)`.
    pub fn dimension(&self) -> usize {
        self.len() - self.rank
    }

    pub fn redundancy(&self) -> usize {
        self.rank
    }

    pub fn is_member(&self, w: &BitWord) -> Result<bool> {
        if w.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.len(),
            });
        }
        Ok(self.parity_check.syndrome(w.bits()) == 0)
    }

    #[inline]
    pub(crate) fn contains_raw(&self, w: u64) -> bool {
        self.parity_check.syndrome(w) == 0
    }

    pub fn generator_basis(&self) -> Vec<BitWord> {
        self.parity_check
            .nullspace()
            .into_iter()
            .map(|v| BitWord::from_raw(v, self.len()))
            .collect()
    }

    /// All `2^k` codewords in increasing bitmask order.
    pub fn enumerate_codewords(&self) -> Result<ExplicitCode> {
        let k = self.dimension();
        if k > MAX_ENUM_DIMENSION {
            return Err(Error::DimensionTooLarge {
                k,
                max: MAX_ENUM_DIMENSION,
            });
        }
        let basis = self.parity_check.nullspace();
        let mut words = Vec::with_capacity(1 << k);
        let mut current = 0u64;
        words.push(current);
        // Gray-code walk: step i flips the basis vector at its lowest set bit.
        for i in 1u64..(1 << k) {
            current ^= basis[i.trailing_zeros() as usize];
            words.push(current);
        }
        words.sort_unstable();
        Ok(ExplicitCode {
            words,
            len: self.len(),
        })
    }

    /// Recovers a parity-check description from an explicit code, failing if
    /// the code is not closed under addition.
    pub fn from_codewords(code: &ExplicitCode) -> Result<Self> {
        let n = code.len();
        let mut basis: Vec<u64> = Vec::new();
        for &w in code.raw() {
            let mut v = w;
            for &b in &basis {
                let top = 63 - b.leading_zeros();
                if v >> top & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                basis.push(v);
                // keep the basis sorted by leading bit, descending
                basis.sort_unstable_by(|a, b| b.cmp(a));
                reduce_basis(&mut basis);
            }
        }
        if !code.raw().contains(&0) || (1u128 << basis.len()) != code.size() as u128 {
            return Err(Error::NotLinear(format!(
                "{} words but the span has 2^{} elements",
                code.size(),
                basis.len()
            )));
        }
        let generator = BitMatrix::from_rows(basis, n)?;
        let h = BitMatrix::from_rows(generator.nullspace(), n)?;
        let lc = Self::new(h);
        // closure check: every listed word spans, and the counts agree
        debug_assert!(code.raw().iter().all(|&w| lc.contains_raw(w)));
        Ok(lc)
    }
}

fn reduce_basis(basis: &mut [u64]) {
    for i in 0..basis.len() {
        let top = 63 - basis[i].leading_zeros();
        for j in 0..basis.len() {
            if i != j && basis[j] >> top & 1 == 1 {
                basis[j] ^= basis[i];
            }
        }
    }
}

/// A finite set of words of common length, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplicitCode {
    words: Vec<u64>,
    len: usize,
}

impl ExplicitCode {
    pub fn new(words: &[BitWord], len: usize) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::LengthOutOfRange(len));
        }
        let mut raw = Vec::with_capacity(words.len());
        for w in words {
            if w.len() != len {
                return Err(Error::LengthMismatch {
                    left: w.len(),
                    right: len,
                });
            }
            raw.push(w.bits());
        }
        raw.sort_unstable();
        if let Some(pair) = raw.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWord(
                BitWord::from_raw(pair[0], len).to_string(),
            ));
        }
        Ok(Self { words: raw, len })
    }

    pub(crate) fn from_sorted_raw(words: Vec<u64>, len: usize) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Self { words, len }
    }

    /// Every vector of F_2^n.
    pub fn full_space(len: usize) -> Result<Self> {
        if len > MAX_ENUM_DIMENSION {
            return Err(Error::DimensionTooLarge {
                k: len,
                max: MAX_ENUM_DIMENSION,
            });
        }
        BitWord::zero(len)?;
        Ok(Self::from_sorted_raw((0..1u64 << len).collect(), len))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn raw(&self) -> &[u64] {
        &self.words
    }

    pub fn words(&self) -> impl Iterator<Item = BitWord> + '_ {
        self.words.iter().map(|&w| BitWord::from_raw(w, self.len))
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        w.len() == self.len && self.words.binary_search(&w.bits()).is_ok()
    }

    pub fn is_xor_closed(&self) -> bool {
        self.words
            .iter()
            .all(|&a| self.words.iter().all(|&b| self.words.binary_search(&(a ^ b)).is_ok()))
    }

    /// The translate `u + C`.
    pub fn translate(&self, u: &BitWord) -> Result<Self> {
        if u.len() != self.len {
            return Err(Error::LengthMismatch {
                left: u.len(),
                right: self.len,
            });
        }
        let mut words: Vec<u64> = self.words.iter().map(|&w| w ^ u.bits()).collect();
        words.sort_unstable();
        Ok(Self::from_sorted_raw(words, self.len))
    }

    /// Drops one word; used to build perturbed codes.
    pub fn without(&self, w: &BitWord) -> Self {
        let words = self
            .words
            .iter()
            .copied()
            .filter(|&x| x != w.bits())
            .collect();
        Self::from_sorted_raw(words, self.len)
    }
}

impl fmt::Display for ExplicitCode {
    /// One codeword per line, position 1 leftmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in self.words() {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for ExplicitCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = Vec::new();
        let mut len = None;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let w: BitWord = line.parse().map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse {
                    line: lineno + 1,
                    msg,
                },
                other => other,
            })?;
            match len {
                None => len = Some(w.len()),
                Some(n) if n != w.len() => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("word has length {}, expected {n}", w.len()),
                    })
                }
                _ => {}
            }
            words.push(w);
        }
        let len = len.ok_or(Error::Parse {
            line: 0,
            msg: "empty code file".into(),
        })?;
        Self::new(&words, len)
    }
}
