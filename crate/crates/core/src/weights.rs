use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{low_mask, BitWord, MAX_LEN};

/// Positive integer weights attached to the positions of a word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct WeightVector {
    weights: Vec<u32>,
}

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() || weights.len() > MAX_LEN {
            return Err(Error::LengthOutOfRange(weights.len()));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::ZeroWeight(i + 1));
        }
        Ok(Self { weights })
    }

    /// The Hamming metric.
    pub fn all_ones(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Weight of 1-based position `pos`.
    pub fn weight_at(&self, pos: usize) -> u32 {
        self.weights[pos - 1]
    }

    /// The classes X_i: weight value -> ascending 1-based positions.
    pub fn classes(&self) -> BTreeMap<u32, Vec<usize>> {
        let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &w) in self.weights.iter().enumerate() {
            out.entry(w).or_default().push(i + 1);
        }
        out
    }

    /// The sizes x_i.
    pub fn class_sizes(&self) -> BTreeMap<u32, usize> {
        self.classes().into_iter().map(|(w, v)| (w, v.len())).collect()
    }

    /// Mask of positions whose weight equals `w`.
    pub fn class_mask(&self, w: u32) -> u64 {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == w)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn full_mask(&self) -> u64 {
        low_mask(self.len())
    }

    pub(crate) fn check_word(&self, w: &BitWord) -> Result<()> {
        if w.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    /// Comma-separated positive integers; surrounding whitespace and newlines
    /// are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut weights = Vec::new();
        for (idx, tok) in s.split(',').enumerate() {
            let tok = tok.trim();
            let w: u32 = tok.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("weight #{} ({tok:?}) is not a positive integer", idx + 1),
            })?;
            weights.push(w);
        }
        Self::new(weights)
    }
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// The two-valued weight vector: positions 1..=m weigh 1, the rest weigh 2,
/// with the radius-2 sphere size `1 + n + C(m,2)` equal to `2^t`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TwoValuedProfile {
    n: usize,
    m: usize,
    t: u32,
}

impl TwoValuedProfile {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::LengthOutOfRange(n));
        }
        if m > n {
            return Err(Error::InvalidParameter(format!("m = {m} exceeds n = {n}")));
        }
        let size = 1 + n + binom2(m);
        if !size.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "1 + n + C(m,2) = {size} is not a power of two (n = {n}, m = {m})"
            )));
        }
        Ok(Self {
            n,
            m,
            t: size.trailing_zeros(),
        })
    }

    /// The profile with `n = 2^t - 1 - C(m,2)`.
    pub fn from_t_m(t: u32, m: usize) -> Result<Self> {
        if t == 0 || t > 7 {
            return Err(Error::InvalidParameter(format!("t = {t} outside 1..=7")));
        }
        let total = (1usize << t) - 1;
        let n = total.checked_sub(binom2(m)).filter(|&n| n >= m.max(1));
        match n {
            Some(n) => Self::new(n, m),
            None => Err(Error::Infeasible(format!(
                "2^{t} - 1 - C({m},2) leaves no room for {m} weight-1 positions"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn weights(&self) -> WeightVector {
        let w = (1..=self.n)
            .map(|i| if i <= self.m { 1 } else { 2 })
            .collect();
        WeightVector::new(w).expect("profile lengths are validated")
    }

    /// Indicator of the weight-1 positions.
    pub fn m_mask(&self) -> u64 {
        low_mask(self.m)
    }

    /// Indicator of the weight-2 positions.
    pub fn complement_mask(&self) -> u64 {
        low_mask(self.n) & !self.m_mask()
    }

    /// Recovers the profile from a weight vector, if it has the two-valued
    /// shape.
    pub fn from_weights(pi: &WeightVector) -> Result<Self> {
        let w = pi.weights();
        let m = w.iter().take_while(|&&x| x == 1).count();
        if w[m..].iter().any(|&x| x != 2) {
            return Err(Error::InvalidParameter(
                "weight vector is not of the form (1,..,1,2,..,2)".into(),
            ));
        }
        Self::new(w.len(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition_the_positions() {
        let pi: WeightVector = "1,3,2,1,2,2,5".parse().unwrap();
        let classes = pi.classes();
        assert_eq!(classes[&1], vec![1, 4]);
        assert_eq!(classes[&2], vec![3, 5, 6]);
        assert_eq!(classes[&3], vec![2]);
        assert_eq!(classes[&5], vec![7]);
        assert_eq!(pi.class_sizes().values().sum::<usize>(), pi.len());
        assert_eq!(pi.class_mask(2), 0b0110100);
    }

    #[test]
    fn rejects_zero_and_garbage_weights() {
        assert_eq!("1,0,2".parse::<WeightVector>(), Err(Error::ZeroWeight(2)));
        assert!("1,,2".parse::<WeightVector>().is_err());
        assert!("1,-2".parse::<WeightVector>().is_err());
        assert_eq!("2, 1 ,1\n".parse::<WeightVector>().unwrap().weights(), &[2, 1, 1]);
    }

    #[test]
    fn profile_of_small_example() {
        let p = TwoValuedProfile::new(6, 2).unwrap();
        assert_eq!(p.t(), 3);
        assert_eq!(p.weights().to_string(), "1,1,2,2,2,2");
        assert_eq!(p.m_mask(), 0b11);
        assert_eq!(p.complement_mask(), 0b111100);
        assert_eq!(TwoValuedProfile::from_t_m(3, 2).unwrap(), p);
        assert_eq!(TwoValuedProfile::from_weights(&p.weights()).unwrap(), p);
    }

    #[test]
    fn profile_rejects_non_power_of_two() {
        assert!(TwoValuedProfile::new(5, 2).is_err());
        assert!(TwoValuedProfile::new(3, 4).is_err());
        // 2^3 - 1 - C(4,2) = 1 < 4
        assert!(TwoValuedProfile::from_t_m(3, 4).is_err());
    }

    #[test]
    fn profile_with_no_weight_one_positions() {
        let p = TwoValuedProfile::from_t_m(3, 0).unwrap();
        assert_eq!(p.n(), 7);
        assert_eq!(p.m_mask(), 0);
        assert_eq!(p.complement_mask(), 0x7f);
    }
}
