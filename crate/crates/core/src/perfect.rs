//! Perfectness of codes in a weighted Hamming metric.
//!
//! Two independent routes: covering `F_2^n` cell by cell with the spheres
//! around every codeword, and the sphere-packing plus partition criterion
//! for linear codes.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{ExplicitCode, LinearCode};
use crate::error::{Error, Result};
use crate::metric::{error_patterns, ser_big, sphere_size_total, weight_raw, MAX_SPHERE_WORDS};
use crate::weights::WeightVector;
use crate::word::{support_of, BitWord};

/// Default cap on `n` for scans over the whole space.
pub const DEFAULT_MAX_SCAN_N: usize = 24;

/// Cap on `|C| * |S_pi(0; r)|` for the exhaustive route.
pub const MAX_COVER_WORK: u64 = 1 << 32;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Perfect,
    NotPerfect,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    Structural,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A vector no sphere reaches.
    Uncovered { vector: BitWord },
    /// A vector reached from two centers.
    DoubleCovered { vector: BitWord, centers: [BitWord; 2] },
    /// A nonzero codeword split into two parts of pi-weight at most `r`.
    Partition { codeword: BitWord, x: BitWord, y: BitWord },
    /// The sphere size differs from the number of cosets.
    PackingMismatch {
        #[serde(serialize_with = "ser_big")]
        sphere_size: BigUint,
        #[serde(serialize_with = "ser_big")]
        cosets: BigUint,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PerfectnessReport {
    pub verdict: Verdict,
    pub method: Method,
    pub radius: u64,
    pub witness: Option<Witness>,
}

impl PerfectnessReport {
    pub fn is_perfect(&self) -> bool {
        self.verdict == Verdict::Perfect
    }

    fn perfect(method: Method, radius: u64) -> Self {
        Self {
            verdict: Verdict::Perfect,
            method,
            radius,
            witness: None,
        }
    }

    fn failed(method: Method, radius: u64, witness: Witness) -> Self {
        Self {
            verdict: Verdict::NotPerfect,
            method,
            radius,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveOptions {
    /// Largest `n` whose `2^n` cells may be allocated.
    pub max_n: usize,
    /// Worker threads; `1` runs the single-threaded pass only.
    pub jobs: usize,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_SCAN_N,
            jobs: 1,
        }
    }
}

/// Checks that the radius-`r` spheres around the codewords partition the
/// whole space, with the default options.
pub fn verify_exhaustive(code: &ExplicitCode, pi: &WeightVector, r: u64) -> Result<PerfectnessReport> {
    verify_exhaustive_with(code, pi, r, &ExhaustiveOptions::default())
}

pub fn verify_exhaustive_with(
    code: &ExplicitCode,
    pi: &WeightVector,
    r: u64,
    opts: &ExhaustiveOptions,
) -> Result<PerfectnessReport> {
    let n = code.len();
    if n != pi.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: pi.len(),
        });
    }
    if n > opts.max_n {
        return Err(Error::InstanceTooLarge(format!(
            "exhaustive scan of 2^{n} vectors exceeds the cap 2^{}",
            opts.max_n
        )));
    }
    let sphere = sphere_size_total(pi, r);
    if sphere * BigUint::from(code.size()) > BigUint::from(MAX_COVER_WORK) {
        return Err(Error::InstanceTooLarge(format!(
            "{} spheres of radius {r} exceed the covering budget",
            code.size()
        )));
    }
    let patterns = error_patterns(pi, r);
    if opts.jobs > 1 && parallel_cover_is_perfect(code.raw(), &patterns, n, opts.jobs)? {
        return Ok(PerfectnessReport::perfect(Method::Exhaustive, r));
    }
    // Single-threaded pass; also yields the canonical witness after a failed
    // parallel pass.
    Ok(sequential_cover(code, pi, &patterns, r))
}

fn sequential_cover(
    code: &ExplicitCode,
    pi: &WeightVector,
    patterns: &[u64],
    r: u64,
) -> PerfectnessReport {
    let n = code.len();
    let cells = 1usize << n;
    let mut bitmap = vec![0u64; cells.div_ceil(64)];
    for &c in code.raw() {
        for &e in patterns {
            let v = (c ^ e) as usize;
            let (word, bit) = (v / 64, 1u64 << (v % 64));
            if bitmap[word] & bit != 0 {
                let first = code
                    .raw()
                    .iter()
                    .copied()
                    .find(|&other| other != c && weight_raw(other ^ v as u64, pi.weights()) <= r)
                    .expect("a covered cell has an owner");
                let witness = Witness::DoubleCovered {
                    vector: BitWord::from_raw(v as u64, n),
                    centers: [BitWord::from_raw(first, n), BitWord::from_raw(c, n)],
                };
                return PerfectnessReport::failed(Method::Exhaustive, r, witness);
            }
            bitmap[word] |= bit;
        }
    }
    match first_clear_cell(&bitmap, cells) {
        Some(v) => PerfectnessReport::failed(
            Method::Exhaustive,
            r,
            Witness::Uncovered {
                vector: BitWord::from_raw(v, n),
            },
        ),
        None => PerfectnessReport::perfect(Method::Exhaustive, r),
    }
}

fn first_clear_cell(bitmap: &[u64], cells: usize) -> Option<u64> {
    for (i, &word) in bitmap.iter().enumerate() {
        let valid = if (i + 1) * 64 <= cells {
            u64::MAX
        } else {
            (1u64 << (cells - i * 64)) - 1
        };
        let clear = !word & valid;
        if clear != 0 {
            return Some((i * 64) as u64 + u64::from(clear.trailing_zeros()));
        }
    }
    None
}

/// Shards the codewords across workers over a shared atomic bitmap. A cell
/// set twice flags failure whatever the interleaving.
fn parallel_cover_is_perfect(codewords: &[u64], patterns: &[u64], n: usize, jobs: usize) -> Result<bool> {
    let cells = 1usize << n;
    let bitmap: Vec<AtomicU64> = (0..cells.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let collided = AtomicBool::new(false);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| {
        codewords.par_iter().for_each(|&c| {
            if collided.load(Ordering::Relaxed) {
                return;
            }
            for &e in patterns {
                let v = (c ^ e) as usize;
                let bit = 1u64 << (v % 64);
                if bitmap[v / 64].fetch_or(bit, Ordering::Relaxed) & bit != 0 {
                    collided.store(true, Ordering::Relaxed);
                    return;
                }
            }
        });
    });
    if collided.load(Ordering::Relaxed) {
        return Ok(false);
    }
    let plain: Vec<u64> = bitmap.into_iter().map(AtomicU64::into_inner).collect();
    Ok(first_clear_cell(&plain, cells).is_none())
}

/// All nonzero codewords of pi-weight at most `bound`, ascending.
///
/// Walks the words of bounded pi-weight and keeps those with zero syndrome.
pub fn low_weight_codewords(code: &LinearCode, pi: &WeightVector, bound: u64) -> Result<Vec<BitWord>> {
    if code.len() != pi.len() {
        return Err(Error::LengthMismatch {
            left: code.len(),
            right: pi.len(),
        });
    }
    let size = sphere_size_total(pi, bound);
    if size > BigUint::from(MAX_SPHERE_WORDS) {
        return Err(Error::InstanceTooLarge(format!(
            "{size} candidate words of pi-weight <= {bound}"
        )));
    }
    let n = code.len();
    Ok(error_patterns(pi, bound)
        .into_iter()
        .filter(|&e| e != 0 && code.contains_raw(e))
        .map(|e| BitWord::from_raw(e, n))
        .collect())
}

/// A split of `c` into `x + y` (disjoint supports) with both parts of
/// pi-weight at most `r`, if one exists. The part holding the lowest support
/// position is `x`; the trivial split `y = 0` is included.
pub fn find_small_partition(c: &BitWord, pi: &WeightVector, r: u64) -> Option<(BitWord, BitWord)> {
    let support = support_of(c.bits());
    let (&first, rest) = support.split_first()?;
    let rest_len = rest.len();
    for sub in 0u64..(1u64 << rest_len) {
        let mut x = 1u64 << (first - 1);
        for (i, &p) in rest.iter().enumerate() {
            if sub >> i & 1 == 1 {
                x |= 1 << (p - 1);
            }
        }
        let y = c.bits() ^ x;
        if weight_raw(x, pi.weights()) <= r && weight_raw(y, pi.weights()) <= r {
            return Some((BitWord::from_raw(x, c.len()), BitWord::from_raw(y, c.len())));
        }
    }
    None
}

/// Sphere-packing and partition criterion for a linear code.
///
/// Only codewords with `w_pi(c) <= 2r` can split into two parts of weight
/// at most `r`, so only those are examined.
pub fn verify_structural(code: &LinearCode, pi: &WeightVector, r: u64) -> Result<PerfectnessReport> {
    if code.len() != pi.len() {
        return Err(Error::LengthMismatch {
            left: code.len(),
            right: pi.len(),
        });
    }
    let sphere = sphere_size_total(pi, r);
    let cosets = BigUint::from(1u8) << code.redundancy();
    if sphere != cosets {
        return Ok(PerfectnessReport::failed(
            Method::Structural,
            r,
            Witness::PackingMismatch {
                sphere_size: sphere,
                cosets,
            },
        ));
    }
    for c in low_weight_codewords(code, pi, 2 * r)? {
        if let Some((x, y)) = find_small_partition(&c, pi, r) {
            return Ok(PerfectnessReport::failed(
                Method::Structural,
                r,
                Witness::Partition { codeword: c, x, y },
            ));
        }
    }
    Ok(PerfectnessReport::perfect(Method::Structural, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::BitMatrix;

    fn example() -> (LinearCode, WeightVector) {
        (
            LinearCode::new("100101\n010011\n001111\n".parse().unwrap()),
            "1,1,2,2,2,2".parse().unwrap(),
        )
    }

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn small_example_is_two_perfect_both_ways() {
        let (code, pi) = example();
        let words = code.enumerate_codewords().unwrap();
        assert!(verify_exhaustive(&words, &pi, 2).unwrap().is_perfect());
        assert!(verify_structural(&code, &pi, 2).unwrap().is_perfect());
        let par = ExhaustiveOptions { jobs: 4, ..Default::default() };
        assert!(verify_exhaustive_with(&words, &pi, 2, &par).unwrap().is_perfect());
    }

    #[test]
    fn repetition_code_of_length_four() {
        let code: ExplicitCode = "0000\n1111".parse().unwrap();
        for l in 0..4 {
            let weights = (0..4).map(|i| if i == l { 2 } else { 1 }).collect();
            let pi = WeightVector::new(weights).unwrap();
            assert!(verify_exhaustive(&code, &pi, 2).unwrap().is_perfect(), "l = {l}");
        }
    }

    #[test]
    fn single_sphere_misses_half_the_line() {
        let code: ExplicitCode = "0".parse().unwrap();
        let pi = WeightVector::all_ones(1).unwrap();
        let report = verify_exhaustive(&code, &pi, 0).unwrap();
        assert_eq!(report.verdict, Verdict::NotPerfect);
        assert_eq!(report.witness, Some(Witness::Uncovered { vector: w("1") }));
    }

    #[test]
    fn double_cover_names_both_centers() {
        let code: ExplicitCode = "000\n001".parse().unwrap();
        let pi = WeightVector::all_ones(3).unwrap();
        let report = verify_exhaustive(&code, &pi, 1).unwrap();
        assert_eq!(
            report.witness,
            Some(Witness::DoubleCovered {
                vector: w("001"),
                centers: [w("000"), w("001")],
            })
        );
        let par = ExhaustiveOptions { jobs: 3, ..Default::default() };
        assert_eq!(verify_exhaustive_with(&code, &pi, 1, &par).unwrap(), report);
    }

    #[test]
    fn low_weight_codewords_of_small_example() {
        let (code, pi) = example();
        assert!(low_weight_codewords(&code, &pi, 4).unwrap().is_empty());
        assert!(low_weight_codewords(&code, &pi, 0).unwrap().is_empty());
        let mut got = low_weight_codewords(&code, &pi, 5).unwrap();
        got.sort();
        let mut want: Vec<BitWord> = ["101100", "100011", "011010", "010101"].map(w).to_vec();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn balanced_split_breaks_perfectness() {
        let code = LinearCode::new(BitMatrix::from_rows(vec![0b0011, 0b0101, 0b1001], 4).unwrap());
        let pi = WeightVector::all_ones(4).unwrap();
        let c = w("1111");
        let (x, y) = find_small_partition(&c, &pi, 2).unwrap();
        assert_eq!(x.xor(&y).unwrap(), c);
        assert_eq!((x.weight(), y.weight()), (2, 2));
        assert!(!verify_structural(&code, &pi, 2).unwrap().is_perfect());
    }

    #[test]
    fn packing_mismatch_is_reported_first() {
        // {00, 11} with pi = (1,2), r = 1: sphere {00, 10} fills both cosets
        let code = LinearCode::new(BitMatrix::from_rows(vec![0b11], 2).unwrap());
        let pi: WeightVector = "1,2".parse().unwrap();
        assert!(verify_structural(&code, &pi, 1).unwrap().is_perfect());

        // {000, 111} with pi = (1,1,2), r = 2: 5 sphere words, 4 cosets
        let code = LinearCode::new(BitMatrix::from_rows(vec![0b011, 0b101], 3).unwrap());
        let pi: WeightVector = "1,1,2".parse().unwrap();
        let report = verify_structural(&code, &pi, 2).unwrap();
        assert!(matches!(report.witness, Some(Witness::PackingMismatch { .. })));
    }

    #[test]
    fn partition_witness_reported() {
        // pi = (1,1,1,3), r = 1: the sphere has 4 words, matching rank 2,
        // but the codeword 1100 splits as 1 + 1.
        let h = BitMatrix::from_rows(vec![0b0011, 0b1100], 4).unwrap();
        let code = LinearCode::new(h);
        assert!(code.is_member(&w("1100")).unwrap());
        let pi: WeightVector = "1,1,1,3".parse().unwrap();
        let report = verify_structural(&code, &pi, 1).unwrap();
        assert_eq!(
            report.witness,
            Some(Witness::Partition {
                codeword: w("1100"),
                x: w("1000"),
                y: w("0100"),
            })
        );
        let words = code.enumerate_codewords().unwrap();
        assert!(!verify_exhaustive(&words, &pi, 1).unwrap().is_perfect());
    }

    #[test]
    fn exhaustive_caps() {
        let code = ExplicitCode::new(&[BitWord::zero(26).unwrap()], 26).unwrap();
        let pi = WeightVector::all_ones(26).unwrap();
        assert!(matches!(
            verify_exhaustive(&code, &pi, 1),
            Err(Error::InstanceTooLarge(_))
        ));
        let opts = ExhaustiveOptions { max_n: 26, jobs: 1 };
        assert!(!verify_exhaustive_with(&code, &pi, 1, &opts).unwrap().is_perfect());
    }
}
