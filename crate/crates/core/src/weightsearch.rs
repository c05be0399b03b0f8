//! Weight vectors under which Hamming and extended Hamming codes become
//! perfect.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::code::{LinearCode, MAX_ENUM_DIMENSION};
use crate::error::{Error, Result};
use crate::hamming::{code_length, fourth_point, HammingFamily, Variant, MAX_BUILD_M};
use crate::metric::sphere_size_total;
use crate::perfect::{verify_exhaustive_with, verify_structural, ExhaustiveOptions, PerfectnessReport};
use crate::weights::WeightVector;

/// A weight vector together with its classes and how it was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct WeightAssignment {
    pub m: u32,
    pub radius: u64,
    pub variant: Variant,
    pub pi: WeightVector,
    /// Positions of weight 1.
    pub x1: Vec<usize>,
    /// Positions of weight 2.
    pub x2: Vec<usize>,
    /// Positions of weight 3 when they form their own class (radius 3).
    pub x3: Vec<usize>,
    /// The merged high class: weight 3 at radius 2, weight 4 at radius 3.
    pub high: Vec<usize>,
    pub notes: Vec<String>,
}

/// The exported trace of an assignment.
#[derive(Clone, Debug, Serialize)]
pub struct AssignmentTrace {
    pub m: u32,
    pub radius: u64,
    #[serde(rename = "X1")]
    pub x1: Vec<usize>,
    #[serde(rename = "X2")]
    pub x2: Vec<usize>,
    #[serde(rename = "X3")]
    pub x3: Vec<usize>,
    #[serde(rename = "Y")]
    pub high: Vec<usize>,
    pub verified: bool,
}

impl WeightAssignment {
    fn from_classes(
        m: u32,
        radius: u64,
        variant: Variant,
        classes: [&[usize]; 4],
        weights: [u32; 4],
        notes: Vec<String>,
    ) -> Result<Self> {
        let n = code_length(m, variant);
        let mut pi = vec![0u32; n];
        for (class, &w) in classes.iter().zip(&weights) {
            for &p in *class {
                debug_assert_eq!(pi[p - 1], 0, "position {p} assigned twice");
                pi[p - 1] = w;
            }
        }
        let sorted = |s: &[usize]| {
            let mut v = s.to_vec();
            v.sort_unstable();
            v
        };
        Ok(Self {
            m,
            radius,
            variant,
            pi: WeightVector::new(pi)?,
            x1: sorted(classes[0]),
            x2: sorted(classes[1]),
            x3: sorted(classes[2]),
            high: sorted(classes[3]),
            notes,
        })
    }

    pub fn family(&self) -> Result<HammingFamily> {
        HammingFamily::build(self.m, self.variant)
    }

    pub fn code(&self) -> Result<LinearCode> {
        Ok(self.family()?.code().clone())
    }

    /// `|S_pi(0; radius)| = 2^{n-k}`.
    pub fn packing_identity_holds(&self) -> Result<bool> {
        let code = self.code()?;
        Ok(sphere_size_total(&self.pi, self.radius) == BigUint::from(1u8) << code.redundancy())
    }

    /// Exhaustive covering when the codewords can be listed and the space
    /// scanned, the structural criterion otherwise.
    pub fn verify(&self, opts: &ExhaustiveOptions) -> Result<PerfectnessReport> {
        let code = self.code()?;
        if code.dimension() <= MAX_ENUM_DIMENSION && code.len() <= opts.max_n {
            let words = code.enumerate_codewords()?;
            verify_exhaustive_with(&words, &self.pi, self.radius, opts)
        } else {
            verify_structural(&code, &self.pi, self.radius)
        }
    }

    pub fn trace(&self, verified: bool) -> AssignmentTrace {
        AssignmentTrace {
            m: self.m,
            radius: self.radius,
            x1: self.x1.clone(),
            x2: self.x2.clone(),
            x3: self.x3.clone(),
            high: self.high.clone(),
            verified,
        }
    }
}

/// All `(x, n)` with `x^2 + 7 = 2^n` and `n <= limit`.
pub fn nagell_solutions(limit: u32) -> Result<Vec<(u64, u32)>> {
    if limit > 63 {
        return Err(Error::InvalidParameter(format!("limit {limit} exceeds 63")));
    }
    Ok((1..=limit)
        .filter_map(|n| {
            let rhs = (1u64 << n).checked_sub(7).filter(|&v| v >= 1)?;
            let x = rhs.isqrt();
            (x * x == rhs).then_some((x, n))
        })
        .collect())
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Left side of the selection condition `1 + C(x1-1,1) + C(x1-1,2) + C(x1-1,3)`.
fn selection_bound(x1: u64) -> u64 {
    match x1 {
        0 => 0,
        x => 1 + binom(x - 1, 1) + binom(x - 1, 2) + binom(x - 1, 3),
    }
}

/// True when `v` would close a dependency of size at most 4 with `chosen`,
/// i.e. `v` is a sum of at most three chosen values.
fn closes_short_dependency(chosen: &[usize], v: usize) -> bool {
    let k = chosen.len();
    for i in 0..k {
        if chosen[i] == v {
            return true;
        }
        for j in i + 1..k {
            let s = chosen[i] ^ chosen[j];
            if s == v {
                return true;
            }
            for l in j + 1..k {
                if s ^ chosen[l] == v {
                    return true;
                }
            }
        }
    }
    v == 0
}

/// Whether some subset of at most four values XORs to zero.
pub fn has_short_dependency(values: &[usize]) -> bool {
    (0..values.len()).any(|i| closes_short_dependency(&values[..i], values[i]))
}

/// A weight vector making `H_m` 2-perfect, with `x1` positions of weight 1.
///
/// `X1` is grown greedily in ascending position order (after an optional
/// seed) so that no four or fewer of its 2-adic columns sum to zero. The
/// pairwise sums of `X1` receive weight 3 and every other position weight 2.
pub fn hamming_2perfect_pi(m: u32, x1: usize, seed: Option<&[usize]>) -> Result<WeightAssignment> {
    if !(2..=MAX_BUILD_M).contains(&m) {
        return Err(Error::InvalidParameter(format!("m = {m} outside 2..={MAX_BUILD_M}")));
    }
    let n = (1usize << m) - 1;
    let bound = selection_bound(x1 as u64);
    if bound >= 1 << m {
        return Err(Error::ConditionViolated {
            condition: 1,
            detail: format!("1 + C(x1-1,1) + C(x1-1,2) + C(x1-1,3) = {bound} >= 2^{m}"),
        });
    }
    let pairs = binom(x1 as u64, 2) as usize;
    if x1 + pairs > n {
        return Err(Error::ConditionViolated {
            condition: 2,
            detail: format!("x2 = 2^{m} - 1 - {x1} - {pairs} < 0"),
        });
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(x1);
    let mut notes = Vec::new();
    if let Some(seed) = seed {
        if seed.len() > x1 {
            return Err(Error::InvalidParameter(format!(
                "seed has {} positions but x1 = {x1}",
                seed.len()
            )));
        }
        for &p in seed {
            if p == 0 || p > n {
                return Err(Error::PositionOutOfRange { pos: p, len: n });
            }
            if closes_short_dependency(&chosen, p) {
                return Err(Error::InvalidParameter(format!(
                    "seed position {p} closes a dependency of size <= 4"
                )));
            }
            chosen.push(p);
        }
        notes.push(format!("seeded X1 with {seed:?}"));
    }
    for p in 1..=n {
        if chosen.len() == x1 {
            break;
        }
        if !closes_short_dependency(&chosen, p) {
            chosen.push(p);
        }
    }
    if chosen.len() < x1 {
        return Err(Error::GreedyExhausted {
            found: chosen.len(),
            wanted: x1,
        });
    }
    notes.push(format!("X1 = {chosen:?}"));

    let mut high = Vec::with_capacity(pairs);
    for i in 0..chosen.len() {
        for j in i + 1..chosen.len() {
            high.push(chosen[i] ^ chosen[j]);
        }
    }
    let in_x1: BTreeSet<usize> = chosen.iter().copied().collect();
    let in_high: BTreeSet<usize> = high.iter().copied().collect();
    debug_assert_eq!(in_high.len(), pairs);
    debug_assert!(in_high.is_disjoint(&in_x1));
    notes.push(format!("pair sums of X1 take weight 3: {high:?}"));
    let x2: Vec<usize> = (1..=n)
        .filter(|p| !in_x1.contains(p) && !in_high.contains(p))
        .collect();
    WeightAssignment::from_classes(
        m,
        2,
        Variant::Standard,
        [&chosen, &x2, &[], &high],
        [1, 2, 3, 3],
        notes,
    )
}

/// Largest `x1` for which `hamming_2perfect_pi` has its conditions met.
pub fn max_hamming_x1(m: u32) -> usize {
    let n = (1u64 << m) - 1;
    (0..=n)
        .take_while(|&x| selection_bound(x) < 1 << m && x + binom(x, 2) <= n)
        .last()
        .unwrap_or(0) as usize
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeasibilityReason {
    NagellNoSolution,
    ParityFail,
    ProvenInfeasibleM12,
    Constructive,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FeasibilityVerdict {
    pub m: u32,
    pub feasible: bool,
    pub x1: Option<u64>,
    pub x2: Option<u64>,
    pub reason: FeasibilityReason,
}

/// Whether some weight vector makes `H~_m` 2-perfect.
///
/// All weights are then 1 or 2 and `2^{m+1} = 1 + 2^m + C(x1,2)`, forcing
/// `2^{m+3} - 7` to be an odd square `(2 x1 - 1)^2`. Nagell's equation leaves
/// `m in {2, 4, 12}`; `m = 12` is excluded by a counting argument that is
/// quoted here, not recomputed.
pub fn ext_hamming_2perfect_feasibility(m: u32) -> Result<FeasibilityVerdict> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m = {m} < 2")));
    }
    let disc = (BigUint::from(1u8) << (m + 3)) - BigUint::from(7u8);
    let root = disc.sqrt();
    let verdict = |feasible, x1, x2, reason| FeasibilityVerdict {
        m,
        feasible,
        x1,
        x2,
        reason,
    };
    if &root * &root != disc {
        return Ok(verdict(false, None, None, FeasibilityReason::NagellNoSolution));
    }
    // 2^{m+3} - 7 is odd, so the root is 4s +- 1 and x1 = (1 + root) / 2
    let root = root.to_u64().expect("Nagell solutions are small");
    if root.is_multiple_of(2) {
        return Ok(verdict(false, None, None, FeasibilityReason::ParityFail));
    }
    let x1 = root.div_ceil(2);
    let x2 = (1u64 << m) - x1;
    let reason = match m {
        2 | 4 => FeasibilityReason::Constructive,
        12 => FeasibilityReason::ProvenInfeasibleM12,
        _ => unreachable!("x^2 + 7 = 2^n has no solution with n = {}", m + 3),
    };
    Ok(verdict(
        reason == FeasibilityReason::Constructive,
        Some(x1),
        Some(x2),
        reason,
    ))
}

/// A weight vector making `H~_m` 2-perfect, for `m = 2` or `m = 4`.
pub fn ext_hamming_2perfect_pi(m: u32) -> Result<WeightAssignment> {
    let verdict = ext_hamming_2perfect_feasibility(m)?;
    if !verdict.feasible {
        return Err(Error::Infeasible(format!(
            "H~_{m} is not 2-perfect for any weights ({:?})",
            verdict.reason
        )));
    }
    let n = 1usize << m;
    let (x1, notes): (Vec<usize>, _) = if m == 2 {
        (vec![1, 2, 3], vec!["X1 = any three positions".to_string()])
    } else {
        let family = HammingFamily::build(m, Variant::Extended)?;
        let words = family.code().enumerate_codewords()?;
        let six = words
            .words()
            .find(|w| w.weight() == 6)
            .expect("H~_4 has weight-6 codewords");
        (
            six.support(),
            vec![format!("X1 = support of the first weight-6 codeword {six}")],
        )
    };
    let x2: Vec<usize> = (1..=n).filter(|p| !x1.contains(p)).collect();
    WeightAssignment::from_classes(m, 2, Variant::Extended, [&x1, &x2, &[], &[]], [1, 2, 3, 3], notes)
}

/// A weight vector making `H~_m` 3-perfect with `x1` positions of weight 1.
///
/// * `x1 = 1`: one position of weight 1, the rest weight 2.
/// * `x1 = 2`: positions 1 and 2 of weight 1; every other position `g` is
///   paired with the fourth point of `{1, 2, g}`, the smaller of each pair
///   taking weight 2 and the larger weight 3.
/// * `x1 = 3` (only `m = 2`): positions 1, 2, 3 of weight 1, position 4 of
///   weight 4.
pub fn ext_hamming_3perfect_pi(m: u32, x1: usize) -> Result<WeightAssignment> {
    if !(2..=MAX_BUILD_M).contains(&m) {
        return Err(Error::InvalidParameter(format!("m = {m} outside 2..={MAX_BUILD_M}")));
    }
    let n = 1usize << m;
    match (x1, m) {
        (1, _) => {
            let x2: Vec<usize> = (2..=n).collect();
            WeightAssignment::from_classes(
                m,
                3,
                Variant::Extended,
                [&[1], &x2, &[], &[]],
                [1, 2, 3, 4],
                vec!["X1 = {1}".into()],
            )
        }
        (2, _) => {
            let mut x2 = Vec::new();
            let mut x3 = Vec::new();
            let mut paired = vec![false; n + 1];
            paired[1] = true;
            paired[2] = true;
            for g in 3..=n {
                if paired[g] {
                    continue;
                }
                let d = fourth_point(1, 2, g, m)?;
                debug_assert!(!paired[d]);
                paired[g] = true;
                paired[d] = true;
                x2.push(g.min(d));
                x3.push(g.max(d));
            }
            WeightAssignment::from_classes(
                m,
                3,
                Variant::Extended,
                [&[1, 2], &x2, &x3, &[]],
                [1, 2, 3, 4],
                vec!["X1 = {1, 2}; pairs {g, d} with {1, 2, g, d} a codeword split smaller -> X2".into()],
            )
        }
        (3, 2) => WeightAssignment::from_classes(
            m,
            3,
            Variant::Extended,
            [&[1, 2, 3], &[], &[], &[4]],
            [1, 2, 3, 4],
            vec!["X1 = {1, 2, 3}, Y = {4}".into()],
        ),
        (3, _) => Err(Error::Infeasible(format!(
            "x1 = 3 forces m = 2 (got m = {m})"
        ))),
        _ => Err(Error::Infeasible(format!(
            "a 3-perfect H~_m needs 1 <= x1 <= 3 (got {x1})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(a: &WeightAssignment) -> bool {
        a.verify(&ExhaustiveOptions::default()).unwrap().is_perfect()
    }

    #[test]
    fn nagell_examples() {
        assert_eq!(
            nagell_solutions(40).unwrap(),
            vec![(1, 3), (3, 4), (5, 5), (11, 7), (181, 15)]
        );
        assert_eq!(nagell_solutions(3).unwrap(), vec![(1, 3)]);
        assert!(nagell_solutions(2).unwrap().is_empty());
        assert_eq!(nagell_solutions(63).unwrap().len(), 5);
        assert!(nagell_solutions(64).is_err());
    }

    #[test]
    fn seeded_m4_example() {
        let a = hamming_2perfect_pi(4, 5, Some(&[1, 2, 4, 8, 15])).unwrap();
        assert_eq!(a.x1, vec![1, 2, 4, 8, 15]);
        assert!(a.x2.is_empty());
        let rest: Vec<usize> = (1..=15).filter(|p| !a.x1.contains(p)).collect();
        assert_eq!(a.high, rest);
        assert!(a.packing_identity_holds().unwrap());
        assert!(verify(&a));
    }

    #[test]
    fn greedy_m4_reaches_the_same_set() {
        let a = hamming_2perfect_pi(4, 5, None).unwrap();
        assert_eq!(a.x1, vec![1, 2, 4, 8, 15]);
    }

    #[test]
    fn m3_single_weight_one_position() {
        let a = hamming_2perfect_pi(3, 1, None).unwrap();
        assert_eq!(a.x1, vec![1]);
        assert!(a.high.is_empty());
        assert_eq!(a.x2.len(), 6);
        assert!(verify(&a));
    }

    #[test]
    fn hamming_conditions() {
        assert!(matches!(
            hamming_2perfect_pi(4, 6, None),
            Err(Error::ConditionViolated { condition: 1, .. })
        ));
        // m = 3, x1 = 4: bound 1+3+3+1 = 8 >= 8
        assert!(matches!(
            hamming_2perfect_pi(3, 4, None),
            Err(Error::ConditionViolated { condition: 1, .. })
        ));
        // m = 3, x1 = 3: bound 1+2+1 = 4 < 8, x2 = 7-3-3 = 1
        assert!(hamming_2perfect_pi(3, 3, None).is_ok());
        assert!(hamming_2perfect_pi(4, 3, Some(&[1, 2, 3])).is_err());
        assert_eq!(max_hamming_x1(4), 5);
        assert_eq!(max_hamming_x1(3), 3);
    }

    #[test]
    fn every_hamming_assignment_verifies() {
        for m in 2..=4 {
            for x1 in 0..=max_hamming_x1(m) {
                let a = hamming_2perfect_pi(m, x1, None).unwrap();
                assert!(!has_short_dependency(&a.x1));
                assert!(a.packing_identity_holds().unwrap(), "m={m} x1={x1}");
                assert!(verify(&a), "m={m} x1={x1}");
            }
        }
    }

    #[test]
    fn feasibility_verdicts() {
        let v = ext_hamming_2perfect_feasibility(2).unwrap();
        assert!(v.feasible);
        assert_eq!(v.x1, Some(3));
        let v = ext_hamming_2perfect_feasibility(4).unwrap();
        assert_eq!((v.feasible, v.x1, v.x2), (true, Some(6), Some(10)));
        let v = ext_hamming_2perfect_feasibility(12).unwrap();
        assert_eq!(v.reason, FeasibilityReason::ProvenInfeasibleM12);
        assert_eq!((v.feasible, v.x1, v.x2), (false, Some(91), Some(4005)));
        let v = ext_hamming_2perfect_feasibility(3).unwrap();
        assert_eq!(v.reason, FeasibilityReason::NagellNoSolution);
        assert!(ext_hamming_2perfect_feasibility(1).is_err());
    }

    #[test]
    fn extended_two_perfect_constructions() {
        let a = ext_hamming_2perfect_pi(2).unwrap();
        assert_eq!((a.x1.clone(), a.x2.clone()), (vec![1, 2, 3], vec![4]));
        assert!(verify(&a));
        let a = ext_hamming_2perfect_pi(4).unwrap();
        assert_eq!((a.x1.len(), a.x2.len()), (6, 10));
        assert!(a.packing_identity_holds().unwrap());
        assert!(matches!(ext_hamming_2perfect_pi(3), Err(Error::Infeasible(_))));
    }

    #[test]
    fn three_perfect_constructions() {
        let a = ext_hamming_3perfect_pi(3, 1).unwrap();
        assert_eq!(a.x1, vec![1]);
        assert_eq!(a.x2.len(), 7);
        assert!(verify(&a));

        let a = ext_hamming_3perfect_pi(3, 2).unwrap();
        assert_eq!((a.x2.len(), a.x3.len()), (3, 3));
        assert!(verify(&a));

        let a = ext_hamming_3perfect_pi(2, 3).unwrap();
        assert_eq!((a.x1.clone(), a.high.clone()), (vec![1, 2, 3], vec![4]));
        assert_eq!(a.pi.weights(), &[1, 1, 1, 4]);
        assert!(verify(&a));

        assert!(matches!(ext_hamming_3perfect_pi(3, 3), Err(Error::Infeasible(_))));
        assert!(matches!(ext_hamming_3perfect_pi(3, 4), Err(Error::Infeasible(_))));
    }

    #[test]
    fn pairing_is_a_perfect_matching() {
        for m in 2..=6 {
            let a = ext_hamming_3perfect_pi(m, 2).unwrap();
            let mut all: Vec<usize> = a.x2.iter().chain(&a.x3).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (3..=1usize << m).collect::<Vec<_>>());
            for &g in &a.x2 {
                let d = fourth_point(1, 2, g, m).unwrap();
                assert!(g < d && a.x3.contains(&d));
            }
        }
    }
}
