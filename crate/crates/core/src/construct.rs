//! Parity-check matrices of 2-perfect linear codes for the two-valued
//! weight vector.
//!
//! A `t x n` matrix with `n = 2^t - 1 - C(m,2)` belongs to the family when
//!
//! * (P1) its columns are nonzero and pairwise distinct,
//! * (P2) no sum of two of the first `m` columns is one of the last `n - m`,
//! * (P3) no sum of two or three of the first `m` columns is one of the
//!   first `m`.
//!
//! Once the first `m` columns (the head) are fixed, the remaining columns
//! are forced: every nonzero vector outside the head and its pairwise sums.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::matrix::BitMatrix;
use crate::weights::{TwoValuedProfile, WeightVector};

/// Node budget for the head search.
const HEAD_SEARCH_BUDGET: usize = 1 << 22;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum FamilyViolation {
    /// P1: column `col` (1-based) is zero.
    ZeroColumn { col: usize },
    /// P1: two columns coincide.
    RepeatedColumn { cols: [usize; 2] },
    /// P2: head columns `pair` sum to tail column `col`.
    PairSumInTail { pair: [usize; 2], col: usize },
    /// P3: head columns `subset` sum to head column `col`.
    HeadSumInHead { subset: Vec<usize>, col: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyCheck {
    pub holds: bool,
    pub violation: Option<FamilyViolation>,
}

/// Checks the family properties for a `t x n` matrix with `m` head columns.
pub fn family_check(h: &BitMatrix, m: usize) -> Result<FamilyCheck> {
    let t = h.nrows();
    let n = h.ncols();
    let expected = (1usize << t)
        .checked_sub(1 + m * m.saturating_sub(1) / 2)
        .filter(|&e| e >= m);
    if expected != Some(n) {
        return Err(Error::DimensionMismatch(format!(
            "a {t}-row family matrix with m = {m} needs 2^{t} - 1 - C({m},2) columns, got {n}"
        )));
    }
    let cols = h.columns();
    let fail = |v| {
        Ok(FamilyCheck {
            holds: false,
            violation: Some(v),
        })
    };
    if let Some(j) = cols.iter().position(|&c| c == 0) {
        return fail(FamilyViolation::ZeroColumn { col: j + 1 });
    }
    for i in 0..n {
        for j in i + 1..n {
            if cols[i] == cols[j] {
                return fail(FamilyViolation::RepeatedColumn { cols: [i + 1, j + 1] });
            }
        }
    }
    let find = |range: std::ops::Range<usize>, v: u64| range.into_iter().find(|&k| cols[k] == v);
    for i in 0..m {
        for j in i + 1..m {
            let s = cols[i] ^ cols[j];
            if let Some(k) = find(m..n, s) {
                return fail(FamilyViolation::PairSumInTail {
                    pair: [i + 1, j + 1],
                    col: k + 1,
                });
            }
            if let Some(k) = find(0..m, s) {
                return fail(FamilyViolation::HeadSumInHead {
                    subset: vec![i + 1, j + 1],
                    col: k + 1,
                });
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for l in j + 1..m {
                if let Some(k) = find(0..m, cols[i] ^ cols[j] ^ cols[l]) {
                    return fail(FamilyViolation::HeadSumInHead {
                        subset: vec![i + 1, j + 1, l + 1],
                        col: k + 1,
                    });
                }
            }
        }
    }
    Ok(FamilyCheck {
        holds: true,
        violation: None,
    })
}

/// A family matrix together with its weight profile.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyMatrix {
    matrix: BitMatrix,
    profile: TwoValuedProfile,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyJson {
    pub t: u32,
    pub m: usize,
    pub n: usize,
    /// Column values, top row least significant.
    pub columns: Vec<u64>,
}

impl FamilyMatrix {
    /// Wraps a matrix after checking it belongs to the family.
    pub fn new(matrix: BitMatrix, m: usize) -> Result<Self> {
        let check = family_check(&matrix, m)?;
        if let Some(v) = check.violation {
            return Err(Error::InvalidParameter(format!(
                "matrix is outside the family: {v:?}"
            )));
        }
        let profile = TwoValuedProfile::new(matrix.ncols(), m)?;
        Ok(Self { matrix, profile })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn profile(&self) -> TwoValuedProfile {
        self.profile
    }

    pub fn head(&self) -> Vec<u64> {
        self.matrix.columns()[..self.profile.m()].to_vec()
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            t: self.profile.t(),
            m: self.profile.m(),
            n: self.profile.n(),
            columns: self.matrix.columns(),
        }
    }
}

/// Sums of one, two or three distinct members of `head`.
fn short_sums(head: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for i in 0..head.len() {
        out.insert(head[i]);
        for j in i + 1..head.len() {
            out.insert(head[i] ^ head[j]);
            for l in j + 1..head.len() {
                out.insert(head[i] ^ head[j] ^ head[l]);
            }
        }
    }
    out
}

fn admissible(head: &[u64], v: u64) -> bool {
    v != 0 && !short_sums(head).contains(&v)
}

struct HeadSearch {
    candidates: Vec<u64>,
    wanted: usize,
    deepest: Vec<u64>,
    nodes: usize,
}

impl HeadSearch {
    fn extend(&mut self, head: &mut Vec<u64>, from: usize) -> bool {
        if head.len() > self.deepest.len() {
            self.deepest = head.clone();
        }
        if head.len() == self.wanted {
            return true;
        }
        for idx in from..self.candidates.len() {
            self.nodes += 1;
            if self.nodes > HEAD_SEARCH_BUDGET {
                return false;
            }
            let v = self.candidates[idx];
            if !admissible(head, v) {
                continue;
            }
            head.push(v);
            if self.extend(head, idx + 1) {
                return true;
            }
            head.pop();
        }
        false
    }
}

/// Builds a family matrix with `t` rows and `m` head columns.
///
/// The head starts from `seed` (if any) and is completed by a depth-first
/// search over unit vectors first, then the remaining values ascending,
/// keeping every sum of at most four head columns nonzero. The tail lists
/// the leftover nonzero values in ascending order.
pub fn family_build(t: u32, m: usize, seed: Option<&[u64]>) -> Result<FamilyMatrix> {
    let profile = TwoValuedProfile::from_t_m(t, m)?;
    let n = profile.n();
    if n <= m {
        return Err(Error::Infeasible(format!(
            "2^{t} - 1 - {m} - C({m},2) must be positive"
        )));
    }
    let limit = 1u64 << t;
    let mut head: Vec<u64> = Vec::with_capacity(m);
    if let Some(seed) = seed {
        if seed.len() > m {
            return Err(Error::InvalidParameter(format!(
                "seed has {} columns but m = {m}",
                seed.len()
            )));
        }
        for &v in seed {
            if v == 0 || v >= limit {
                return Err(Error::InvalidParameter(format!(
                    "seed column {v} is not a nonzero {t}-bit value"
                )));
            }
            if !admissible(&head, v) {
                return Err(Error::InvalidParameter(format!(
                    "seed column {v} is a sum of at most three earlier seed columns"
                )));
            }
            head.push(v);
        }
    }
    let units = (0..t).map(|i| 1u64 << i);
    let others = (1..limit).filter(|v| !v.is_power_of_two());
    let candidates: Vec<u64> = units
        .chain(others)
        .filter(|v| !head.contains(v))
        .collect();
    let mut search = HeadSearch {
        candidates,
        wanted: m,
        deepest: head.clone(),
        nodes: 0,
    };
    if !search.extend(&mut head, 0) {
        return Err(Error::NoValidHead {
            wanted: m,
            deepest: search.deepest,
        });
    }

    let mut excluded: BTreeSet<u64> = head.iter().copied().collect();
    for i in 0..m {
        for j in i + 1..m {
            excluded.insert(head[i] ^ head[j]);
        }
    }
    let tail: Vec<u64> = (1..limit).filter(|v| !excluded.contains(v)).collect();
    debug_assert_eq!(tail.len(), n - m);
    let columns: Vec<u64> = head.iter().copied().chain(tail).collect();
    let matrix = BitMatrix::from_columns(&columns, t as usize)?;
    FamilyMatrix::new(matrix, m)
}

/// The linear code with the family matrix as parity check, and its
/// two-valued weight vector.
pub fn code_from_family(f: &FamilyMatrix) -> (LinearCode, WeightVector) {
    (LinearCode::new(f.matrix.clone()), f.profile.weights())
}
