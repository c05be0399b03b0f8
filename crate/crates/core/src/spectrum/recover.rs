//! The full distribution `a_{i,j}` of a 2-perfect code from its column
//! `a_{i,0}`.
//!
//! Differentiating the restricted enumerator identity `l` times at `x = 1`
//! gives a triangular system `E x = y` for the grouped sums
//! `x_k = sum_{d in D_k} A_d`; the bivariate duality identity then yields
//! every `a_{i,j}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{dk_complement_weight, support_characterization};
use crate::code::ExplicitCode;
use crate::error::{Error, Result};
use crate::metric::{binomial, weight_raw};
use crate::weights::{TwoValuedProfile, WeightVector};

/// Largest `m` accepted by [`build_e`].
pub const MAX_E_DIMENSION: usize = 30;

fn binom(n: usize, k: usize) -> BigInt {
    BigInt::from(binomial(n as u64, k as u64))
}

/// Lower-triangular `(m+1) x (m+1)` matrix with `E[l][k] = (-1)^k C(m-k, l-k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EMatrix {
    m: usize,
    entries: Vec<Vec<BigRational>>,
}

pub fn build_e(m: usize) -> Result<EMatrix> {
    if m > MAX_E_DIMENSION {
        return Err(Error::InvalidParameter(format!(
            "m = {m} exceeds {MAX_E_DIMENSION}"
        )));
    }
    let entries = (0..=m)
        .map(|l| {
            (0..=m)
                .map(|k| {
                    if k > l {
                        return BigRational::zero();
                    }
                    let c = binom(m - k, l - k);
                    BigRational::from_integer(if k % 2 == 0 { c } else { -c })
                })
                .collect()
        })
        .collect();
    Ok(EMatrix { m, entries })
}

impl EMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    /// Exact inverse by forward substitution against each unit vector.
    pub fn inverse(&self) -> EMatrix {
        let size = self.m + 1;
        let mut cols = Vec::with_capacity(size);
        for j in 0..size {
            let mut e = vec![BigRational::zero(); size];
            e[j] = BigRational::one();
            cols.push(self.forward(&e));
        }
        let entries = (0..size)
            .map(|i| (0..size).map(|j| cols[j][i].clone()).collect())
            .collect();
        EMatrix { m: self.m, entries }
    }

    fn forward(&self, y: &[BigRational]) -> Vec<BigRational> {
        let mut x: Vec<BigRational> = Vec::with_capacity(y.len());
        for (l, row) in self.entries.iter().enumerate() {
            let acc = (0..l).fold(y[l].clone(), |acc, k| acc - &row[k] * &x[k]);
            x.push(acc / &row[l]);
        }
        x
    }

    pub fn mul(&self, other: &EMatrix) -> Result<EMatrix> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "{0}x{0} times {1}x{1}",
                self.m + 1,
                other.m + 1
            )));
        }
        let size = self.m + 1;
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        (0..size).fold(BigRational::zero(), |acc, k| {
                            acc + &self.entries[i][k] * &other.entries[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(EMatrix { m: self.m, entries })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        })
    }

    /// Solves `E x = y` exactly.
    pub fn solve(&self, y: &[BigRational]) -> Result<Vec<BigRational>> {
        if y.len() != self.m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "right side has {} entries, expected {}",
                y.len(),
                self.m + 1
            )));
        }
        Ok(self.forward(y))
    }
}

/// `a_{i,j}`: codewords with `i` ones among the weight-1 positions and `j`
/// among the weight-2 positions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DistributionTable {
    pub m: usize,
    /// `n - m`.
    pub rest: usize,
    /// `counts[i][j]`.
    pub counts: Vec<Vec<u64>>,
}

impl DistributionTable {
    /// Direct count over the codewords.
    pub fn from_code(code: &ExplicitCode, profile: &TwoValuedProfile) -> Result<Self> {
        if code.len() != profile.n() {
            return Err(Error::LengthMismatch {
                left: code.len(),
                right: profile.n(),
            });
        }
        let (m, rest) = (profile.m(), profile.n() - profile.m());
        let mut counts = vec![vec![0u64; rest + 1]; m + 1];
        for &c in code.raw() {
            let i = (c & profile.m_mask()).count_ones() as usize;
            let j = (c & profile.complement_mask()).count_ones() as usize;
            counts[i][j] += 1;
        }
        Ok(Self { m, rest, counts })
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts[i][j]
    }

    /// The column `a_{0,0}, ..., a_{m,0}`.
    pub fn head(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row[0]).collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Coefficients of `sum_c x^{w_pi(c)}`, obtained by `X -> x`, `Y -> x^2`.
    pub fn pi_enumerator(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.m + 2 * self.rest + 1];
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                out[i + 2 * j] += a;
            }
        }
        trim(out)
    }

    /// Rows `i`, columns `j`, with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i");
        for j in 0..=self.rest {
            s.push_str(&format!(",{j}"));
        }
        s.push('\n');
        for (i, row) in self.counts.iter().enumerate() {
            s.push_str(&i.to_string());
            for a in row {
                s.push_str(&format!(",{a}"));
            }
            s.push('\n');
        }
        s
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| match x.to_i64() {
        Some(small) => Num::Small(small),
        None => Num::Big(x.to_string()),
    }))
}

#[derive(Serialize)]
#[serde(untagged)]
enum Num {
    Small(i64),
    Big(String),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Recovery {
    /// `x_k = sum_{d in D_k} A_d` for `k = 0..m`.
    #[serde(serialize_with = "ser_bigints")]
    pub grouped_sums: Vec<BigInt>,
    pub table: DistributionTable,
}

fn inconsistent(msg: String) -> Error {
    Error::InconsistentInput(msg)
}

/// Coefficients of `(1 - z)^a (1 + z)^b`.
fn signed_product(a: usize, b: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for sign in std::iter::repeat_n(-1i32, a).chain(std::iter::repeat_n(1, b)) {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e] += c;
            next[e + 1] += c * sign;
        }
        poly = next;
    }
    poly
}

/// Rebuilds `a_{i,j}` from `a_{0,0}, ..., a_{m,0}` of a 2-perfect code.
///
/// Fails with [`Error::InconsistentInput`] when a grouped sum or a table
/// entry comes out fractional or negative, or the total is not `2^{n-t}`.
pub fn recover_distribution(a_head: &[u64], profile: &TwoValuedProfile) -> Result<Recovery> {
    let (n, m, t) = (profile.n(), profile.m(), profile.t() as usize);
    if a_head.len() != m + 1 {
        return Err(Error::DimensionMismatch(format!(
            "head has {} entries, expected m + 1 = {}",
            a_head.len(),
            m + 1
        )));
    }
    if a_head[0] != 1 {
        return Err(inconsistent(format!("a_00 = {} but must be 1", a_head[0])));
    }
    let size = BigInt::one() << (n - t);
    let y: Vec<BigRational> = (0..=m)
        .map(|l| {
            let s = (l..=m).fold(BigInt::zero(), |acc, i| acc + binom(i, l) * a_head[i]);
            BigRational::from_integer((s << (n - m + l)) - &size * binom(m, l))
        })
        .collect();
    let x = build_e(m)?.solve(&y)?;
    let mut grouped = Vec::with_capacity(m + 1);
    for (k, v) in x.into_iter().enumerate() {
        if !v.is_integer() {
            return Err(inconsistent(format!("grouped sum x_{k} = {v} is not an integer")));
        }
        let v = v.to_integer();
        if dk_complement_weight(profile, k).is_none() && !v.is_zero() {
            return Err(inconsistent(format!("x_{k} = {v} but D_{k} is empty")));
        }
        grouped.push(v);
    }

    let rest = n - m;
    let mut poly = vec![vec![BigInt::zero(); rest + 1]; m + 1];
    let mut add = |xs: &[BigInt], ys: &[BigInt], scale: &BigInt| {
        for (i, a) in xs.iter().enumerate() {
            for (j, b) in ys.iter().enumerate() {
                poly[i][j] += a * b * scale;
            }
        }
    };
    add(&signed_product(0, m), &signed_product(0, rest), &size);
    for (k, xk) in grouped.iter().enumerate() {
        if let Some(s) = dk_complement_weight(profile, k) {
            add(&signed_product(k, m - k), &signed_product(s, rest - s), xk);
        }
    }
    let denom = BigInt::one() << n;
    let mut counts = vec![vec![0u64; rest + 1]; m + 1];
    for (i, row) in poly.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let (q, r) = v.div_rem(&denom);
            if !r.is_zero() || q.is_negative() {
                return Err(inconsistent(format!(
                    "a_{i}{j} = {v}/2^{n} is not a nonnegative integer"
                )));
            }
            counts[i][j] = q
                .to_u64()
                .ok_or_else(|| inconsistent(format!("a_{i}{j} overflows")))?;
        }
    }
    let table = DistributionTable { m, rest, counts };
    for (i, &a) in a_head.iter().enumerate() {
        if table.counts[i][0] != a {
            return Err(inconsistent(format!(
                "recovered a_{i}0 = {} differs from the input {a}",
                table.counts[i][0]
            )));
        }
    }
    if BigInt::from(table.total()) != size {
        return Err(inconsistent(format!(
            "recovered table sums to {}, expected 2^{}",
            table.total(),
            n - t
        )));
    }
    Ok(Recovery {
        grouped_sums: grouped,
        table,
    })
}

/// Recovery from a code after checking it has the size and spectral support
/// of a 2-perfect code.
pub fn recover_distribution_for_code(code: &ExplicitCode, profile: &TwoValuedProfile) -> Result<Recovery> {
    let verdict = support_characterization(code, profile)?;
    if !verdict.holds {
        return Err(inconsistent(format!(
            "code is not 2-perfect: |C| = {}, A_0 should be {}, witness {:?}",
            code.size(),
            verdict.expected_a0,
            verdict.witness
        )));
    }
    let head = DistributionTable::from_code(code, profile)?.head();
    recover_distribution(&head, profile)
}

/// Coefficients of `sum_{c in C} x^{w_pi(c)}`, trailing zeros removed.
pub fn pi_weight_enumerator(code: &ExplicitCode, pi: &WeightVector) -> Result<Vec<u64>> {
    if code.len() != pi.len() {
        return Err(Error::LengthMismatch {
            left: code.len(),
            right: pi.len(),
        });
    }
    let top: u64 = pi.weights().iter().map(|&w| u64::from(w)).sum();
    let mut out = vec![0u64; top as usize + 1];
    for &c in code.raw() {
        out[weight_raw(c, pi.weights()) as usize] += 1;
    }
    Ok(trim(out))
}
