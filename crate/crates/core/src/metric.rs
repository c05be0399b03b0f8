//! Weighted Hamming weight, distance and spheres.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::WeightVector;
use crate::word::BitWord;

/// Upper bound on the number of words `sphere_enumerate` will materialize.
pub const MAX_SPHERE_WORDS: u64 = 1 << 26;

#[inline]
pub(crate) fn weight_raw(bits: u64, weights: &[u32]) -> u64 {
    let mut acc = 0u64;
    let mut b = bits;
    while b != 0 {
        acc += u64::from(weights[b.trailing_zeros() as usize]);
        b &= b - 1;
    }
    acc
}

/// `w_pi(x)`: the sum of the position weights over the support of `x`.
pub fn pi_weight(x: &BitWord, pi: &WeightVector) -> Result<u64> {
    pi.check_word(x)?;
    Ok(weight_raw(x.bits(), pi.weights()))
}

/// `d_pi(x, y) = w_pi(x + y)`.
pub fn pi_distance(x: &BitWord, y: &BitWord, pi: &WeightVector) -> Result<u64> {
    pi_weight(&x.xor(y)?, pi)
}

/// All error patterns `e` with `w_pi(e) <= r`, ascending by mask.
///
/// Positions are visited in increasing weight, so a branch stops as soon as
/// the next position no longer fits in the remaining budget.
pub(crate) fn error_patterns(pi: &WeightVector, r: u64) -> Vec<u64> {
    let mut order: Vec<(u64, usize)> = pi
        .weights()
        .iter()
        .enumerate()
        .map(|(i, &w)| (u64::from(w), i))
        .filter(|&(w, _)| w <= r)
        .collect();
    order.sort_unstable();
    let mut out = Vec::new();
    descend(&order, 0, r, 0, &mut out);
    out.sort_unstable();
    out
}

fn descend(order: &[(u64, usize)], from: usize, budget: u64, mask: u64, out: &mut Vec<u64>) {
    out.push(mask);
    for idx in from..order.len() {
        let (w, pos) = order[idx];
        if w > budget {
            break;
        }
        descend(order, idx + 1, budget - w, mask | 1 << pos, out);
    }
}

/// `S_pi(x; r)` as a sorted list.
pub fn sphere_enumerate(x: &BitWord, r: u64, pi: &WeightVector) -> Result<Vec<BitWord>> {
    pi.check_word(x)?;
    let size = sphere_size_total(pi, r);
    if size > BigUint::from(MAX_SPHERE_WORDS) {
        return Err(Error::InstanceTooLarge(format!(
            "sphere of radius {r} has {size} words (cap {MAX_SPHERE_WORDS})"
        )));
    }
    let n = x.len();
    let mut words: Vec<u64> = error_patterns(pi, r)
        .into_iter()
        .map(|e| e ^ x.bits())
        .collect();
    words.sort_unstable();
    Ok(words.into_iter().map(|w| BitWord::from_raw(w, n)).collect())
}

/// One way of choosing `count` positions from the class of weight `weight`
/// for each class, within the radius.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Composition {
    /// `(class weight, positions taken)`, classes with zero taken omitted.
    pub parts: Vec<(u32, usize)>,
    /// Total pi-weight of the composition.
    pub pi_weight: u64,
    /// Product of binomials `C(x_i, k_i)`.
    #[serde(serialize_with = "ser_big")]
    pub count: BigUint,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SphereSizeBreakdown {
    pub radius: u64,
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
    pub compositions: Vec<Composition>,
}

impl SphereSizeBreakdown {
    pub fn total_u64(&self) -> Option<u64> {
        self.total.to_u64()
    }
}

pub(crate) fn ser_big<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.collect_str(v),
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Total `|S_pi(0; r)|` by dynamic programming over the weight classes.
pub fn sphere_size_total(pi: &WeightVector, r: u64) -> BigUint {
    // beyond the total weight the sphere is the whole space
    let r = r.min(weight_raw(pi.full_mask(), pi.weights())) as usize;
    let mut poly = vec![BigUint::zero(); r + 1];
    poly[0] = BigUint::one();
    for (w, size) in pi.class_sizes() {
        let w = w as usize;
        if w > r {
            continue;
        }
        let mut next = vec![BigUint::zero(); r + 1];
        for (d, coef) in poly.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let mut k = 0usize;
            while k <= size && d + k * w <= r {
                next[d + k * w] += coef * binomial(size as u64, k as u64);
                k += 1;
            }
        }
        poly = next;
    }
    poly.into_iter().sum()
}

/// `|S_pi(0; r)|` with the per-composition terms listed.
pub fn sphere_size(pi: &WeightVector, r: u64) -> SphereSizeBreakdown {
    let classes: Vec<(u32, usize)> = pi
        .class_sizes()
        .into_iter()
        .filter(|&(w, _)| u64::from(w) <= r)
        .collect();
    let mut compositions = Vec::new();
    let mut parts = Vec::new();
    compose(&classes, 0, r, &mut parts, &mut compositions);
    compositions.sort_by(|a, b| a.pi_weight.cmp(&b.pi_weight).then(a.parts.cmp(&b.parts)));
    SphereSizeBreakdown {
        radius: r,
        total: sphere_size_total(pi, r),
        compositions,
    }
}

fn compose(
    classes: &[(u32, usize)],
    idx: usize,
    budget: u64,
    parts: &mut Vec<(u32, usize)>,
    out: &mut Vec<Composition>,
) {
    if idx == classes.len() {
        let count = parts
            .iter()
            .zip(classes)
            .fold(BigUint::one(), |acc, (&(_, k), &(_, size))| {
                acc * binomial(size as u64, k as u64)
            });
        let pi_weight = parts.iter().map(|&(w, k)| u64::from(w) * k as u64).sum();
        out.push(Composition {
            parts: parts.iter().copied().filter(|&(_, k)| k > 0).collect(),
            pi_weight,
            count,
        });
        return;
    }
    let (w, size) = classes[idx];
    let w64 = u64::from(w);
    let mut k = 0usize;
    while k <= size && w64 * k as u64 <= budget {
        parts.push((w, k));
        compose(classes, idx + 1, budget - w64 * k as u64, parts, out);
        parts.pop();
        k += 1;
    }
}
