//! Character sums of codes under the two-valued weight vector.
//!
//! For a code `C` the coefficient at frequency `d` is
//! `A_d = sum_{c in C} (-1)^{c.d}`. For a 2-perfect code only `d = 0` and
//! the classes
//! `D_k = { d : |d & M| = k, |d| = 2^{t-1} - k(m-k) }` carry nonzero
//! coefficients, where `M` marks the weight-1 positions. All arithmetic here
//! is exact.

mod recover;

pub use recover::{
    build_e, pi_weight_enumerator, recover_distribution, recover_distribution_for_code,
    DistributionTable, EMatrix, Recovery,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::code::ExplicitCode;
use crate::error::{Error, Result};
use crate::metric::{error_patterns, MAX_SPHERE_WORDS};
use crate::weights::TwoValuedProfile;
use crate::word::{BitWord, MAX_LEN};

/// Largest length for dense tables over F_2^n.
pub const MAX_SPECTRUM_N: usize = 20;

fn check_dense(n: usize) -> Result<()> {
    if n > MAX_SPECTRUM_N {
        return Err(Error::InstanceTooLarge(format!(
            "dense table over F_2^{n} exceeds 2^{MAX_SPECTRUM_N} entries"
        )));
    }
    Ok(())
}

/// In-place Walsh-Hadamard transform: `out[d] = sum_v in[v] (-1)^{v.d}`.
pub fn walsh_hadamard(values: &mut [i64]) {
    let len = values.len();
    assert!(len.is_power_of_two(), "transform length must be a power of two");
    let mut half = 1;
    while half < len {
        for block in values.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}

/// The coefficients `A_d` for every `d` in F_2^n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourierTable {
    n: usize,
    coeffs: Vec<i64>,
}

impl FourierTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, d: &BitWord) -> i64 {
        self.coeffs[d.bits() as usize]
    }

    pub fn a0(&self) -> i64 {
        self.coeffs[0]
    }

    /// `sum_d A_d^2`.
    pub fn energy(&self) -> u128 {
        self.coeffs.iter().map(|&a| (a as i128 * a as i128) as u128).sum()
    }

    /// Coefficients summed over each class `D_k`.
    pub fn grouped(&self, profile: &TwoValuedProfile) -> Result<GroupedSpectrum> {
        if profile.n() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: profile.n(),
            });
        }
        let mut classes: Vec<ClassSummary> = (0..=profile.m())
            .map(|k| ClassSummary {
                k,
                complement_weight: dk_complement_weight(profile, k),
                members: 0,
                nonzero: 0,
                sum: 0,
            })
            .collect();
        let mut outside_nonzero = 0usize;
        for (d, &a) in self.coeffs.iter().enumerate().skip(1) {
            match dk_class_of(profile, d as u64) {
                Some(k) => {
                    let c = &mut classes[k];
                    c.members += 1;
                    c.sum += a;
                    c.nonzero += usize::from(a != 0);
                }
                None => outside_nonzero += usize::from(a != 0),
            }
        }
        Ok(GroupedSpectrum {
            a0: self.a0(),
            classes,
            outside_nonzero,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassSummary {
    pub k: usize,
    /// `|d & !M|` shared by the members, when the class is nonempty.
    pub complement_weight: Option<usize>,
    pub members: usize,
    pub nonzero: usize,
    pub sum: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GroupedSpectrum {
    pub a0: i64,
    pub classes: Vec<ClassSummary>,
    /// Nonzero coefficients at frequencies outside `{0}` and every `D_k`.
    pub outside_nonzero: usize,
}

/// `A_d` for all `d`, by a fast transform of the code's indicator.
pub fn fourier(code: &ExplicitCode) -> Result<FourierTable> {
    let n = code.len();
    check_dense(n)?;
    let mut coeffs = vec![0i64; 1 << n];
    for &c in code.raw() {
        coeffs[c as usize] = 1;
    }
    walsh_hadamard(&mut coeffs);
    Ok(FourierTable { n, coeffs })
}

/// `|d & !M|` for members of `D_k`: `2^{t-1} - k(m-k+1)`, if that lies in
/// `[0, n-m]`.
pub fn dk_complement_weight(profile: &TwoValuedProfile, k: usize) -> Option<usize> {
    let m = profile.m() as i64;
    let k = k as i64;
    if k > m {
        return None;
    }
    let s = (1i64 << (profile.t() - 1)) - k * (m - k + 1);
    (0..=(profile.n() as i64 - m)).contains(&s).then_some(s as usize)
}

/// The `k` with `d` in `D_k`, if any.
pub fn dk_class_of(profile: &TwoValuedProfile, d: u64) -> Option<usize> {
    let k = (d & profile.m_mask()).count_ones() as usize;
    let rest = (d & profile.complement_mask()).count_ones() as usize;
    (dk_complement_weight(profile, k) == Some(rest)).then_some(k)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DkClass {
    pub k: usize,
    pub complement_weight: Option<usize>,
    pub members: Vec<BitWord>,
}

fn subsets_of_size(positions: &[usize], size: usize, out: &mut Vec<u64>) {
    fn walk(positions: &[usize], size: usize, from: usize, acc: u64, out: &mut Vec<u64>) {
        if size == 0 {
            out.push(acc);
            return;
        }
        for i in from..=positions.len() - size {
            walk(positions, size - 1, i + 1, acc | 1 << positions[i], out);
        }
    }
    if size <= positions.len() {
        walk(positions, size, 0, 0, out);
    }
}

/// Every member of `D_k`, ascending. Empty when the class is.
pub fn dk_members(profile: &TwoValuedProfile, k: usize) -> Result<DkClass> {
    if k > profile.m() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds m = {}",
            profile.m()
        )));
    }
    let n = profile.n();
    let complement_weight = dk_complement_weight(profile, k);
    let Some(s) = complement_weight else {
        return Ok(DkClass {
            k,
            complement_weight,
            members: Vec::new(),
        });
    };
    let m = profile.m();
    let count = crate::metric::binomial(m as u64, k as u64)
        * crate::metric::binomial((n - m) as u64, s as u64);
    if count > num_bigint::BigUint::from(MAX_SPHERE_WORDS) {
        return Err(Error::InstanceTooLarge(format!("D_{k} has {count} members")));
    }
    let head: Vec<usize> = (0..m).collect();
    let tail: Vec<usize> = (m..n).collect();
    let (mut hs, mut ts) = (Vec::new(), Vec::new());
    subsets_of_size(&head, k, &mut hs);
    subsets_of_size(&tail, s, &mut ts);
    let mut members: Vec<u64> = hs
        .iter()
        .flat_map(|&h| ts.iter().map(move |&t| h | t))
        .collect();
    members.sort_unstable();
    Ok(DkClass {
        k,
        complement_weight,
        members: members.into_iter().map(|d| BitWord::from_raw(d, n)).collect(),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SpectralWitness {
    pub d: BitWord,
    pub coefficient: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SupportVerdict {
    pub holds: bool,
    pub a0: i64,
    pub expected_a0: i64,
    /// First frequency violating the characterization; `d = 0` when only the
    /// value of `A_0` is wrong.
    pub witness: Option<SpectralWitness>,
}

/// Whether the spectrum of `code` has the shape of a 2-perfect code:
/// `A_0 = 2^{n-t}` and `A_d = 0` outside `{0}` and the classes `D_k`.
pub fn support_characterization(code: &ExplicitCode, profile: &TwoValuedProfile) -> Result<SupportVerdict> {
    if code.len() != profile.n() {
        return Err(Error::LengthMismatch {
            left: code.len(),
            right: profile.n(),
        });
    }
    let table = fourier(code)?;
    let n = profile.n();
    let expected_a0 = 1i64 << (n - profile.t() as usize).min(62);
    let outside = table
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .find(|&(d, &a)| a != 0 && dk_class_of(profile, d as u64).is_none());
    let witness = match outside {
        Some((d, &a)) => Some(SpectralWitness {
            d: BitWord::from_raw(d as u64, n),
            coefficient: a,
        }),
        None if table.a0() != expected_a0 => Some(SpectralWitness {
            d: BitWord::from_raw(0, n),
            coefficient: table.a0(),
        }),
        None => None,
    };
    Ok(SupportVerdict {
        holds: witness.is_none(),
        a0: table.a0(),
        expected_a0,
        witness,
    })
}

/// `sum_{y in S_pi(0;2)} (-1)^{d.y} = 1 + n - 2|d| + C(m,2) - 2k(m-k)` with
/// `k = |d & M|`; the sum around a center `x` is this times `(-1)^{d.x}`.
pub fn sphere_character(profile: &TwoValuedProfile, d: u64) -> i64 {
    let n = profile.n() as i64;
    let m = profile.m() as i64;
    let k = i64::from((d & profile.m_mask()).count_ones());
    let w = i64::from(d.count_ones());
    1 + n - 2 * w + m * (m - 1) / 2 - 2 * k * (m - k)
}

/// An exact rational-valued function on F_2^n, stored densely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunctionOnCube {
    n: usize,
    values: Vec<BigRational>,
}

impl RationalFunctionOnCube {
    pub fn new(n: usize, values: Vec<BigRational>) -> Result<Self> {
        check_dense(n)?;
        if n == 0 || n > MAX_LEN || values.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "{} values for F_2^{n}",
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn indicator(code: &ExplicitCode) -> Result<Self> {
        let n = code.len();
        check_dense(n)?;
        let mut values = vec![BigRational::zero(); 1 << n];
        for &c in code.raw() {
            values[c as usize] = BigRational::one();
        }
        Self::new(n, values)
    }

    pub fn constant(n: usize, value: BigRational) -> Result<Self> {
        check_dense(n)?;
        Self::new(n, vec![value; 1 << n])
    }

    /// `f(v) = 2^{-n} sum_d A_d (-1)^{d.v}` for the listed coefficients.
    pub fn from_spectrum(n: usize, coeffs: &[(u64, BigRational)]) -> Result<Self> {
        check_dense(n)?;
        let scale = BigRational::from_integer(BigInt::one() << n);
        let values = (0..1u64 << n)
            .map(|v| {
                let s = coeffs.iter().fold(BigRational::zero(), |acc, (d, a)| {
                    if (d & v).count_ones() % 2 == 0 {
                        acc + a
                    } else {
                        acc - a
                    }
                });
                s / &scale
            })
            .collect();
        Self::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, v: &BitWord) -> &BigRational {
        &self.values[v.bits() as usize]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedVerdict {
    pub holds: bool,
    /// A center whose radius-2 sphere sum differs from 1, with that sum.
    pub witness: Option<(BitWord, BigRational)>,
}

/// Whether every radius-2 sphere sum of `f` equals 1.
pub fn weighted_perfect_check(
    f: &RationalFunctionOnCube,
    profile: &TwoValuedProfile,
) -> Result<WeightedVerdict> {
    if f.n() != profile.n() {
        return Err(Error::LengthMismatch {
            left: f.n(),
            right: profile.n(),
        });
    }
    let patterns = error_patterns(&profile.weights(), 2);
    let one = BigRational::one();
    for x in 0..1u64 << f.n() {
        let sum = patterns
            .iter()
            .fold(BigRational::zero(), |acc, &e| acc + &f.values[(x ^ e) as usize]);
        if sum != one {
            return Ok(WeightedVerdict {
                holds: false,
                witness: Some((BitWord::from_raw(x, f.n()), sum)),
            });
        }
    }
    Ok(WeightedVerdict {
        holds: true,
        witness: None,
    })
}

/// The vector `u` with `u + C = C` for every 2-perfect code of this
/// profile: all ones for odd `m`, the weight-2 positions for even `m`.
pub fn translation_vector(profile: &TwoValuedProfile) -> BitWord {
    let bits = if profile.m() % 2 == 1 {
        profile.m_mask() | profile.complement_mask()
    } else {
        profile.complement_mask()
    };
    BitWord::from_raw(bits, profile.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn example_code() -> ExplicitCode {
        "000000\n001111\n101100\n100011\n011010\n010101\n111001\n110110"
            .parse()
            .unwrap()
    }

    fn profile() -> TwoValuedProfile {
        TwoValuedProfile::new(6, 2).unwrap()
    }

    fn naive_fourier(code: &ExplicitCode) -> Vec<i64> {
        (0..1u64 << code.len())
            .map(|d| {
                code.raw()
                    .iter()
                    .map(|&c| if (c & d).count_ones() % 2 == 0 { 1 } else { -1 })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn transform_matches_double_loop() {
        let code = example_code();
        assert_eq!(fourier(&code).unwrap().coeffs(), naive_fourier(&code).as_slice());
        let odd: ExplicitCode = "00101\n11100\n01011\n10000\n11111".parse().unwrap();
        assert_eq!(fourier(&odd).unwrap().coeffs(), naive_fourier(&odd).as_slice());
    }

    #[test]
    fn fourier_examples() {
        let table = fourier(&example_code()).unwrap();
        assert_eq!(table.a0(), 8);
        assert_eq!(table.get(&"001111".parse().unwrap()), 8);
        let full = ExplicitCode::full_space(5).unwrap();
        let table = fourier(&full).unwrap();
        assert_eq!(table.a0(), 32);
        assert!(table.coeffs()[1..].iter().all(|&a| a == 0));
    }

    #[test]
    fn dk_members_of_small_profile() {
        let p = profile();
        let d0 = dk_members(&p, 0).unwrap();
        assert_eq!(d0.members, vec!["001111".parse::<BitWord>().unwrap()]);
        assert_eq!(dk_members(&p, 1).unwrap().members.len(), 12);
        let d2 = dk_members(&p, 2).unwrap();
        assert_eq!(d2.members.len(), 6);
        assert!(d2.members.iter().all(|d| d.weight() == 4 && d.bits() & 0b11 == 0b11));
        assert!(dk_members(&p, 3).is_err());
    }

    #[test]
    fn dk_class_weights_are_consistent() {
        for (t, m) in [(3u32, 1usize), (3, 2), (3, 3), (4, 2), (4, 4)] {
            let p = TwoValuedProfile::from_t_m(t, m).unwrap();
            for k in 0..=m {
                for d in dk_members(&p, k).unwrap().members {
                    let total = (1i64 << (t - 1)) - (k * (m - k)) as i64;
                    assert_eq!(d.weight() as i64, total);
                    assert_eq!(dk_class_of(&p, d.bits()), Some(k));
                    assert_eq!(sphere_character(&p, d.bits()), 0);
                }
            }
        }
    }

    #[test]
    fn support_characterization_examples() {
        let p = profile();
        assert!(support_characterization(&example_code(), &p).unwrap().holds);
        let broken = example_code().without(&"110110".parse().unwrap());
        let v = support_characterization(&broken, &p).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert!(w.coefficient != 0 && dk_class_of(&p, w.d.bits()).is_none());
        let zero: ExplicitCode = "000000".parse().unwrap();
        assert!(!support_characterization(&zero, &p).unwrap().holds);
    }

    #[test]
    fn weighted_perfect_examples() {
        let p = profile();
        let f = RationalFunctionOnCube::indicator(&example_code()).unwrap();
        assert!(weighted_perfect_check(&f, &p).unwrap().holds);
        let c = RationalFunctionOnCube::constant(6, BigRational::new(BigInt::one(), BigInt::from(8))).unwrap();
        assert!(weighted_perfect_check(&c, &p).unwrap().holds);
        let zero: ExplicitCode = "000000".parse().unwrap();
        let f = RationalFunctionOnCube::indicator(&zero).unwrap();
        let v = weighted_perfect_check(&f, &p).unwrap();
        assert!(!v.holds);
        // the sphere around 0 holds 0 itself, the first failing center is
        // the first one outside that sphere
        assert_eq!(v.witness.unwrap().1, BigRational::zero());
    }

    #[test]
    fn translation_examples() {
        let p = profile();
        let u = translation_vector(&p);
        assert_eq!(u.to_string(), "001111");
        let code = example_code();
        assert_eq!(code.translate(&u).unwrap(), code);
        let odd = TwoValuedProfile::from_t_m(3, 3).unwrap();
        assert_eq!(translation_vector(&odd).to_string(), "1111");
        assert!(u.xor(&u).unwrap().is_zero());
    }
}
