#![allow(dead_code)]

use piperfect::construct::{code_from_family, family_build};
use piperfect::hamming::{HammingFamily, Variant};
use piperfect::perfect::verify_exhaustive;
use piperfect::weightsearch::{ext_hamming_2perfect_pi, ext_hamming_3perfect_pi, hamming_2perfect_pi};
use piperfect::{BitMatrix, ExplicitCode, LinearCode, TwoValuedProfile, WeightVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example_code() -> ExplicitCode {
    "000000\n001111\n101100\n100011\n011010\n010101\n111001\n110110"
        .parse()
        .unwrap()
}

/// A 2-perfect code built from the family, with its profile.
pub struct FamilyCode {
    pub t: u32,
    pub m: usize,
    pub profile: TwoValuedProfile,
    pub linear: LinearCode,
    pub code: ExplicitCode,
    pub pi: WeightVector,
}

/// Every `(t, m)` with `t <= 4` that the builder accepts.
pub fn family_codes() -> Vec<FamilyCode> {
    let mut out = Vec::new();
    for t in 2..=4u32 {
        for m in 0..=5usize {
            let Ok(f) = family_build(t, m, None) else { continue };
            let (linear, pi) = code_from_family(&f);
            let code = linear.enumerate_codewords().unwrap();
            out.push(FamilyCode {
                t,
                m,
                profile: f.profile(),
                linear,
                code,
                pi,
            });
        }
    }
    out
}

/// Linear codes of length at most 14 with a weight vector and radius; a mix
/// of perfect and imperfect instances.
pub fn curated() -> Vec<(String, LinearCode, WeightVector, u64)> {
    let mut base: Vec<(String, LinearCode, WeightVector)> = Vec::new();
    for m in 2..=3 {
        let h = HammingFamily::build(m, Variant::Standard).unwrap();
        let n = h.len();
        base.push((format!("H{m} ones"), h.code().clone(), WeightVector::all_ones(n).unwrap()));
        base.push((format!("H{m} twos"), h.code().clone(), WeightVector::new(vec![2; n]).unwrap()));
        let e = HammingFamily::build(m, Variant::Extended).unwrap();
        base.push((format!("H~{m} ones"), e.code().clone(), WeightVector::all_ones(n + 1).unwrap()));
    }
    for m in 2..=3 {
        for x1 in 1..=3 {
            if let Ok(a) = hamming_2perfect_pi(m, x1, None) {
                base.push((format!("H{m} x1={x1}"), a.code().unwrap(), a.pi.clone()));
            }
        }
        for x1 in 1..=3 {
            if let Ok(a) = ext_hamming_3perfect_pi(m, x1) {
                base.push((format!("H~{m} 3p x1={x1}"), a.code().unwrap(), a.pi.clone()));
            }
        }
    }
    let a = ext_hamming_2perfect_pi(2).unwrap();
    base.push(("H~2 2p".into(), a.code().unwrap(), a.pi.clone()));
    for f in family_codes() {
        if f.profile.n() <= 14 {
            base.push((format!("family t={} m={}", f.t, f.m), f.linear, f.pi));
        }
    }
    for n in [3usize, 4, 5, 7] {
        // repetition code
        let rows = (1..n).map(|i| 1u64 | 1 << i).collect();
        let h = BitMatrix::from_rows(rows, n).unwrap();
        base.push((format!("rep{n}"), LinearCode::new(h), WeightVector::all_ones(n).unwrap()));
    }
    let h: BitMatrix = "100101\n010011\n001111\n".parse().unwrap();
    base.push((
        "example, ones".into(),
        LinearCode::new(h),
        WeightVector::all_ones(6).unwrap(),
    ));

    let mut out = Vec::new();
    for (name, code, pi) in base {
        for r in 1..=3 {
            out.push((format!("{name} r={r}"), code.clone(), pi.clone(), r));
        }
    }
    out
}

/// Exhaustive verdict, for use as an oracle.
pub fn is_perfect(code: &LinearCode, pi: &WeightVector, r: u64) -> bool {
    verify_exhaustive(&code.enumerate_codewords().unwrap(), pi, r)
        .unwrap()
        .is_perfect()
}
