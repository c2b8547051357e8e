//! Shared oracles and generators for the integration tests. Everything here
//! is computed independently of the library's own algorithms.
#![allow(dead_code)]

pub mod schema;

use std::f64::consts::PI;

use dslice::theta::SurjectionMatrix;
use dslice::FiniteAbelianGroup;
use rand::Rng;

/// Floating-point `σ(L(p,q), χ_a) = −(2/p) Σ_k cot(πkq/p) cot(πk/p) sin²(πka/p)`.
pub fn sigma_f64(p: u64, q: u64, a: u64) -> f64 {
    let pf = p as f64;
    let sum: f64 = (1..p)
        .map(|k| {
            let k = k as f64;
            let cot = |x: f64| x.cos() / x.sin();
            cot(PI * k * q as f64 / pf) * cot(PI * k / pf) * (PI * k * a as f64 / pf).sin().powi(2)
        })
        .sum();
    -2.0 / pf * sum
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A uniformly random `m × n` matrix over `Z_9` whose reduction mod 3 has rank `m`.
pub fn random_surjection<R: Rng>(rng: &mut R, n: usize, m: usize) -> SurjectionMatrix {
    loop {
        let rows: Vec<Vec<u64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(0..9)).collect())
            .collect();
        if let Ok(s) = SurjectionMatrix::new(rows, n) {
            return s;
        }
    }
}

/// Orders of a random finite abelian group built from small prime powers.
pub fn random_orders<R: Rng>(rng: &mut R, max_factors: usize) -> Vec<u64> {
    let count = rng.gen_range(0..=max_factors);
    (0..count)
        .map(|_| {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            p.pow(rng.gen_range(1..=3))
        })
        .collect()
}

/// Number of invariant factors divisible by `q`.
pub fn s_q(g: &FiniteAbelianGroup, q: u64) -> usize {
    let q = num_bigint::BigUint::from(q);
    g.factors()
        .iter()
        .filter(|d| (*d % &q) == 0u32.into())
        .count()
}

/// Every prime power dividing the exponent of `g`.
pub fn prime_powers_up_to_exponent(g: &FiniteAbelianGroup) -> Vec<u64> {
    let Some(e) = g
        .factors()
        .last()
        .map(|d| u64::try_from(d).expect("small exponent"))
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p in 2..=e {
        if (2..p).any(|d| p % d == 0) || e % p != 0 {
            continue;
        }
        let mut q = p;
        while e % q == 0 {
            out.push(q);
            q *= p;
        }
    }
    out
}
