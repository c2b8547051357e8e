use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order, by trial division.
pub fn prime_divisors(n: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let mut d = 2u64;
    loop {
        if let Some(r) = rest.to_u64() {
            if d.saturating_mul(d) > r {
                if r > 1 {
                    out.push(r);
                }
                return out;
            }
        }
        let bd = BigUint::from(d);
        if rest.is_multiple_of(&bd) {
            out.push(d);
            while rest.is_multiple_of(&bd) {
                rest /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

/// Exponent of `p` in `n` (`n` nonzero).
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    let bp = BigUint::from(p);
    let mut rest = n.clone();
    let mut k = 0;
    while !rest.is_zero() && rest.is_multiple_of(&bp) {
        rest /= &bp;
        k += 1;
    }
    k
}

pub fn pow(p: u64, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..k {
        acc *= p;
    }
    acc
}
