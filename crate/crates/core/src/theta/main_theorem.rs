//! Closed-form lower bound for θ of `K_N = #ᴺ 2b(9/4)`.
//!
//! Any candidate pair has `G₁ ⊕ G₂ ≅ Z_9ˡ ⊕ Z_3^*` for some `l ≤ N`. Writing
//! `l' = ⌈l/2⌉`, one side carries at least `l'` copies of `Z_9`, and:
//!
//! - θ₁ ≥ ⌈(N − l)/2⌉, since `N − l` further summands of order 9 are needed;
//! - θ₃ ≥ ½((10/9)·l' − ξ₃(G₁)) with `ξ₃(G₁) ≤ l' + N − l`, by the
//!   character selection in [`super::selection`] and `σ(K_N) = 0`.
//!
//! The bound is the minimum over `l` of the larger estimate.

use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The estimate scaled by 18, so every quantity is an integer.
fn scaled_estimate(n: i64, l: i64) -> i64 {
    let counting = 18 * ((n - l + 1) / 2);
    let lp = (l + 1) / 2;
    // 18 · ½(10l'/9 − (l' + N − l)) = 10l' − 9(l' + N − l)
    let cg = (10 * lp - 9 * (lp + n - l)).max(0);
    counting.max(cg)
}

/// `max(⌈(N−l)/2⌉, max(0, ½((10/9)l' − (l' + N − l))))` for `l' = ⌈l/2⌉`.
pub fn main_theorem_estimate(n: u64, l: u64) -> BigRational {
    assert!(l <= n, "l = {l} exceeds N = {n}");
    rat(scaled_estimate(n as i64, l as i64), 18)
}

/// `min_l` of [`main_theorem_estimate`]; at least `n` when `N = 110n`.
pub fn main_theorem_bound(n: u64) -> BigRational {
    let n = i64::try_from(n).expect("N fits in i64");
    let best = (0..=n)
        .map(|l| scaled_estimate(n, l))
        .min()
        .expect("l = 0 is always available");
    rat(best, 18)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(main_theorem_bound(0), rat(0, 1));
        assert_eq!(main_theorem_bound(1), rat(1, 18));
        assert_eq!(main_theorem_bound(110), rat(2, 1));
        assert!(main_theorem_bound(220) >= rat(2, 1));
    }

    #[test]
    fn estimates_at_the_crossover() {
        assert_eq!(main_theorem_estimate(110, 108), rat(2, 1));
        assert_eq!(main_theorem_estimate(110, 110), rat(55, 18));
        assert_eq!(main_theorem_estimate(1, 0), rat(1, 1));
    }

    #[test]
    fn linear_growth() {
        for k in 1..=100u64 {
            assert!(main_theorem_bound(110 * k) >= rat(k as i64, 1), "n = {k}");
        }
    }
}
