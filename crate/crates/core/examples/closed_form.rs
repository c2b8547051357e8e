//! The closed-form lower bound on θ for `#ᴺ 2b(9/4)` grows linearly in `N`.

use dslice::theta::{main_theorem_bound, main_theorem_estimate};

fn main() {
    for n in [1u64, 10, 55, 110, 220, 1100, 11000] {
        let b = main_theorem_bound(n);
        let l = (0..=n).find(|&l| main_theorem_estimate(n, l) == b).unwrap();
        println!("N = {n:>5}: θ ≥ {b} (attained at l = {l})");
    }
}
