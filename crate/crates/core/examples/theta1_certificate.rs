//! Certificate search for θ₁ on `(Z_9, 0, 0)`: no relation matrix works for
//! `n₁ + n₂ = 1`, and an explicit one exists for `n₁ + n₂ = 2`.

use dslice::theta::{theta1_lower, theta1_search, SearchCaps};
use dslice::FiniteAbelianGroup;

fn main() {
    let g = FiniteAbelianGroup::cyclic(9);
    let zero = FiniteAbelianGroup::trivial();
    println!("counting bound: {}", theta1_lower(&g, &zero, &zero));
    let r = theta1_search(&g, &zero, &zero, &SearchCaps::default()).unwrap();
    println!(
        "refuted totals: {:?}, matrices examined: {}",
        r.refuted, r.examined
    );
    match r.certificate() {
        Some(c) => {
            println!("certificate with n1 = {}, n2 = {}", c.n1, c.n2);
            println!("  A1 = {}", c.a1);
            println!("  A2 = {}", c.a2);
            let [h1, h2, h] = &c.transcript;
            println!("  quotients: {h1}, {h2}, {h}; verifies: {}", c.verify());
        }
        None => println!("no certificate within the caps"),
    }
    println!("θ₁ = {:?}", r.exact());
}
