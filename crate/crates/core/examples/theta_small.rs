//! θ lower bounds for `2b(9/4)` and `2b(9/4) # 2b(9/4)` by full enumeration
//! of candidate pairs.

use dslice::knots::KnotSpec;
use dslice::theta::{theta_lower, SearchCaps};
use dslice::TwoBridgeKnot;

fn main() {
    let j = TwoBridgeKnot::new(9, 4).unwrap();
    for n in 1..=2 {
        let k = KnotSpec::two_bridge_power(j, n);
        let r = theta_lower(&k, &SearchCaps::default()).unwrap();
        println!(
            "{k}: θ ≥ {} (ceiling {}), {}",
            r.value(),
            r.ceiling,
            r.status.as_str()
        );
        for pv in r.pairs.iter().filter(|pv| pv.value.is_some()) {
            let cg = pv.cg.as_ref().map_or("-".to_string(), ToString::to_string);
            println!("  ({}, {}): θ₁ = {}, CG = {cg}", pv.g1, pv.g2, pv.theta1);
        }
    }
}
