//! Superslice genus bounds for sums of `2b(9/4)` and for the trefoil.

use dslice::knots::{genus_bound_report, knot_invariants, KnotSpec, KnotSummand};
use dslice::{IntMatrix, SeifertMatrix, TwoBridgeKnot};

fn main() {
    let j = TwoBridgeKnot::new(9, 4).unwrap();
    for k in 1..=6 {
        let spec = KnotSpec::two_bridge_power(j, k);
        let g = genus_bound_report(&spec);
        println!(
            "#{k} 2b(9/4): {} ≤ g^s, g^s_top ≤ {}",
            g.superslice_lower, g.superslice_top_upper
        );
    }
    let v = IntMatrix::from_rows(&[vec![-1, 1], vec![0, -1]]).unwrap();
    let trefoil = KnotSpec {
        summands: vec![KnotSummand::Seifert(SeifertMatrix::new(v).unwrap())],
        ribbon: false,
    };
    let inv = knot_invariants(&trefoil);
    let g = genus_bound_report(&trefoil);
    println!(
        "trefoil: σ = {}, det = {}, deg Δ = {}, g^s_top = {:?}",
        inv.signature,
        inv.determinant,
        inv.alexander_degree(),
        g.superslice_top_exact
    );
}
