//! Choosing a character of `#ₙ L(9,4)` through a surjection onto `Z_9^m`
//! whose signature is at least `10m/9`.

use dslice::theta::{lemma_a2_reduce, prop_a_character, SurjectionMatrix};

fn main() {
    let examples = [
        (vec![vec![3, 1, 5]], 3),
        (vec![vec![1, 4, 0, 2], vec![0, 3, 1, 7]], 4),
        (vec![vec![2, 0], vec![0, 2]], 2),
    ];
    for (rows, n) in examples {
        let s = SurjectionMatrix::new(rows, n).unwrap();
        let red = lemma_a2_reduce(&s).unwrap();
        let choice = prop_a_character(&s).unwrap();
        println!("s = {s}");
        println!(
            "  reduced {} with U = {:?}, columns {:?}",
            red.reduced, red.u, red.perm
        );
        println!(
            "  j = {:?} (original basis {:?}), σ = {} ≥ {}/9",
            choice.j,
            choice.j_original,
            choice.sigma_achieved,
            10 * s.m()
        );
    }
}
