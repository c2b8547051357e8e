//! Casson–Gordon signatures of a lens space on every character of a given order.
//!
//! ```text
//! cargo run --example cg_table -- 9 4 9
//! ```

use dslice::casson_gordon::{cg_table, render_table, LensSpace};

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("arguments are p q d"))
        .collect();
    let (p, q, d) = match args[..] {
        [p, q, d] => (p, q, d),
        _ => (9, 4, 9),
    };
    let l = LensSpace::new(p, q).expect("0 < q < p, coprime");
    let rows = cg_table(&l, d).expect("d divides p");
    println!("{l}, characters of order dividing {d}:");
    print!("{}", render_table(&rows));
    // reversing orientation negates every value
    let reversed = cg_table(&l.reversed(), d).unwrap();
    assert!(rows
        .iter()
        .zip(&reversed)
        .all(|((_, a), (_, b))| a.value() == &-b.value().clone()));
}
