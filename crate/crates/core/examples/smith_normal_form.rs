//! Smith normal form with its unimodular transforms, and the cokernel it reads off.

use dslice::abelian::{cokernel_of_presentation, smith_normal_form};
use dslice::IntMatrix;

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    let f = smith_normal_form(&m);
    println!("M = {m}");
    println!("D = {}", f.diagonal);
    println!("U = {}", f.left);
    println!("V = {}", f.right);
    println!("invariant factors: {:?}", f.invariant_factors());
    let quotient = cokernel_of_presentation(&m, 3).finite().expect("full rank");
    println!("Z^3 / rows(M) = {quotient}");
}
