//! Smith normal form over the integers.
//!
//! `smith_normal_form` tracks the unimodular transforms so that `D = U·M·V`.
//! `invariant_diagonal` runs the same elimination without them and is what the
//! cokernel code uses in hot loops.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros, of length `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    eliminate(&mut d, Some((&mut u, &mut v)));
    SmithForm {
        diagonal: d,
        left: u,
        right: v,
    }
}

/// Diagonal of the Smith normal form (length `min(rows, cols)`).
pub fn invariant_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    eliminate(&mut d, None);
    (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .collect()
}

struct Ops<'a> {
    transforms: Option<(&'a mut IntMatrix, &'a mut IntMatrix)>,
}

impl Ops<'_> {
    fn swap_rows(&mut self, a: &mut IntMatrix, i: usize, j: usize) {
        a.swap_rows(i, j);
        if let Some((u, _)) = self.transforms.as_mut() {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, a: &mut IntMatrix, i: usize, j: usize) {
        a.swap_cols(i, j);
        if let Some((_, v)) = self.transforms.as_mut() {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, a: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
        a.add_row_multiple(dst, src, k);
        if let Some((u, _)) = self.transforms.as_mut() {
            u.add_row_multiple(dst, src, k);
        }
    }

    fn add_col(&mut self, a: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
        a.add_col_multiple(dst, src, k);
        if let Some((_, v)) = self.transforms.as_mut() {
            v.add_col_multiple(dst, src, k);
        }
    }

    fn negate_row(&mut self, a: &mut IntMatrix, i: usize) {
        a.negate_row(i);
        if let Some((u, _)) = self.transforms.as_mut() {
            u.negate_row(i);
        }
    }
}

fn eliminate(a: &mut IntMatrix, transforms: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let mut ops = Ops { transforms };
    let (rows, cols) = (a.rows(), a.cols());
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = smallest_nonzero(a, t, t) else {
            break;
        };
        ops.swap_rows(a, t, pi);
        ops.swap_cols(a, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                ops.add_row(a, i, t, &-q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                ops.add_col(a, j, t, &-q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it into place
                let (pi, pj) = smallest_in_cross(a, t);
                ops.swap_rows(a, t, pi);
                ops.swap_cols(a, t, pj);
                continue;
            }
            // row and column are clear; enforce divisibility of the remaining block
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => ops.add_row(a, t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            ops.negate_row(a, t);
        }
    }
}

fn smallest_nonzero(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..a.rows() {
        for j in c0..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &a[(i, j)];
        if !x.is_zero() && x.abs() < a[*best].abs() {
            *best = (i, j);
        }
    };
    for i in t + 1..a.rows() {
        consider(i, t, &mut best);
    }
    for j in t + 1..a.cols() {
        consider(t, j, &mut best);
    }
    best
}
