//! Character selection for surjections `Z_9ⁿ → Z_9ᵐ` out of `H₁(#ₙ L(9,4))`.
//!
//! Every such surjection can be brought to the block form `[I_m | A]` by an
//! invertible change of basis on `Z_9ᵐ` and a reordering of the summands of
//! `Z_9ⁿ`. In that form one of `j = (2,…,2)` or `j = (6,…,6)` gives
//! `σ(#ₙ L(9,4), j∘s) ≥ (10/9)·m`: the table of `L(9,4)` takes the value
//! `11/9` at 2, the value 1 at 3 and 6, and is never below `−1/9`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ThetaError;
use crate::abelian::{inverse_mod, rank_mod_p};
use crate::casson_gordon::{cg_sigma, CGValue, Character, LensSpace, LensSpaceSum, LensTable};

const MODULUS: u64 = 9;

/// A surjection `s: Z_9ⁿ → Z_9ᵐ` as an `m × n` matrix of residues mod 9.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurjectionMatrix {
    m: usize,
    n: usize,
    entries: Vec<Vec<u64>>,
}

impl SurjectionMatrix {
    /// Entries are reduced mod 9. Fails unless the reduction mod 3 has rank `m`.
    pub fn new(rows: Vec<Vec<u64>>, n: usize) -> Result<Self, ThetaError> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(ThetaError::InvalidMatrix(format!(
                "rows must have length {n}"
            )));
        }
        let entries: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % MODULUS).collect())
            .collect();
        let m = entries.len();
        let mut mod3: Vec<Vec<u64>> = entries
            .iter()
            .map(|r| r.iter().map(|x| x % 3).collect())
            .collect();
        if rank_mod_p(&mut mod3, 3) != m {
            return Err(ThetaError::NotSurjective { m });
        }
        Ok(SurjectionMatrix { m, n, entries })
    }

    pub fn identity(m: usize) -> Self {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| u64::from(i == j)).collect())
            .collect();
        Self::new(rows, m).expect("identity is surjective")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    /// `j ∘ s` as a row vector mod 9.
    pub fn compose_left(&self, j: &[u64]) -> Vec<u64> {
        (0..self.n)
            .map(|c| (0..self.m).map(|r| j[r] * self.entries[r][c]).sum::<u64>() % MODULUS)
            .collect()
    }

    fn has_identity_block(&self) -> bool {
        (0..self.m).all(|i| (0..self.m).all(|j| self.entries[i][j] == u64::from(i == j)))
    }
}

impl fmt::Display for SurjectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "]")
    }
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum::<u64>() % MODULUS)
                .collect()
        })
        .collect()
}

/// Invertible over `Z_9` exactly when invertible over `Z_3`.
fn invertible_mod9(a: &[Vec<u64>]) -> bool {
    let mut mod3: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|x| x % 3).collect())
        .collect();
    rank_mod_p(&mut mod3, 3) == a.len()
}

/// `reduced = U · s · P` with `U` invertible over `Z_9` and `P` a column
/// permutation, `reduced` having `I_m` in its first `m` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaA2Reduction {
    pub reduced: SurjectionMatrix,
    /// `m × m`, entries mod 9.
    pub u: Vec<Vec<u64>>,
    /// Column `k` of `reduced` comes from column `perm[k]` of `s`.
    pub perm: Vec<usize>,
}

impl LemmaA2Reduction {
    /// Recomputes `U · s · P` and checks it against `reduced`, the identity
    /// block, and invertibility of `U`.
    pub fn verify(&self, s: &SurjectionMatrix) -> bool {
        let us = mat_mul_mod(&self.u, &s.entries);
        let usp: Vec<Vec<u64>> = us
            .iter()
            .map(|row| self.perm.iter().map(|&c| row[c]).collect())
            .collect();
        let mut sorted = self.perm.clone();
        sorted.sort_unstable();
        usp == self.reduced.entries
            && sorted == (0..s.n).collect::<Vec<_>>()
            && self.reduced.has_identity_block()
            && invertible_mod9(&self.u)
    }
}

/// Row-reduces `s` to `[I_m | A]`: in each row pick the first column at or
/// after the diagonal whose entry is prime to 3, swap it onto the diagonal,
/// scale it to 1 and clear the rest of its column.
pub fn lemma_a2_reduce(s: &SurjectionMatrix) -> Result<LemmaA2Reduction, ThetaError> {
    let (m, n) = (s.m, s.n);
    let mut a = s.entries.clone();
    let mut u: Vec<Vec<u64>> = (0..m)
        .map(|i| (0..m).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    for r in 0..m {
        let c = (r..n)
            .find(|&c| !a[r][c].is_multiple_of(3))
            .ok_or(ThetaError::NotSurjective { m })?;
        if c != r {
            for row in a.iter_mut() {
                row.swap(r, c);
            }
            perm.swap(r, c);
        }
        let inv = inverse_mod(a[r][r], MODULUS).expect("entry prime to 3");
        for x in a[r].iter_mut() {
            *x = *x * inv % MODULUS;
        }
        for x in u[r].iter_mut() {
            *x = *x * inv % MODULUS;
        }
        for i in 0..m {
            let f = a[i][r];
            if i == r || f == 0 {
                continue;
            }
            for c in 0..n {
                a[i][c] = (a[i][c] + MODULUS * MODULUS - f * a[r][c]) % MODULUS;
            }
            for c in 0..m {
                u[i][c] = (u[i][c] + MODULUS * MODULUS - f * u[r][c]) % MODULUS;
            }
        }
    }
    let reduced = SurjectionMatrix { m, n, entries: a };
    Ok(LemmaA2Reduction { reduced, u, perm })
}

/// The character chosen for a surjection, with its achieved signature.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterChoice {
    /// In the reduced basis: all 2s or all 6s.
    pub j: Vec<u64>,
    /// The same character on the original codomain basis, `j · U`.
    pub j_original: Vec<u64>,
    /// `σ(#ₙ L(9,4), j_original ∘ s)`.
    pub sigma_achieved: CGValue,
    /// Table values at the last `n − m` coordinates of `(2,…,2) ∘ reduced`.
    pub h_vector: Vec<CGValue>,
}

fn l94() -> LensSpace {
    LensSpace::new(9, 4).expect("valid lens space")
}

/// Picks `j` with `σ(#ₙ L(9,4), j∘s) ≥ (10/9)·m`.
pub fn prop_a_character(s: &SurjectionMatrix) -> Result<CharacterChoice, ThetaError> {
    let red = lemma_a2_reduce(s)?;
    let table = LensTable::new(&l94())?;
    let m = s.m;
    let twos = vec![2u64; m];
    let induced = red.reduced.compose_left(&twos);
    let h_vector: Vec<CGValue> = induced[m..]
        .iter()
        .map(|&a| CGValue::new(table.get(a).clone()))
        .collect();
    let minus_ninth = CGValue::from_ratio(-1, 9);
    let bad = h_vector.iter().filter(|h| **h == minus_ninth).count();
    let j = if bad < m { twos } else { vec![6u64; m] };
    let j_original: Vec<u64> = (0..m)
        .map(|c| (0..m).map(|r| j[r] * red.u[r][c]).sum::<u64>() % MODULUS)
        .collect();
    let phi = Character::new(MODULUS, s.compose_left(&j_original));
    let sigma_achieved = cg_sigma(&LensSpaceSum::power(l94(), s.n), &phi)?;
    let target = BigRational::new(BigInt::from(10 * m as i64), BigInt::from(9));
    if sigma_achieved.value() < &target {
        return Err(ThetaError::PostconditionViolated(format!(
            "character {j:?} on {s} gives {sigma_achieved} < 10m/9"
        )));
    }
    Ok(CharacterChoice {
        j,
        j_original,
        sigma_achieved,
        h_vector,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: Vec<Vec<u64>>) -> SurjectionMatrix {
        let n = rows[0].len();
        SurjectionMatrix::new(rows, n).unwrap()
    }

    #[test]
    fn rejects_non_surjections() {
        assert!(matches!(
            SurjectionMatrix::new(vec![vec![3, 6]], 2),
            Err(ThetaError::NotSurjective { m: 1 })
        ));
        assert!(SurjectionMatrix::new(vec![vec![1, 2], vec![2, 4]], 2).is_err());
    }

    #[test]
    fn identity_is_fixed() {
        let id = SurjectionMatrix::identity(3);
        let r = lemma_a2_reduce(&id).unwrap();
        assert_eq!(r.reduced, id);
        assert_eq!(r.perm, vec![0, 1, 2]);
        assert!(r.verify(&id));
    }

    #[test]
    fn column_swap() {
        let x = s(vec![vec![3, 1, 5]]);
        let r = lemma_a2_reduce(&x).unwrap();
        assert_eq!(r.reduced.entries(), &[vec![1, 3, 5]]);
        assert_eq!(r.u, vec![vec![1]]);
        assert_eq!(r.perm, vec![1, 0, 2]);
        assert!(r.verify(&x));
    }

    #[test]
    fn rescaling() {
        let x = s(vec![vec![2, 0], vec![0, 2]]);
        let r = lemma_a2_reduce(&x).unwrap();
        assert_eq!(r.reduced, SurjectionMatrix::identity(2));
        assert_eq!(r.u, vec![vec![5, 0], vec![0, 5]]);
        assert!(r.verify(&x));
    }

    #[test]
    fn choices() {
        let c = prop_a_character(&SurjectionMatrix::identity(2)).unwrap();
        assert_eq!(c.j, vec![2, 2]);
        assert_eq!(c.sigma_achieved, CGValue::from_ratio(22, 9));

        let c = prop_a_character(&s(vec![vec![1, 4]])).unwrap();
        assert_eq!(c.j, vec![2]);
        assert_eq!(c.sigma_achieved, CGValue::from_ratio(16, 9));

        let c = prop_a_character(&s(vec![vec![1, 2]])).unwrap();
        assert_eq!(c.h_vector, vec![CGValue::from_ratio(-1, 9)]);
        assert_eq!(c.j, vec![6]);
        assert_eq!(c.sigma_achieved, CGValue::from_ratio(2, 1));
    }

    #[test]
    fn pulled_back_character_matches_reduced_form() {
        let x = s(vec![vec![2, 4, 7], vec![3, 1, 0]]);
        let c = prop_a_character(&x).unwrap();
        let r = lemma_a2_reduce(&x).unwrap();
        let mut via_reduced = r.reduced.compose_left(&c.j);
        let mut via_original = x.compose_left(&c.j_original);
        via_reduced.sort_unstable();
        via_original.sort_unstable();
        assert_eq!(via_reduced, via_original);
    }

    #[test]
    fn invertibility() {
        assert!(invertible_mod9(&[vec![5, 0], vec![0, 5]]));
        assert!(!invertible_mod9(&[vec![3, 0], vec![0, 1]]));
        assert!(invertible_mod9(&[vec![0, 1], vec![1, 0]]));
    }
}
