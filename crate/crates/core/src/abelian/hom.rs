//! Homomorphisms between finite abelian groups given by generator orders.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::primes::prime_divisors;
use super::{cokernel_of_presentation, AbelianError, Cokernel, FiniteAbelianGroup, IntMatrix};

/// Default ceiling on the number of homomorphisms an enumeration may visit.
pub const DEFAULT_HOM_CAP: u64 = 100_000_000;

/// A homomorphism `⊕ Z_{o_j} → ⊕ Z_{e_i}`. Column `j` of `matrix` is the image
/// of domain generator `j`. A domain order of 0 marks a free generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    domain_orders: Vec<BigUint>,
    codomain_orders: Vec<BigUint>,
    matrix: IntMatrix,
}

impl Homomorphism {
    pub fn new(
        domain_orders: Vec<BigUint>,
        codomain_orders: Vec<BigUint>,
        matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != codomain_orders.len() || matrix.cols() != domain_orders.len() {
            return Err(AbelianError::DimensionMismatch {
                expected: codomain_orders.len() * domain_orders.len(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        for (j, o) in domain_orders.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let o = BigInt::from(o.clone());
            for (i, e) in codomain_orders.iter().enumerate() {
                if e.is_zero() {
                    if !matrix[(i, j)].is_zero() {
                        return Err(AbelianError::IncompatibleImage { generator: j });
                    }
                    continue;
                }
                if !(&o * &matrix[(i, j)]).is_multiple_of(&BigInt::from(e.clone())) {
                    return Err(AbelianError::IncompatibleImage { generator: j });
                }
            }
        }
        Ok(Homomorphism {
            domain_orders,
            codomain_orders,
            matrix,
        })
    }

    pub fn domain_orders(&self) -> &[BigUint] {
        &self.domain_orders
    }

    pub fn codomain_orders(&self) -> &[BigUint] {
        &self.codomain_orders
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of a domain element, reduced into the codomain's coordinates.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.matrix.rows())
            .map(|i| {
                let v: BigInt = (0..self.matrix.cols())
                    .map(|j| &self.matrix[(i, j)] * &x[j])
                    .sum();
                let e = &self.codomain_orders[i];
                if e.is_zero() {
                    v
                } else {
                    v.mod_floor(&BigInt::from(e.clone()))
                }
            })
            .collect()
    }

    /// Surjectivity via the cokernel of `[matrix | diag(codomain orders)]`.
    pub fn is_surjective(&self) -> bool {
        let rows = self.codomain_orders.len();
        let relations = self
            .matrix
            .augment(&IntMatrix::diagonal(
                &self
                    .codomain_orders
                    .iter()
                    .map(|e| BigInt::from(e.clone()))
                    .collect::<Vec<_>>(),
            ))
            .expect("same row count");
        // columns generate the image; transpose to present the quotient by rows
        matches!(
            cokernel_of_presentation(&relations.transpose(), rows),
            Cokernel::Finite(ref g) if g.is_trivial()
        )
    }
}

/// The set `Hom(⊕ Z_{o_j}, ⊕ Z_{e_i})` for small finite orders, enumerated
/// in a fixed odometer order over the coordinates of each generator image.
#[derive(Clone, Debug)]
pub struct HomSpace {
    domain: Vec<u64>,
    codomain: Vec<u64>,
    /// For coordinate `(i, j)`: step `e_i / gcd(o_j, e_i)` and count `gcd(o_j, e_i)`.
    digits: Vec<(u64, u64)>,
    count: u128,
    codomain_primes: Vec<(u64, Vec<usize>)>,
}

impl HomSpace {
    pub fn new(domain: &[u64], codomain: &[u64]) -> Self {
        let mut digits = Vec::with_capacity(domain.len() * codomain.len());
        let mut count: u128 = 1;
        for &o in domain {
            for &e in codomain {
                let g = o.gcd(&e);
                digits.push((e / g, g));
                count = count.saturating_mul(g as u128);
            }
        }
        let total: BigUint = codomain.iter().map(|&e| BigUint::from(e)).product();
        let codomain_primes = prime_divisors(&total)
            .into_iter()
            .map(|p| {
                let rows = (0..codomain.len())
                    .filter(|&i| codomain[i].is_multiple_of(p))
                    .collect();
                (p, rows)
            })
            .collect();
        HomSpace {
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            digits,
            count,
            codomain_primes,
        }
    }

    pub fn between(g: &FiniteAbelianGroup, h: &FiniteAbelianGroup) -> Result<Self, AbelianError> {
        let too_large = || AbelianError::SearchSpaceTooLarge {
            count: u128::MAX,
            cap: 0,
        };
        let d = g.orders_u64().ok_or_else(too_large)?;
        let c = h.orders_u64().ok_or_else(too_large)?;
        Ok(Self::new(&d, &c))
    }

    pub fn domain(&self) -> &[u64] {
        &self.domain
    }

    pub fn codomain(&self) -> &[u64] {
        &self.codomain
    }

    /// `∏ gcd(o_j, e_i)`, saturating.
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn check_cap(&self, cap: u64) -> Result<(), AbelianError> {
        if self.count > cap as u128 {
            Err(AbelianError::SearchSpaceTooLarge {
                count: self.count,
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// The homomorphism with the given index in enumeration order, as images
    /// `images[j][i]` = coordinate `i` of the image of generator `j`.
    pub fn nth(&self, mut index: u128) -> Vec<Vec<u64>> {
        let (m, n) = (self.codomain.len(), self.domain.len());
        let mut images = vec![vec![0u64; m]; n];
        // last digit varies fastest
        for pos in (0..self.digits.len()).rev() {
            let (step, g) = self.digits[pos];
            let d = (index % g as u128) as u64;
            index /= g as u128;
            images[pos / m][pos % m] = d * step;
        }
        images
    }

    /// Iterator over every homomorphism in enumeration order.
    pub fn iter(&self) -> HomIter<'_> {
        HomIter {
            space: self,
            state: vec![0; self.digits.len()],
            done: false,
        }
    }

    /// Surjectivity test for images in this space: for every prime `p` of the
    /// codomain order, the reduction mod `p` onto `B/pB` must have full rank.
    pub fn is_surjective(&self, images: &[Vec<u64>]) -> bool {
        self.codomain_primes.iter().all(|(p, rows)| {
            let mut mat: Vec<Vec<u64>> = rows
                .iter()
                .map(|&i| images.iter().map(|img| img[i] % p).collect())
                .collect();
            rank_mod_p(&mut mat, *p) == rows.len()
        })
    }

    pub fn to_homomorphism(&self, images: &[Vec<u64>]) -> Homomorphism {
        let m = self.codomain.len();
        let n = self.domain.len();
        let mut mat = IntMatrix::zeros(m, n);
        for j in 0..n {
            for i in 0..m {
                mat[(i, j)] = BigInt::from(images[j][i]);
            }
        }
        Homomorphism {
            domain_orders: self.domain.iter().map(|&o| BigUint::from(o)).collect(),
            codomain_orders: self.codomain.iter().map(|&e| BigUint::from(e)).collect(),
            matrix: mat,
        }
    }
}

pub struct HomIter<'a> {
    space: &'a HomSpace,
    state: Vec<u64>,
    done: bool,
}

impl Iterator for HomIter<'_> {
    type Item = Vec<Vec<u64>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let m = self.space.codomain.len();
        let mut images = vec![vec![0u64; m]; self.space.domain.len()];
        for (pos, &d) in self.state.iter().enumerate() {
            images[pos / m][pos % m] = d * self.space.digits[pos].0;
        }
        // advance the odometer
        let mut pos = self.state.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.state[pos] += 1;
            if self.state[pos] < self.space.digits[pos].1 {
                break;
            }
            self.state[pos] = 0;
        }
        Some(images)
    }
}

/// Rank over `F_p` by Gaussian elimination; `mat` is consumed as scratch.
pub fn rank_mod_p(mat: &mut [Vec<u64>], p: u64) -> usize {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| !mat[r][c].is_multiple_of(p)) else {
            continue;
        };
        mat.swap(rank, r);
        let inv = inverse_mod(mat[rank][c] % p, p).expect("nonzero mod a prime");
        for x in mat[rank].iter_mut() {
            *x = (*x % p) * inv % p;
        }
        for r2 in 0..rows {
            if r2 != rank && !mat[r2][c].is_multiple_of(p) {
                let f = mat[r2][c] % p;
                for k in 0..cols {
                    let sub = f * mat[rank][k] % p;
                    mat[r2][k] = (mat[r2][k] % p + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Every homomorphism `g → h` (or every surjection), in a deterministic order.
/// Refuses with `SearchSpaceTooLarge` when `|Hom(g, h)|` exceeds `cap`.
pub fn enumerate_homomorphisms(
    g: &FiniteAbelianGroup,
    h: &FiniteAbelianGroup,
    surjective_only: bool,
    cap: u64,
) -> Result<impl Iterator<Item = Homomorphism>, AbelianError> {
    let space = HomSpace::between(g, h)?;
    space.check_cap(cap)?;
    let count = space.count().to_u64().unwrap_or(u64::MAX);
    Ok((0..count).filter_map(move |k| {
        let images = space.nth(k as u128);
        if surjective_only && !space.is_surjective(&images) {
            return None;
        }
        Some(space.to_homomorphism(&images))
    }))
}
