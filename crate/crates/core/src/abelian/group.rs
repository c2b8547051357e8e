use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::primes::{is_prime, pow, prime_divisors, valuation};
use super::{invariant_diagonal, AbelianError, IntMatrix};

/// A finite abelian group in invariant-factor form `Z_{d_1} ⊕ ... ⊕ Z_{d_k}`
/// with `d_i ≥ 2` and `d_i | d_{i+1}`. Isomorphic groups compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    factors: Vec<BigUint>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders_u64(&[n])
    }

    /// Direct sum of cyclic groups of the given orders, normalized.
    /// Orders of 1 are dropped; an order of 0 (infinite cyclic) is rejected.
    pub fn from_orders<I: IntoIterator<Item = BigUint>>(orders: I) -> Result<Self, AbelianError> {
        let mut ds: Vec<BigUint> = Vec::new();
        for o in orders {
            if o.is_zero() {
                return Err(AbelianError::InfiniteGroup);
            }
            if !o.is_one() {
                ds.push(o);
            }
        }
        // pairwise (gcd, lcm) replacement converges to the divisibility chain
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                let g = ds[i].gcd(&ds[j]);
                let l = ds[i].lcm(&ds[j]);
                ds[i] = g;
                ds[j] = l;
            }
        }
        ds.retain(|d| !d.is_one());
        Ok(FiniteAbelianGroup { factors: ds })
    }

    /// # Panics
    /// If any order is zero.
    pub fn from_orders_u64(orders: &[u64]) -> Self {
        Self::from_orders(orders.iter().map(|&o| BigUint::from(o))).expect("finite cyclic orders")
    }

    /// Builds a group from its primary decomposition: for each prime, the
    /// exponents of the cyclic `p`-power summands.
    pub fn from_primary(parts: &BTreeMap<u64, Vec<u32>>) -> Self {
        // the k-th largest invariant factor collects the k-th largest exponent of every prime
        let mut sorted: Vec<(u64, Vec<u32>)> = parts
            .iter()
            .map(|(&p, exps)| {
                let mut e: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
                e.sort_unstable_by(|a, b| b.cmp(a));
                (p, e)
            })
            .collect();
        sorted.retain(|(_, e)| !e.is_empty());
        let len = sorted.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors: Vec<BigUint> = (0..len)
            .map(|k| {
                sorted
                    .iter()
                    .filter_map(|(p, e)| e.get(k).map(|&x| pow(*p, x)))
                    .product()
            })
            .collect();
        factors.reverse();
        FiniteAbelianGroup { factors }
    }

    pub fn factors(&self) -> &[BigUint] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> BigUint {
        self.factors.last().cloned().unwrap_or_else(BigUint::one)
    }

    /// Minimum number of generators: the length of the invariant-factor chain.
    pub fn min_generators(&self) -> usize {
        self.factors.len()
    }

    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> Self {
        Self::from_orders(self.factors.iter().chain(&other.factors).cloned())
            .expect("summands are finite")
    }

    /// `dim_{Z_p} G ⊗ Z_p`: the number of invariant factors divisible by `p`.
    pub fn xi_p(&self, p: u64) -> Result<usize, AbelianError> {
        if !is_prime(p) {
            return Err(AbelianError::NotPrime(p));
        }
        let bp = BigUint::from(p);
        Ok(self
            .factors
            .iter()
            .filter(|d| d.is_multiple_of(&bp))
            .count())
    }

    /// Number of invariant factors divisible by `p^k`, i.e. `dim p^{k-1}G / p^k G`.
    pub fn s_q(&self, p: u64, k: u32) -> usize {
        let q = pow(p, k);
        self.factors.iter().filter(|d| d.is_multiple_of(&q)).count()
    }

    /// Primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        prime_divisors(&self.exponent())
    }

    /// Exponents of the `p`-primary cyclic summands, largest first.
    pub fn primary_partition(&self, p: u64) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .factors
            .iter()
            .map(|d| valuation(d, p))
            .filter(|&e| e > 0)
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn primary_decomposition(&self) -> BTreeMap<u64, Vec<u32>> {
        self.primes()
            .into_iter()
            .map(|p| (p, self.primary_partition(p)))
            .collect()
    }

    /// Whether `self` is isomorphic to a quotient of `g`. For finite abelian
    /// groups this holds exactly when every counting function `s_{p,k}` of
    /// `self` is bounded by that of `g`.
    pub fn is_quotient_of(&self, g: &FiniteAbelianGroup) -> bool {
        self.primes().into_iter().all(|p| {
            let mine = self.primary_partition(p);
            let theirs = g.primary_partition(p);
            mine.len() <= theirs.len() && mine.iter().zip(&theirs).all(|(a, b)| a <= b)
        })
    }

    /// Every isomorphism class of quotient of `self`, in a deterministic order.
    /// Returns `None` if there are more than `cap` classes.
    pub fn quotient_classes(&self, cap: usize) -> Option<Vec<FiniteAbelianGroup>> {
        let decomposition = self.primary_decomposition();
        let mut classes: Vec<BTreeMap<u64, Vec<u32>>> = vec![BTreeMap::new()];
        for (&p, partition) in &decomposition {
            let subs = sub_partitions(partition);
            if classes.len().saturating_mul(subs.len()) > cap {
                return None;
            }
            classes = classes
                .into_iter()
                .flat_map(|c| {
                    subs.iter().map(move |s| {
                        let mut c = c.clone();
                        if !s.is_empty() {
                            c.insert(p, s.clone());
                        }
                        c
                    })
                })
                .collect();
        }
        let mut groups: Vec<FiniteAbelianGroup> = classes
            .iter()
            .map(FiniteAbelianGroup::from_primary)
            .collect();
        groups.sort();
        Some(groups)
    }

    pub fn orders_u64(&self) -> Option<Vec<u64>> {
        self.factors.iter().map(|d| u64::try_from(d).ok()).collect()
    }
}

/// Partitions `μ` with `μ_i ≤ λ_i` termwise (the quotient classes of a p-group of type `λ`).
fn sub_partitions(lambda: &[u32]) -> Vec<Vec<u32>> {
    fn go(lambda: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if i == lambda.len() {
            return;
        }
        for e in 1..=lambda[i].min(cap) {
            cur.push(e);
            go(lambda, i + 1, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

impl PartialOrd for FiniteAbelianGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by group order, then lexicographically by invariant factors.
impl Ord for FiniteAbelianGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

/// `torsion ⊕ Z^free_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeExtension {
    pub torsion: FiniteAbelianGroup,
    pub free_rank: usize,
}

impl FreeExtension {
    pub fn new(torsion: FiniteAbelianGroup, free_rank: usize) -> Self {
        FreeExtension { torsion, free_rank }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(FiniteAbelianGroup::trivial(), rank)
    }

    /// Torsion generators first, then the free generators.
    pub fn generator_count(&self) -> usize {
        self.torsion.min_generators() + self.free_rank
    }

    /// `s_{p,k}` of the torsion part plus the free rank.
    pub fn s_q(&self, p: u64, k: u32) -> usize {
        self.torsion.s_q(p, k) + self.free_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cokernel {
    Finite(FiniteAbelianGroup),
    /// The quotient has positive free rank.
    Infinite {
        torsion: FiniteAbelianGroup,
        free_rank: usize,
    },
}

impl Cokernel {
    pub fn finite(self) -> Option<FiniteAbelianGroup> {
        match self {
            Cokernel::Finite(g) => Some(g),
            Cokernel::Infinite { .. } => None,
        }
    }
}

/// Quotient of `ambient` by the subgroup generated by the rows of `relations`.
/// Row coordinates follow `FreeExtension::generator_count` ordering.
pub fn cokernel(relations: &IntMatrix, ambient: &FreeExtension) -> Result<Cokernel, AbelianError> {
    let n = ambient.generator_count();
    if relations.rows() > 0 && relations.cols() != n {
        return Err(AbelianError::DimensionMismatch {
            expected: n,
            found: relations.cols(),
        });
    }
    let mut torsion_rows = IntMatrix::zeros(ambient.torsion.min_generators(), n);
    for (i, d) in ambient.torsion.factors().iter().enumerate() {
        torsion_rows[(i, i)] = BigInt::from_biguint(Sign::Plus, d.clone());
    }
    let presentation = if relations.rows() == 0 {
        torsion_rows
    } else {
        relations.stack(&torsion_rows)?
    };
    Ok(cokernel_of_presentation(&presentation, n))
}

/// Cokernel of `Z^cols / rowspan(m)`.
pub fn cokernel_of_presentation(m: &IntMatrix, cols: usize) -> Cokernel {
    let diag = if m.rows() == 0 {
        Vec::new()
    } else {
        invariant_diagonal(m)
    };
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let free_rank = cols - rank;
    let torsion = FiniteAbelianGroup::from_orders(
        diag.into_iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.magnitude().clone()),
    )
    .expect("nonzero diagonal");
    if free_rank == 0 {
        Cokernel::Finite(torsion)
    } else {
        Cokernel::Infinite { torsion, free_rank }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_orders_u64(orders)
    }

    #[test]
    fn normalization_to_invariant_factors() {
        assert_eq!(
            g(&[4, 9, 3]).factors(),
            &[BigUint::from(3u32), BigUint::from(36u32)]
        );
        assert_eq!(g(&[2, 3]), g(&[6]));
        assert_eq!(g(&[1, 1]), FiniteAbelianGroup::trivial());
        assert_eq!(g(&[]).exponent(), BigUint::one());
        assert!(FiniteAbelianGroup::from_orders([BigUint::zero()]).is_err());
    }

    #[test]
    fn min_generators_examples() {
        assert_eq!(FiniteAbelianGroup::trivial().min_generators(), 0);
        assert_eq!(g(&[9, 9]).min_generators(), 2);
        assert_eq!(g(&[9; 110]).min_generators(), 110);
    }

    #[test]
    fn xi_p_examples() {
        let a = g(&[9, 3, 4]);
        assert_eq!(a.xi_p(3).unwrap(), 2);
        assert_eq!(a.xi_p(2).unwrap(), 1);
        assert_eq!(FiniteAbelianGroup::trivial().xi_p(3).unwrap(), 0);
        assert_eq!(a.xi_p(9), Err(AbelianError::NotPrime(9)));
    }

    #[test]
    fn s_q_examples() {
        let (n, m) = (4, 3);
        let mut orders = vec![9; n];
        orders.extend(vec![3; m]);
        let a = FreeExtension::new(g(&orders), 0);
        assert_eq!(a.s_q(3, 2), n);
        assert_eq!(a.s_q(3, 1), n + m);
        assert_eq!(FreeExtension::free(4).s_q(3, 2), 4);
    }

    #[test]
    fn cokernel_examples() {
        let rows = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1], vec![9, 0]]).unwrap();
        assert_eq!(
            cokernel(&rows, &FreeExtension::free(2)).unwrap(),
            Cokernel::Finite(FiniteAbelianGroup::trivial())
        );
        let rows = IntMatrix::from_rows(&[vec![9, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            cokernel(&rows, &FreeExtension::free(2)).unwrap(),
            Cokernel::Finite(g(&[9]))
        );
        let none = IntMatrix::zeros(0, 1);
        assert_eq!(
            cokernel(&none, &FreeExtension::new(g(&[9]), 0)).unwrap(),
            Cokernel::Finite(g(&[9]))
        );
        let rows = IntMatrix::from_rows(&[vec![3, 0]]).unwrap();
        assert_eq!(
            cokernel(&rows, &FreeExtension::free(2)).unwrap(),
            Cokernel::Infinite {
                torsion: g(&[3]),
                free_rank: 1
            }
        );
        let bad = IntMatrix::from_rows(&[vec![1, 2, 3]]).unwrap();
        assert!(cokernel(&bad, &FreeExtension::free(2)).is_err());
    }

    #[test]
    fn quotient_relation() {
        assert!(g(&[3]).is_quotient_of(&g(&[9])));
        assert!(!g(&[3, 3]).is_quotient_of(&g(&[9])));
        assert!(g(&[9, 9]).is_quotient_of(&g(&[9, 9])));
        assert!(!g(&[27]).is_quotient_of(&g(&[9, 9])));
        assert!(FiniteAbelianGroup::trivial().is_quotient_of(&FiniteAbelianGroup::trivial()));
    }

    #[test]
    fn from_primary_agrees_with_orders() {
        let mut parts = BTreeMap::new();
        parts.insert(2, vec![1, 3]);
        parts.insert(3, vec![2]);
        parts.insert(5, vec![1, 1, 1]);
        let orders = [2, 8, 9, 5, 5, 5];
        assert_eq!(FiniteAbelianGroup::from_primary(&parts), g(&orders));
        assert_eq!(FiniteAbelianGroup::from_primary(&BTreeMap::new()), g(&[]));
    }

    #[test]
    fn quotient_classes_of_small_groups() {
        let classes = g(&[9]).quotient_classes(100).unwrap();
        assert_eq!(classes, vec![g(&[]), g(&[3]), g(&[9])]);
        // partitions inside (2,2): 0, (1), (2), (1,1), (2,1), (2,2)
        assert_eq!(g(&[9, 9]).quotient_classes(100).unwrap().len(), 6);
        assert_eq!(g(&[12]).quotient_classes(100).unwrap().len(), 6);
        assert!(g(&[9; 110]).quotient_classes(1000).is_none());
    }
}
