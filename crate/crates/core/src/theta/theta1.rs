//! The relation-count invariant θ₁.
//!
//! An admissible extension of `(G₁, G₂)` for `G` consists of `2N` paired
//! relations `(a¹_j, a²_j)` in `(G₁ ⊕ Z^{2n₁}) ⊕ (G₂ ⊕ Z^{2n₂})` with
//! `N = n₁ + n₂`, such that the first components present `G₂`, the second
//! present `G₁`, and the pairs present `G`. θ₁ is the least such `N`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{BoundInterval, Certificate, Method, SearchCaps, ThetaError};
use crate::abelian::primes::valuation;
use crate::abelian::{cokernel_of_presentation, Cokernel, FiniteAbelianGroup, IntMatrix};

/// Counting bound: `G` is a quotient of `G₁ ⊕ G₂ ⊕ Z^{2N}`, so for every
/// prime power `q` the number of cyclic summands of order divisible by `q`
/// grows by at most `2N`.
pub fn theta1_lower(
    g: &FiniteAbelianGroup,
    g1: &FiniteAbelianGroup,
    g2: &FiniteAbelianGroup,
) -> BigRational {
    BigRational::from_integer(BigInt::from(counting_bound(g, &g1.direct_sum(g2))))
}

pub(crate) fn counting_bound(g: &FiniteAbelianGroup, sum: &FiniteAbelianGroup) -> usize {
    let exponent = g.exponent();
    let mut best = 0usize;
    for p in g.primes() {
        for k in 1..=valuation(&exponent, p) {
            let gap = g.s_q(p, k).saturating_sub(sum.s_q(p, k));
            best = best.max(gap.div_ceil(2));
        }
    }
    best
}

/// A witnessed extension, re-checkable with [`AdmissibilityCertificate::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityCertificate {
    pub group: FiniteAbelianGroup,
    pub g1: FiniteAbelianGroup,
    pub g2: FiniteAbelianGroup,
    pub n1: usize,
    pub n2: usize,
    /// `2(n₁+n₂)` rows over the generators of `G₁` followed by `Z^{2n₁}`.
    pub a1: IntMatrix,
    /// `2(n₁+n₂)` rows over the generators of `G₂` followed by `Z^{2n₂}`.
    pub a2: IntMatrix,
    /// The quotients presented by `a1`, `a2` and the paired rows.
    pub transcript: [FiniteAbelianGroup; 3],
}

impl AdmissibilityCertificate {
    /// Computes the three quotients and returns a certificate if they are
    /// `G₂`, `G₁` and `G` respectively.
    pub fn check(
        group: &FiniteAbelianGroup,
        g1: &FiniteAbelianGroup,
        g2: &FiniteAbelianGroup,
        n1: usize,
        n2: usize,
        a1: IntMatrix,
        a2: IntMatrix,
    ) -> Result<Self, String> {
        let transcript = quotients(g1, g2, n1, n2, &a1, &a2)?;
        let expected = [g2, g1, group];
        for (i, (got, want)) in transcript.iter().zip(expected).enumerate() {
            match got {
                Some(h) if h == want => {}
                Some(h) => return Err(format!("quotient {i} is {h}, expected {want}")),
                None => return Err(format!("quotient {i} is infinite, expected {want}")),
            }
        }
        let [q1, q2, q] = transcript.map(Option::unwrap);
        Ok(AdmissibilityCertificate {
            group: group.clone(),
            g1: g1.clone(),
            g2: g2.clone(),
            n1,
            n2,
            a1,
            a2,
            transcript: [q1, q2, q],
        })
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn verify(&self) -> bool {
        Self::check(
            &self.group,
            &self.g1,
            &self.g2,
            self.n1,
            self.n2,
            self.a1.clone(),
            self.a2.clone(),
        )
        .is_ok_and(|c| c.transcript == self.transcript)
    }
}

fn torsion_orders(g: &FiniteAbelianGroup) -> Vec<BigInt> {
    g.factors()
        .iter()
        .map(|d| BigInt::from(d.clone()))
        .collect()
}

fn present(blocks: &[(&[BigInt], &IntMatrix, usize)]) -> Result<Cokernel, String> {
    // each block: torsion orders, relation columns, free rank
    let cols: usize = blocks.iter().map(|(t, _, f)| t.len() + f).sum();
    let rows = blocks.first().map_or(0, |(_, m, _)| m.rows());
    let torsion_rows: usize = blocks.iter().map(|(t, _, _)| t.len()).sum();
    let mut m = IntMatrix::zeros(rows + torsion_rows, cols);
    let (mut offset, mut trow) = (0, rows);
    for (t, rel, f) in blocks {
        let width = t.len() + f;
        if rel.rows() != rows || (rows > 0 && rel.cols() != width) {
            return Err(format!(
                "relation block is {}x{}, expected {rows}x{width}",
                rel.rows(),
                rel.cols()
            ));
        }
        for r in 0..rows {
            for c in 0..width {
                m[(r, offset + c)] = rel[(r, c)].clone();
            }
        }
        for (i, d) in t.iter().enumerate() {
            m[(trow, offset + i)] = d.clone();
            trow += 1;
        }
        offset += width;
    }
    Ok(cokernel_of_presentation(&m, cols))
}

fn quotients(
    g1: &FiniteAbelianGroup,
    g2: &FiniteAbelianGroup,
    n1: usize,
    n2: usize,
    a1: &IntMatrix,
    a2: &IntMatrix,
) -> Result<[Option<FiniteAbelianGroup>; 3], String> {
    let rows = 2 * (n1 + n2);
    if a1.rows() != rows || a2.rows() != rows {
        return Err(format!("expected {rows} relations"));
    }
    let (t1, t2) = (torsion_orders(g1), torsion_orders(g2));
    let q1 = present(&[(&t1, a1, 2 * n1)])?.finite();
    let q2 = present(&[(&t2, a2, 2 * n2)])?.finite();
    let q = present(&[(&t1, a1, 2 * n1), (&t2, a2, 2 * n2)])?.finite();
    Ok([q1, q2, q])
}

/// Outcome of the certificate search for one pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Theta1Search {
    /// `lower` is the counting bound; `upper` is the least `n₁+n₂` with a
    /// verified certificate, if one was found within the caps.
    pub interval: BoundInterval,
    /// Values of `n₁+n₂` shown to admit no extension, either by the counting
    /// bound or by a search that covered every relation matrix.
    pub refuted: Vec<usize>,
    /// Relation matrices examined.
    pub examined: u64,
    /// Whether a cap cut some search short.
    pub capped: bool,
}

impl Theta1Search {
    /// θ₁ itself, when a certificate was found and every smaller total refuted.
    pub fn exact(&self) -> Option<usize> {
        let up = self.interval.upper.as_ref()?.to_integer().to_usize()?;
        (0..up).all(|n| self.refuted.contains(&n)).then_some(up)
    }

    pub fn certificate(&self) -> Option<&AdmissibilityCertificate> {
        match &self.interval.certificate {
            Some(Certificate::Admissibility(c)) => Some(c),
            _ => None,
        }
    }
}

/// Ordered factorizations of `d` into `len` factors, each at most `bound`.
fn pivot_tuples(d: u64, len: usize, bound: u64) -> Vec<Vec<u64>> {
    fn go(d: u64, len: usize, bound: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            if d == 1 {
                out.push(cur.clone());
            }
            return;
        }
        for h in 1..=d.min(bound) {
            if d.is_multiple_of(h) {
                cur.push(h);
                go(d / h, len, bound, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, len, bound, &mut Vec::new(), &mut out);
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n)
        .take_while(|i| i * i <= n)
        .filter(|i| n.is_multiple_of(*i))
        .collect();
    let high: Vec<u64> = v
        .iter()
        .rev()
        .map(|i| n / i)
        .filter(|j| j * j != n)
        .collect();
    v.extend(high);
    v
}

struct Layout {
    d_dim: usize,
    n1: usize,
    t1: Vec<u64>,
    t2: Vec<u64>,
}

impl Layout {
    /// Radices for one pivot tuple: entries above each pivot, then torsion
    /// coordinates row by row.
    fn radices(&self, pivots: &[u64]) -> Vec<u64> {
        let mut r = Vec::new();
        for (c, &h) in pivots.iter().enumerate() {
            r.extend(std::iter::repeat_n(h, c));
        }
        for _ in 0..self.d_dim {
            r.extend(&self.t1);
            r.extend(&self.t2);
        }
        r
    }

    fn matrices(&self, pivots: &[u64], digits: &[u64]) -> (IntMatrix, IntMatrix) {
        let d = self.d_dim;
        let (k1, k2) = (self.t1.len(), self.t2.len());
        let f1 = 2 * self.n1;
        let mut free = vec![vec![0u64; d]; d];
        let mut it = digits.iter();
        for (c, &h) in pivots.iter().enumerate() {
            free[c][c] = h;
            for row in free.iter_mut().take(c) {
                row[c] = *it.next().unwrap();
            }
        }
        let mut a1 = IntMatrix::zeros(d, k1 + f1);
        let mut a2 = IntMatrix::zeros(d, k2 + d - f1);
        for r in 0..d {
            for t in 0..k1 {
                a1[(r, t)] = BigInt::from(*it.next().unwrap());
            }
            for t in 0..k2 {
                a2[(r, t)] = BigInt::from(*it.next().unwrap());
            }
            for c in 0..d {
                if c < f1 {
                    a1[(r, k1 + c)] = BigInt::from(free[r][c]);
                } else {
                    a2[(r, k2 + c - f1)] = BigInt::from(free[r][c]);
                }
            }
        }
        (a1, a2)
    }
}

fn odometer_step(digits: &mut [u64], radices: &[u64]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Searches for extensions with `n₁ + n₂ ≤ caps.max_n`, smallest total first.
///
/// Row operations on the paired relations preserve all three quotients, so
/// the free block may be taken in Hermite normal form. Its determinant `d`
/// divides `|G|` with `|G|/d` dividing `|G₁||G₂|`. Diagonal entries are capped
/// by the entry bound; when that bound is at least every admissible `d` the
/// search for that total is exhaustive.
pub fn theta1_search(
    g: &FiniteAbelianGroup,
    g1: &FiniteAbelianGroup,
    g2: &FiniteAbelianGroup,
    caps: &SearchCaps,
) -> Result<Theta1Search, ThetaError> {
    let lower = counting_bound(g, &g1.direct_sum(g2));
    let too_big = |what| ThetaError::CapExceeded {
        what,
        count: u128::MAX,
        cap: u64::MAX as u128,
    };
    let order = g.order().to_u64().ok_or_else(|| too_big("group order"))?;
    let t1 = g1.orders_u64().ok_or_else(|| too_big("torsion order"))?;
    let t2 = g2.orders_u64().ok_or_else(|| too_big("torsion order"))?;
    let side: BigUint = g1.order() * g2.order();
    let dets: Vec<u64> = divisors(order)
        .into_iter()
        .filter(|&d| side.is_multiple_of(&BigUint::from(order / d)))
        .collect();
    let bound = caps
        .entry_bound
        .unwrap_or_else(|| g.exponent().to_u64().unwrap_or(u64::MAX));

    let mut refuted = Vec::new();
    let mut examined = 0u64;
    let mut capped = false;
    for total in 0..=caps.max_n {
        if total < lower {
            refuted.push(total);
            continue;
        }
        let d_dim = 2 * total;
        let mut budget_hit = false;
        let mut exhaustive = dets.iter().all(|&d| d <= bound) || d_dim == 0;
        for n1 in 0..=total {
            let layout = Layout {
                d_dim,
                n1,
                t1: t1.clone(),
                t2: t2.clone(),
            };
            for &d in &dets {
                for pivots in pivot_tuples(d, d_dim, bound) {
                    let radices = layout.radices(&pivots);
                    if radices.contains(&0) {
                        continue;
                    }
                    let mut digits = vec![0u64; radices.len()];
                    loop {
                        if examined >= caps.max_candidates {
                            budget_hit = true;
                            break;
                        }
                        examined += 1;
                        let (a1, a2) = layout.matrices(&pivots, &digits);
                        if let Ok(cert) =
                            AdmissibilityCertificate::check(g, g1, g2, n1, total - n1, a1, a2)
                        {
                            debug_assert!(cert.verify());
                            return Ok(found(lower, total, cert, refuted, examined, capped));
                        }
                        if !odometer_step(&mut digits, &radices) {
                            break;
                        }
                    }
                    if budget_hit {
                        break;
                    }
                }
                if budget_hit {
                    break;
                }
            }
            if budget_hit {
                break;
            }
        }
        if budget_hit {
            capped = true;
            exhaustive = false;
        }
        if exhaustive {
            refuted.push(total);
        }
        if budget_hit {
            break;
        }
    }
    Ok(Theta1Search {
        interval: BoundInterval::lower_only(int(lower), Method::Counting),
        refuted,
        examined,
        capped,
    })
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn found(
    lower: usize,
    total: usize,
    cert: AdmissibilityCertificate,
    refuted: Vec<usize>,
    examined: u64,
    capped: bool,
) -> Theta1Search {
    Theta1Search {
        interval: BoundInterval {
            lower: int(lower),
            upper: Some(int(total)),
            method: Method::Certificate,
            certificate: Some(Certificate::Admissibility(Box::new(cert))),
        },
        refuted,
        examined,
        capped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_orders_u64(orders)
    }

    fn zero() -> FiniteAbelianGroup {
        FiniteAbelianGroup::trivial()
    }

    fn caps(max_n: usize, entry_bound: u64) -> SearchCaps {
        SearchCaps {
            max_n,
            entry_bound: Some(entry_bound),
            ..SearchCaps::default()
        }
    }

    #[test]
    fn counting_examples() {
        assert_eq!(theta1_lower(&grp(&[9]), &zero(), &zero()), int(1));
        let g = grp(&[9; 110]);
        let half = grp(&[9; 54]);
        assert_eq!(theta1_lower(&g, &half, &half), int(1));
        assert_eq!(theta1_lower(&g, &grp(&[9; 55]), &grp(&[9; 55])), int(0));
        assert_eq!(theta1_lower(&zero(), &zero(), &zero()), int(0));
    }

    #[test]
    fn hand_certificate_verifies() {
        let m = |rows: &[Vec<i64>]| IntMatrix::from_rows(rows).unwrap();
        let cert = AdmissibilityCertificate::check(
            &grp(&[9]),
            &zero(),
            &zero(),
            1,
            1,
            m(&[vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 0]]),
            m(&[vec![2, 0], vec![0, 1], vec![9, 0], vec![0, 1]]),
        )
        .unwrap();
        assert!(cert.verify());
        assert_eq!(cert.transcript[2], grp(&[9]));
        let mut broken = cert.clone();
        broken.a2[(2, 0)] = BigInt::from(3);
        assert!(!broken.verify());
    }

    #[test]
    fn nine_with_trivial_sides() {
        let r = theta1_search(&grp(&[9]), &zero(), &zero(), &caps(3, 9)).unwrap();
        assert_eq!(r.interval.lower, int(1));
        assert_eq!(r.interval.upper, Some(int(2)));
        assert_eq!(r.exact(), Some(2));
        let cert = r.certificate().unwrap();
        assert!(cert.verify());
        assert_eq!(cert.total(), 2);
        assert!(r.interval.is_consistent());
    }

    #[test]
    fn trivial_everything() {
        let r = theta1_search(&zero(), &zero(), &zero(), &caps(2, 1)).unwrap();
        assert_eq!(r.interval.lower, int(0));
        assert_eq!(r.interval.upper, Some(int(0)));
        let cert = r.certificate().unwrap();
        assert_eq!((cert.n1, cert.n2), (0, 0));
    }

    #[test]
    fn isomorphic_sum_needs_no_relations_only_if_sides_swap() {
        // (Z3, Z3) for Z3+Z3: with no relations G1 must be G2, which holds
        let g = grp(&[3, 3]);
        let r = theta1_search(&g, &grp(&[3]), &grp(&[3]), &caps(1, 3)).unwrap();
        assert_eq!(r.exact(), Some(0));
    }

    #[test]
    fn three_with_one_side() {
        let r = theta1_search(&grp(&[3]), &grp(&[3]), &zero(), &caps(2, 3)).unwrap();
        assert_eq!(r.interval.lower, int(0));
        assert!(r.interval.is_consistent());
        if let Some(cert) = r.certificate() {
            assert!(cert.verify());
        }
    }

    #[test]
    fn tight_candidate_cap_reports_unknown() {
        let c = SearchCaps {
            max_candidates: 5,
            ..caps(3, 9)
        };
        let r = theta1_search(&grp(&[9]), &zero(), &zero(), &c).unwrap();
        assert!(r.capped);
        assert_eq!(r.interval.upper, None);
        assert_eq!(r.exact(), None);
    }

    #[test]
    fn hermite_enumeration_counts() {
        // index-p sublattices of Z^2 number p + 1
        let t = pivot_tuples(3, 2, 3);
        let layout = Layout {
            d_dim: 2,
            n1: 1,
            t1: vec![],
            t2: vec![],
        };
        let count: u64 = t
            .iter()
            .map(|p| layout.radices(p).iter().product::<u64>())
            .sum();
        assert_eq!(count, 4);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }
}
