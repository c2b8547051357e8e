use num_integer::Integer;

use super::ThetaError;
use crate::abelian::FiniteAbelianGroup;

/// Which necessary conditions a pair was checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairChecks {
    /// `|G_i|²` divides `|G|` for both `i`.
    pub order_condition: bool,
    /// `G₁ ⊕ G₂` is a quotient of `G`.
    pub quotient_condition: bool,
}

impl PairChecks {
    pub fn evaluate(
        g: &FiniteAbelianGroup,
        g1: &FiniteAbelianGroup,
        g2: &FiniteAbelianGroup,
    ) -> Self {
        let order = g.order();
        let divides = |h: &FiniteAbelianGroup| {
            let o = h.order();
            order.is_multiple_of(&(&o * &o))
        };
        PairChecks {
            order_condition: divides(g1) && divides(g2),
            quotient_condition: g1.direct_sum(g2).is_quotient_of(g),
        }
    }

    pub fn all(&self) -> bool {
        self.order_condition && self.quotient_condition
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairCandidate {
    pub g1: FiniteAbelianGroup,
    pub g2: FiniteAbelianGroup,
    pub checks: PairChecks,
}

impl PairCandidate {
    pub fn sum(&self) -> FiniteAbelianGroup {
        self.g1.direct_sum(&self.g2)
    }
}

/// Every ordered pair of isomorphism classes `(G₁, G₂)` with `|G_i|² | |G|`
/// and `G₁ ⊕ G₂` a quotient of `G`, sorted by `(G₁, G₂)`.
///
/// `max_pairs` bounds the number of ordered pairs of quotient classes examined.
pub fn candidate_pairs(
    g: &FiniteAbelianGroup,
    max_pairs: usize,
) -> Result<Vec<PairCandidate>, ThetaError> {
    let classes = g
        .quotient_classes(max_pairs)
        .ok_or(ThetaError::CapExceeded {
            what: "quotient classes",
            count: u128::MAX,
            cap: max_pairs as u128,
        })?;
    // only classes satisfying the order condition can appear on either side
    let order = g.order();
    let small: Vec<_> = classes
        .into_iter()
        .filter(|h| {
            let o = h.order();
            order.is_multiple_of(&(&o * &o))
        })
        .collect();
    let count = small.len() as u128 * small.len() as u128;
    if count > max_pairs as u128 {
        return Err(ThetaError::CapExceeded {
            what: "candidate pairs",
            count,
            cap: max_pairs as u128,
        });
    }
    let mut out = Vec::new();
    for g1 in &small {
        for g2 in &small {
            let checks = PairChecks::evaluate(g, g1, g2);
            if checks.all() {
                out.push(PairCandidate {
                    g1: g1.clone(),
                    g2: g2.clone(),
                    checks,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_orders_u64(orders)
    }

    fn pair_strings(g: &FiniteAbelianGroup) -> Vec<String> {
        candidate_pairs(g, 10_000)
            .unwrap()
            .iter()
            .map(|c| format!("({},{})", c.g1, c.g2))
            .collect()
    }

    #[test]
    fn cyclic_nine() {
        // Z3+Z3 is not a quotient of Z9, so (Z3,Z3) is excluded
        assert_eq!(pair_strings(&grp(&[9])), ["(0,0)", "(0,Z3)", "(Z3,0)"]);
    }

    #[test]
    fn nine_squared_contains_diagonal_pair() {
        let pairs = candidate_pairs(&grp(&[9, 9]), 10_000).unwrap();
        assert!(pairs.iter().any(|c| c.g1 == grp(&[9]) && c.g2 == grp(&[9])));
        for c in &pairs {
            assert!(c.checks.all());
            assert!(c.sum().is_quotient_of(&grp(&[9, 9])));
        }
    }

    #[test]
    fn trivial_group() {
        assert_eq!(pair_strings(&FiniteAbelianGroup::trivial()), ["(0,0)"]);
    }

    #[test]
    fn cap() {
        let big = grp(&[9; 110]);
        assert!(matches!(
            candidate_pairs(&big, 1000),
            Err(ThetaError::CapExceeded { .. })
        ));
    }
}
