//! θ(K) and Θ(Y): the minimum over candidate pairs of `max(θ₁, θ₃)` or
//! `max(θ₁, θ₂)`.
//!
//! Pairs are visited in increasing order of their counting bound θ₁, so the
//! scan stops as soon as the best value found is at most the next θ₁. The
//! Casson–Gordon term of a pair is abandoned once some surjection brings it
//! to θ₁ or below, since the pair's value is then θ₁. Both shortcuts leave
//! the result unchanged, and the result does not depend on the thread count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cg_bounds::{evaluate_pair, CgPairContext, PairObjective};
use super::pairs::candidate_pairs;
use super::theta1::counting_bound;
use super::{BoundInterval, Method, SearchCaps, ThetaError};
use crate::abelian::FiniteAbelianGroup;
use crate::casson_gordon::{LensSpaceSum, TableCache};
use crate::knots::{branched_double_cover, knot_invariants, BranchedCover, KnotSpec};
use crate::rational::ceil_int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Complete,
    Incomplete,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::Incomplete => "incomplete",
        }
    }
}

/// What was learned about one candidate pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairValue {
    pub g1: FiniteAbelianGroup,
    pub g2: FiniteAbelianGroup,
    pub theta1: BigRational,
    /// The Casson–Gordon term, when it was evaluated to completion.
    pub cg: Option<BigRational>,
    /// A lower bound on `max(θ₁, cg)`; `None` when the pair was pruned.
    pub value: Option<BigRational>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaBound {
    /// `lower` is the bound; `upper` is always unknown.
    pub interval: BoundInterval,
    pub ceiling: BigInt,
    /// The first pair (in visiting order) attaining the minimum.
    pub pair: Option<(FiniteAbelianGroup, FiniteAbelianGroup)>,
    pub status: Status,
    pub notes: Vec<String>,
    pub pairs: Vec<PairValue>,
}

impl ThetaBound {
    pub fn value(&self) -> &BigRational {
        &self.interval.lower
    }

    fn trivial_incomplete(note: String) -> Self {
        ThetaBound {
            interval: BoundInterval::lower_only(BigRational::zero(), Method::Counting),
            ceiling: BigInt::zero(),
            pair: None,
            status: Status::Incomplete,
            notes: vec![note],
            pairs: Vec::new(),
        }
    }
}

fn minimize(
    g: &FiniteAbelianGroup,
    cg: Option<(&CgPairContext, PairObjective)>,
    caps: &SearchCaps,
) -> Result<ThetaBound, ThetaError> {
    let candidates = match candidate_pairs(g, caps.max_pairs) {
        Ok(c) => c,
        Err(ThetaError::CapExceeded { what, .. }) => {
            return Ok(ThetaBound::trivial_incomplete(format!(
                "{what} of {g} exceed the pair cap {}",
                caps.max_pairs
            )))
        }
        Err(e) => return Err(e),
    };
    let mut order: Vec<(usize, _)> = candidates
        .into_iter()
        .map(|c| (counting_bound(g, &c.sum()), c))
        .collect();
    order.sort_by_key(|(t1, _)| *t1);

    let mut best: Option<(BigRational, usize)> = None;
    let mut status = Status::Complete;
    let mut notes = Vec::new();
    let mut pairs = Vec::with_capacity(order.len());
    let mut used_cg = false;
    for (t1, c) in order {
        let theta1 = BigRational::from_integer(BigInt::from(t1));
        let mut pv = PairValue {
            g1: c.g1.clone(),
            g2: c.g2.clone(),
            theta1: theta1.clone(),
            cg: None,
            value: None,
            note: None,
        };
        if best.as_ref().is_some_and(|(b, _)| b <= &theta1) {
            pv.note = Some("pruned: θ₁ already at least the minimum".into());
            pairs.push(pv);
            continue;
        }
        let value = match cg {
            None => theta1.clone(),
            Some((ctx, objective)) => {
                match evaluate_pair(ctx, &c.g1, &c.g2, objective, caps.max_homs, Some(&theta1)) {
                    Ok(e) => {
                        used_cg = true;
                        if !e.stopped_early {
                            pv.cg = Some(e.value.clone());
                        } else {
                            pv.note = Some("Casson–Gordon term at most θ₁".into());
                        }
                        e.value.max(theta1.clone())
                    }
                    Err(ThetaError::CapExceeded { what, count, cap }) => {
                        status = Status::Incomplete;
                        let msg = format!(
                            "({}, {}): {what} {count} over cap {cap}; θ₁ used alone",
                            c.g1, c.g2
                        );
                        pv.note = Some(msg.clone());
                        notes.push(msg);
                        theta1.clone()
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        pv.value = Some(value.clone());
        if best.as_ref().is_none_or(|(b, _)| &value < b) {
            best = Some((value, pairs.len()));
        }
        pairs.push(pv);
    }
    let (value, idx) = best.expect("the trivial pair is always a candidate");
    let pair = Some((pairs[idx].g1.clone(), pairs[idx].g2.clone()));
    let method = if used_cg {
        Method::Enumeration
    } else {
        Method::Counting
    };
    Ok(ThetaBound {
        ceiling: ceil_int(&value),
        interval: BoundInterval::lower_only(value, method),
        pair,
        status,
        notes,
        pairs,
    })
}

/// Lower bound for θ(K), hence for the double slice genus.
///
/// When some summand is given only by a Seifert matrix the cover is known
/// only through its homology; the result is then the minimum of θ₁ alone.
pub fn theta_lower(k: &KnotSpec, caps: &SearchCaps) -> Result<ThetaBound, ThetaError> {
    theta_lower_cached(k, caps, None)
}

/// [`theta_lower`] with signature tables read through `cache`.
pub fn theta_lower_cached(
    k: &KnotSpec,
    caps: &SearchCaps,
    cache: Option<&TableCache>,
) -> Result<ThetaBound, ThetaError> {
    match branched_double_cover(k) {
        BranchedCover::Lens(y) => {
            let ctx = CgPairContext::with_cache(&y, cache)?;
            let objective = PairObjective::KnotSigned {
                knot_signature: knot_invariants(k).signature,
            };
            minimize(&y.h1(), Some((&ctx, objective)), caps)
        }
        BranchedCover::Homology(g) => {
            let mut r = minimize(&g, None, caps)?;
            r.notes.push(
                "cover known only through H1: Casson–Gordon term omitted, value is min θ₁".into(),
            );
            Ok(r)
        }
    }
}

/// Lower bound for Θ(Y), hence for the embedding number of `Y`.
pub fn theta_cap(y: &LensSpaceSum, caps: &SearchCaps) -> Result<ThetaBound, ThetaError> {
    let ctx = CgPairContext::new(y)?;
    let mut r = minimize(&y.h1(), Some((&ctx, PairObjective::Difference)), caps)?;
    r.notes.push("lower bound for the embedding number".into());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casson_gordon::LensSpace;
    use crate::knots::{KnotSpec, TwoBridgeKnot};
    use crate::rational::ratio;

    fn j(n: usize) -> KnotSpec {
        KnotSpec::two_bridge_power(TwoBridgeKnot::new(9, 4).unwrap(), n)
    }

    #[test]
    fn single_nine_fourths() {
        let r = theta_lower(&j(1), &SearchCaps::default()).unwrap();
        assert_eq!(r.value(), &ratio(1, 1));
        assert_eq!(r.ceiling, BigInt::from(1));
        assert_eq!(r.status, Status::Complete);
    }

    #[test]
    fn double_nine_fourths() {
        let r = theta_lower(&j(2), &SearchCaps::default()).unwrap();
        assert_eq!(r.value(), &ratio(2, 9));
        assert_eq!(r.ceiling, BigInt::from(1));
        assert_eq!(r.status, Status::Complete);
        let nine = FiniteAbelianGroup::cyclic(9);
        assert_eq!(r.pair, Some((nine.clone(), nine)));
    }

    #[test]
    fn unknot() {
        let r = theta_lower(&KnotSpec::unknot(), &SearchCaps::default()).unwrap();
        assert_eq!(r.value(), &ratio(0, 1));
        assert_eq!(r.status, Status::Complete);
    }

    #[test]
    fn capital_theta() {
        let l = LensSpace::new(9, 4).unwrap();
        let caps = SearchCaps::default();
        assert_eq!(
            theta_cap(&LensSpaceSum::new(vec![l]), &caps)
                .unwrap()
                .value(),
            &ratio(1, 1)
        );
        assert_eq!(
            theta_cap(&LensSpaceSum::sphere(), &caps).unwrap().value(),
            &ratio(0, 1)
        );
        let a = theta_cap(&LensSpaceSum::power(l, 2), &caps).unwrap();
        let b = theta_cap(&LensSpaceSum::power(l, 2), &caps).unwrap();
        assert!(a.value() >= &ratio(0, 1));
        assert_eq!(a, b);
    }

    #[test]
    fn pair_cap_marks_incomplete() {
        let caps = SearchCaps {
            max_pairs: 2,
            ..SearchCaps::default()
        };
        let r = theta_lower(&j(2), &caps).unwrap();
        assert_eq!(r.status, Status::Incomplete);
        assert_eq!(r.value(), &ratio(0, 1));
    }

    #[test]
    fn hom_cap_falls_back_to_counting() {
        let caps = SearchCaps {
            max_homs: 5,
            ..SearchCaps::default()
        };
        let r = theta_lower(&j(2), &caps).unwrap();
        assert_eq!(r.status, Status::Incomplete);
        // the (Z9, Z9) pair is scored by θ₁ = 0 alone
        assert_eq!(r.value(), &ratio(0, 1));
    }
}
