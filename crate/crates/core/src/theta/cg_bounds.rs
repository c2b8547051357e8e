//! θ₂ and θ₃: Casson–Gordon estimates for a fixed pair `(G₁, G₂)`.
//!
//! For a surjection `ι: H₁(Y) → G₁ ⊕ G₂` with components `ι₁, ι₂`, and a
//! prime `p`, the characters on side `i` are `j ∘ ι_i` for
//! `j ∈ Hom(G_i, Z_{p^e})`, where `p^e` is the `p`-part of the exponent of
//! `G_i`; the trivial character is always among them. Both sides use the
//! same prime. A prime not dividing `|G₁ ⊕ G₂|` contributes only trivial
//! characters and is always included.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::ThetaError;
use crate::abelian::primes::valuation;
use crate::abelian::{FiniteAbelianGroup, HomSpace};
use crate::casson_gordon::{LensSpace, LensSpaceSum, LensTable, TableCache};

/// Which Casson–Gordon estimate to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairObjective {
    /// `|σ(φ₁) − σ(φ₂)| − ξ_p(G₁ ⊕ G₂)`.
    Difference,
    /// `Σ_i max(0, |σ(φ_i) + σ(K)| − ξ_p(G_i))`.
    KnotSigned { knot_signature: i64 },
}

/// Signature tables for each summand of a lens space sum.
#[derive(Clone, Debug)]
pub struct CgPairContext {
    orders: Vec<u64>,
    tables: Vec<LensTable>,
}

impl CgPairContext {
    pub fn new(y: &LensSpaceSum) -> Result<Self, ThetaError> {
        Self::with_cache(y, None)
    }

    /// Reads and fills `cache` when given.
    pub fn with_cache(y: &LensSpaceSum, cache: Option<&TableCache>) -> Result<Self, ThetaError> {
        let mut seen: HashMap<LensSpace, LensTable> = HashMap::new();
        let mut tables = Vec::with_capacity(y.len());
        for l in y.summands() {
            if !seen.contains_key(l) {
                let table = match cache {
                    Some(c) => c.lens_table(l)?,
                    None => LensTable::new(l)?,
                };
                seen.insert(*l, table);
            }
            tables.push(seen[l].clone());
        }
        Ok(CgPairContext {
            orders: y.generator_orders(),
            tables,
        })
    }

    /// `σ(Y, φ)` for the character taking generator `j` to `values[j] ∈ Z_modulus`.
    fn sigma(&self, modulus: u64, values: &[u64]) -> BigRational {
        let mut total = BigRational::zero();
        for ((&v, &p), t) in values.iter().zip(&self.orders).zip(&self.tables) {
            if v != 0 {
                let a = (v as u128 * p as u128 / modulus as u128) % p as u128;
                total += t.get(a as u64);
            }
        }
        total
    }
}

/// Characters `G_i → Z_{p^e}` of one side, by their values on the generators.
struct SideCharacters {
    modulus: u64,
    offset: usize,
    chars: Vec<Vec<u64>>,
    xi: usize,
}

struct PrimeData {
    sides: [SideCharacters; 2],
    xi_sum: usize,
}

fn side_characters(
    g: &FiniteAbelianGroup,
    orders: &[u64],
    offset: usize,
    p: u64,
    cap: u64,
) -> Result<SideCharacters, ThetaError> {
    let e = valuation(&g.exponent(), p);
    let modulus = p.checked_pow(e).ok_or(ThetaError::CapExceeded {
        what: "character modulus",
        count: u128::MAX,
        cap: u64::MAX as u128,
    })?;
    let space = HomSpace::new(orders, &[modulus]);
    space.check_cap(cap)?;
    let chars = space
        .iter()
        .map(|images| images.into_iter().map(|v| v[0]).collect())
        .collect();
    Ok(SideCharacters {
        modulus,
        offset,
        chars,
        xi: g.xi_p(p)?,
    })
}

/// Outcome of minimizing over surjections for one pair.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct PairEval {
    /// The minimum, or a value `≤ stop_at` once one was seen.
    pub value: BigRational,
    pub stopped_early: bool,
}

fn half(q: BigRational) -> BigRational {
    q / BigInt::from(2)
}

/// `min_ι max_p (½ · objective)`, stopping as soon as some `ι` gives a value
/// `≤ stop_at`.
pub(crate) fn evaluate_pair(
    ctx: &CgPairContext,
    g1: &FiniteAbelianGroup,
    g2: &FiniteAbelianGroup,
    objective: PairObjective,
    max_homs: u64,
    stop_at: Option<&BigRational>,
) -> Result<PairEval, ThetaError> {
    let too_big = || ThetaError::CapExceeded {
        what: "group order",
        count: u128::MAX,
        cap: u64::MAX as u128,
    };
    let o1 = g1.orders_u64().ok_or_else(too_big)?;
    let o2 = g2.orders_u64().ok_or_else(too_big)?;
    let codomain: Vec<u64> = o1.iter().chain(&o2).copied().collect();
    let homs = HomSpace::new(&ctx.orders, &codomain);
    if homs.count() > max_homs as u128 {
        return Err(ThetaError::CapExceeded {
            what: "homomorphisms H1 -> G1+G2",
            count: homs.count(),
            cap: max_homs as u128,
        });
    }
    let sum = g1.direct_sum(g2);
    let primes: Vec<PrimeData> = sum
        .primes()
        .into_iter()
        .map(|p| {
            Ok(PrimeData {
                sides: [
                    side_characters(g1, &o1, 0, p, max_homs)?,
                    side_characters(g2, &o2, o1.len(), p, max_homs)?,
                ],
                xi_sum: sum.xi_p(p)?,
            })
        })
        .collect::<Result<_, ThetaError>>()?;
    let baseline = match objective {
        PairObjective::Difference => BigRational::zero(),
        PairObjective::KnotSigned { knot_signature } => {
            BigRational::from_integer(BigInt::from(knot_signature.abs()))
        }
    };

    let value_at = |images: &[Vec<u64>]| -> BigRational {
        let mut best = baseline.clone();
        for pd in &primes {
            let sigmas: Vec<Vec<BigRational>> = pd
                .sides
                .iter()
                .map(|side| {
                    side.chars
                        .iter()
                        .map(|c| {
                            let phi: Vec<u64> = images
                                .iter()
                                .map(|img| {
                                    c.iter()
                                        .enumerate()
                                        .map(|(t, &ct)| ct as u128 * img[side.offset + t] as u128)
                                        .sum::<u128>()
                                        .rem_euclid(side.modulus as u128)
                                        as u64
                                })
                                .collect();
                            ctx.sigma(side.modulus, &phi)
                        })
                        .collect()
                })
                .collect();
            let v = match objective {
                PairObjective::Difference => {
                    let (lo1, hi1) = min_max(&sigmas[0]);
                    let (lo2, hi2) = min_max(&sigmas[1]);
                    let d = (hi1 - &lo2).max(hi2 - &lo1);
                    d - BigInt::from(pd.xi_sum)
                }
                PairObjective::KnotSigned { knot_signature } => {
                    let sk = BigRational::from_integer(BigInt::from(knot_signature));
                    let mut total = BigRational::zero();
                    for (side, s) in pd.sides.iter().zip(&sigmas) {
                        let xi = BigRational::from_integer(BigInt::from(side.xi));
                        total += s
                            .iter()
                            .map(|x| (x + &sk).abs() - &xi)
                            .max()
                            .unwrap_or_else(BigRational::zero)
                            .max(BigRational::zero());
                    }
                    total
                }
            };
            let v = half(v);
            if v > best {
                best = v;
            }
        }
        best
    };

    let stop = AtomicBool::new(false);
    const CHUNK: u64 = 512;
    let total = homs.count() as u64;
    let chunks = total.div_ceil(CHUNK);
    let best: Option<BigRational> = (0..chunks)
        .into_par_iter()
        .filter_map(|chunk| {
            if stop.load(Ordering::Relaxed) {
                return None;
            }
            let mut local: Option<BigRational> = None;
            for idx in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let images = homs.nth(idx as u128);
                if !homs.is_surjective(&images) {
                    continue;
                }
                let v = value_at(&images);
                if stop_at.is_some_and(|s| &v <= s) {
                    stop.store(true, Ordering::Relaxed);
                }
                if local.as_ref().is_none_or(|l| &v < l) {
                    local = Some(v);
                }
                if stop.load(Ordering::Relaxed) {
                    break;
                }
            }
            local
        })
        .min();
    let stopped_early = stop.load(Ordering::Relaxed);
    match best {
        Some(value) => Ok(PairEval {
            value,
            stopped_early,
        }),
        None => Err(ThetaError::NoSurjection { target: sum }),
    }
}

fn min_max(v: &[BigRational]) -> (BigRational, BigRational) {
    let lo = v.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let hi = v.iter().max().cloned().unwrap_or_else(BigRational::zero);
    (lo, hi)
}

/// θ₂ for a pair: `½ · min_ι max_{p, φ₁, φ₂} (|σ(Y,φ₁) − σ(Y,φ₂)| − ξ_p(G₁⊕G₂))`.
pub fn theta2_pair(
    y: &LensSpaceSum,
    g1: &FiniteAbelianGroup,
    g2: &FiniteAbelianGroup,
    max_homs: u64,
) -> Result<BigRational, ThetaError> {
    let ctx = CgPairContext::new(y)?;
    Ok(evaluate_pair(&ctx, g1, g2, PairObjective::Difference, max_homs, None)?.value)
}

/// θ₃ for a pair, for a knot with branched double cover `y` and signature
/// `knot_signature`.
pub fn theta3_pair(
    y: &LensSpaceSum,
    knot_signature: i64,
    g1: &FiniteAbelianGroup,
    g2: &FiniteAbelianGroup,
    max_homs: u64,
) -> Result<BigRational, ThetaError> {
    let ctx = CgPairContext::new(y)?;
    let objective = PairObjective::KnotSigned { knot_signature };
    Ok(evaluate_pair(&ctx, g1, g2, objective, max_homs, None)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casson_gordon::{cg_sigma, Character};
    use crate::rational::ratio;

    fn l94(n: usize) -> LensSpaceSum {
        LensSpaceSum::power(LensSpace::new(9, 4).unwrap(), n)
    }

    fn grp(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_orders_u64(orders)
    }

    fn zero() -> FiniteAbelianGroup {
        FiniteAbelianGroup::trivial()
    }

    const CAP: u64 = 1_000_000;

    #[test]
    fn theta2_examples() {
        assert_eq!(
            theta2_pair(&l94(1), &zero(), &zero(), CAP).unwrap(),
            ratio(0, 1)
        );
        assert_eq!(
            theta2_pair(&l94(1), &grp(&[9]), &zero(), CAP).unwrap(),
            ratio(1, 9)
        );
        assert_eq!(
            theta2_pair(&LensSpaceSum::sphere(), &zero(), &zero(), CAP).unwrap(),
            ratio(0, 1)
        );
    }

    #[test]
    fn theta3_examples() {
        assert_eq!(
            theta3_pair(&l94(1), 0, &grp(&[3]), &zero(), CAP).unwrap(),
            ratio(0, 1)
        );
        assert_eq!(
            theta3_pair(&l94(1), 0, &zero(), &zero(), CAP).unwrap(),
            ratio(0, 1)
        );
        assert_eq!(
            theta3_pair(&l94(2), 0, &grp(&[9]), &grp(&[9]), CAP).unwrap(),
            ratio(2, 9)
        );
    }

    #[test]
    fn knot_signature_enters_baseline() {
        // trivial pair: only the trivial characters, each side gives |σ(K)|
        assert_eq!(
            theta3_pair(&l94(1), 2, &zero(), &zero(), CAP).unwrap(),
            ratio(2, 1)
        );
    }

    #[test]
    fn no_surjection() {
        assert!(matches!(
            theta2_pair(&l94(1), &grp(&[3]), &grp(&[3]), CAP),
            Err(ThetaError::NoSurjection { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            theta2_pair(&l94(2), &grp(&[9]), &grp(&[9]), 10),
            Err(ThetaError::CapExceeded { .. })
        ));
    }

    /// Independent evaluation for the identity surjection of `Z_9²` onto
    /// `Z_9 ⊕ Z_9`: all 81² ordered pairs of characters `Z_9² → Z_9`
    /// factoring through each side, scored directly through `cg_sigma`.
    #[test]
    fn identity_surjection_brute_force() {
        let y = l94(2);
        let mut best = None::<BigRational>;
        for a in 0..9u64 {
            for b in 0..9u64 {
                for c in 0..9u64 {
                    for d in 0..9u64 {
                        // phi1 = (a, b), phi2 = (c, d); factoring through side i
                        // means phi1 kills the second generator and phi2 the first
                        if b != 0 || c != 0 {
                            continue;
                        }
                        let s1 = cg_sigma(&y, &Character::new(9, vec![a, b])).unwrap();
                        let s2 = cg_sigma(&y, &Character::new(9, vec![c, d])).unwrap();
                        let xi = BigRational::from_integer(BigInt::from(1));
                        let term = |s: BigRational| (s.abs() - &xi).max(BigRational::zero());
                        let v = (term(s1.into_inner()) + term(s2.into_inner())) / BigInt::from(2);
                        if best.as_ref().is_none_or(|b| &v > b) {
                            best = Some(v);
                        }
                    }
                }
            }
        }
        assert_eq!(best.unwrap(), ratio(2, 9));
    }

    #[test]
    fn early_stop_returns_a_value_at_most_the_threshold() {
        let ctx = CgPairContext::new(&l94(2)).unwrap();
        let objective = PairObjective::KnotSigned { knot_signature: 0 };
        let threshold = ratio(1, 1);
        let r = evaluate_pair(
            &ctx,
            &grp(&[9]),
            &grp(&[9]),
            objective,
            CAP,
            Some(&threshold),
        )
        .unwrap();
        assert!(r.value <= threshold);
        let full = evaluate_pair(&ctx, &grp(&[9]), &grp(&[9]), objective, CAP, None).unwrap();
        assert_eq!(full.value, ratio(2, 9));
        assert!(!full.stopped_early);
    }
}
