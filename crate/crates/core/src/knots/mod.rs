//! Knot input and classical invariants.
//!
//! A [`KnotSpec`] is a connected sum of two-bridge knots and knots given by a
//! Seifert matrix. For all-two-bridge sums the branched double cover is the
//! connected sum of lens spaces; otherwise only its first homology is known.

mod seifert;
mod two_bridge;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::abelian::{cokernel, FiniteAbelianGroup, FreeExtension};
use crate::casson_gordon::LensSpaceSum;

pub use seifert::{signature, AlexanderPolynomial, SeifertMatrix};
pub use two_bridge::{seifert_from_two_bridge, TwoBridgeKnot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("p must be odd and at least 3 for a two-bridge knot (got {p})")]
    EvenP { p: u64 },
    #[error("q = {q} out of range 0 < q < {p}")]
    QOutOfRange { p: u64, q: u64 },
    #[error("gcd({p}, {q}) ≠ 1")]
    NotCoprime { p: u64, q: u64 },
    #[error("Seifert matrix must be square (got {rows}x{cols})")]
    NonSquareSeifert { rows: usize, cols: usize },
    #[error("Seifert matrix must have even size and det(V - Vᵀ) = 1 (got {det})")]
    NonUnimodularSeifert { det: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotSummand {
    TwoBridge(TwoBridgeKnot),
    Seifert(SeifertMatrix),
}

impl KnotSummand {
    pub fn seifert_matrix(&self) -> SeifertMatrix {
        match self {
            KnotSummand::TwoBridge(k) => seifert_from_two_bridge(k),
            KnotSummand::Seifert(v) => v.clone(),
        }
    }
}

/// A connected sum of knots; the empty sum is the unknot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct KnotSpec {
    pub summands: Vec<KnotSummand>,
    /// User assertion that the knot is ribbon.
    pub ribbon: bool,
}

impl KnotSpec {
    pub fn unknot() -> Self {
        Self::default()
    }

    pub fn two_bridge_power(k: TwoBridgeKnot, n: usize) -> Self {
        KnotSpec {
            summands: vec![KnotSummand::TwoBridge(k); n],
            ribbon: false,
        }
    }

    pub fn with_ribbon(mut self, ribbon: bool) -> Self {
        self.ribbon = ribbon;
        self
    }

    pub fn is_unknot(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_all_two_bridge(&self) -> bool {
        self.summands
            .iter()
            .all(|s| matches!(s, KnotSummand::TwoBridge(_)))
    }

    /// `Some(n)` when the knot is `#ⁿ K` for a single two-bridge knot `K`.
    pub fn two_bridge_power_of(&self) -> Option<(TwoBridgeKnot, usize)> {
        let mut first = None;
        for s in &self.summands {
            match (s, first) {
                (KnotSummand::TwoBridge(k), None) => first = Some(*k),
                (KnotSummand::TwoBridge(k), Some(f)) if *k == f => {}
                _ => return None,
            }
        }
        first.map(|k| (k, self.summands.len()))
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            write!(f, "unknot")?;
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " # ")?;
            }
            match s {
                KnotSummand::TwoBridge(k) => write!(f, "{k}")?,
                KnotSummand::Seifert(v) => write!(f, "seifert({})", v.matrix())?,
            }
        }
        if self.ribbon {
            write!(f, " ribbon")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchedCover {
    /// The full manifold, available when every summand is two-bridge.
    Lens(LensSpaceSum),
    /// Only `H₁`, when some summand is given by a Seifert matrix.
    Homology(FiniteAbelianGroup),
}

impl BranchedCover {
    pub fn h1(&self) -> FiniteAbelianGroup {
        match self {
            BranchedCover::Lens(m) => m.h1(),
            BranchedCover::Homology(g) => g.clone(),
        }
    }

    pub fn lens_sum(&self) -> Option<&LensSpaceSum> {
        match self {
            BranchedCover::Lens(m) => Some(m),
            BranchedCover::Homology(_) => None,
        }
    }
}

/// `H₁` of the branched double cover of a Seifert-matrix knot: `coker(V + Vᵀ)`.
pub fn cover_homology(v: &SeifertMatrix) -> FiniteAbelianGroup {
    let n = v.matrix().rows();
    cokernel(&v.symmetrized(), &FreeExtension::free(n))
        .expect("square presentation")
        .finite()
        .expect("knot determinants are odd, hence nonzero")
}

pub fn branched_double_cover(k: &KnotSpec) -> BranchedCover {
    if k.is_all_two_bridge() {
        let lenses = k
            .summands
            .iter()
            .map(|s| match s {
                KnotSummand::TwoBridge(t) => t.lens_space(),
                KnotSummand::Seifert(_) => unreachable!(),
            })
            .collect();
        return BranchedCover::Lens(LensSpaceSum::new(lenses));
    }
    let h1 = k
        .summands
        .iter()
        .map(|s| match s {
            KnotSummand::TwoBridge(t) => FiniteAbelianGroup::cyclic(t.p()),
            KnotSummand::Seifert(v) => cover_homology(v),
        })
        .fold(FiniteAbelianGroup::trivial(), |a, b| a.direct_sum(&b));
    BranchedCover::Homology(h1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInvariants {
    pub signature: i64,
    pub determinant: BigInt,
    pub h1_cover: FiniteAbelianGroup,
    pub alexander: AlexanderPolynomial,
}

impl KnotInvariants {
    pub fn alexander_degree(&self) -> usize {
        self.alexander.degree()
    }
}

pub fn knot_invariants(k: &KnotSpec) -> KnotInvariants {
    let mut signature = 0;
    let mut determinant = BigInt::one();
    let mut alexander = AlexanderPolynomial::unknot();
    for s in &k.summands {
        let v = s.seifert_matrix();
        signature += v.signature();
        determinant *= v.determinant();
        alexander = alexander.product(&v.alexander_polynomial());
    }
    KnotInvariants {
        signature,
        determinant,
        h1_cover: branched_double_cover(k).h1(),
        alexander,
    }
}

/// Superslice and double slice genus bounds read off the cover homology and
/// the Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusBounds {
    /// `⌈min generators of H₁(Σ) / 2⌉ ≤ g^s` (smooth, hence topological).
    pub superslice_lower: usize,
    /// `g^s_top ≤ deg Δ_K`.
    pub superslice_top_upper: usize,
    /// `g^s_top = 1` when `deg Δ_K = 1`.
    pub superslice_top_exact: Option<usize>,
    /// `g_ds^top ≤ deg Δ_K` for ribbon knots.
    pub double_slice_top_upper: Option<usize>,
}

pub fn genus_bounds(inv: &KnotInvariants, ribbon: bool) -> GenusBounds {
    let degree = inv.alexander_degree();
    GenusBounds {
        superslice_lower: inv.h1_cover.min_generators().div_ceil(2),
        superslice_top_upper: degree,
        superslice_top_exact: (degree == 1).then_some(1),
        double_slice_top_upper: ribbon.then_some(degree),
    }
}

pub fn genus_bound_report(k: &KnotSpec) -> GenusBounds {
    genus_bounds(&knot_invariants(k), k.ribbon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::IntMatrix;
    use crate::casson_gordon::LensSpace;

    fn j() -> TwoBridgeKnot {
        TwoBridgeKnot::new(9, 4).unwrap()
    }

    fn trefoil_seifert() -> KnotSpec {
        let v = SeifertMatrix::new(IntMatrix::from_rows(&[vec![-1, 1], vec![0, -1]]).unwrap());
        KnotSpec {
            summands: vec![KnotSummand::Seifert(v.unwrap())],
            ribbon: false,
        }
    }

    #[test]
    fn covers() {
        let l = LensSpace::new(9, 4).unwrap();
        assert_eq!(
            branched_double_cover(&KnotSpec::two_bridge_power(j(), 1)),
            BranchedCover::Lens(LensSpaceSum::new(vec![l]))
        );
        assert_eq!(
            branched_double_cover(&KnotSpec::two_bridge_power(j(), 2)),
            BranchedCover::Lens(LensSpaceSum::power(l, 2))
        );
        assert_eq!(
            branched_double_cover(&trefoil_seifert()),
            BranchedCover::Homology(FiniteAbelianGroup::cyclic(3))
        );
    }

    #[test]
    fn invariants() {
        let t = knot_invariants(&trefoil_seifert());
        assert_eq!((t.signature, t.determinant.clone()), (-2, BigInt::from(3)));
        assert_eq!(t.alexander_degree(), 1);
        let b = knot_invariants(&KnotSpec::two_bridge_power(j(), 1));
        assert_eq!((b.signature, b.determinant), (0, BigInt::from(9)));
        let u = knot_invariants(&KnotSpec::unknot());
        assert_eq!(u.signature, 0);
        assert_eq!(u.determinant, BigInt::one());
        assert_eq!(u.alexander_degree(), 0);
        assert!(u.h1_cover.is_trivial());
    }

    #[test]
    fn bound_reports() {
        let r = genus_bound_report(&KnotSpec::two_bridge_power(j(), 1).with_ribbon(true));
        let deg = knot_invariants(&KnotSpec::two_bridge_power(j(), 1)).alexander_degree();
        assert_eq!(r.superslice_lower, 1);
        assert_eq!(r.double_slice_top_upper, Some(deg));
        let r2 = genus_bound_report(&KnotSpec::two_bridge_power(j(), 2));
        assert_eq!(r2.superslice_lower, 1);
        assert_eq!(r2.double_slice_top_upper, None);
        let u = genus_bound_report(&KnotSpec::unknot());
        assert_eq!((u.superslice_lower, u.superslice_top_upper), (0, 0));
        let t = genus_bound_report(&trefoil_seifert());
        assert_eq!(t.superslice_top_exact, Some(1));
    }

    #[test]
    fn mixed_sums_compose() {
        let v = match &trefoil_seifert().summands[0] {
            KnotSummand::Seifert(v) => v.clone(),
            _ => unreachable!(),
        };
        let mixed = KnotSpec {
            summands: vec![KnotSummand::TwoBridge(j()), KnotSummand::Seifert(v)],
            ribbon: false,
        };
        let inv = knot_invariants(&mixed);
        assert_eq!(inv.h1_cover, FiniteAbelianGroup::from_orders_u64(&[9, 3]));
        assert_eq!(inv.determinant, BigInt::from(27));
        assert_eq!(inv.signature, -2);
        assert_eq!(
            inv.alexander_degree(),
            1 + knot_invariants(&KnotSpec::two_bridge_power(j(), 1)).alexander_degree()
        );
        assert_eq!(inv.alexander.at_minus_one_abs(), inv.determinant);
    }
}
