//! The θ-family of lower bounds for the double slice genus.
//!
//! A knot `K` with branched double cover `Σ` is bounded below by
//! `θ(K) = min_{(G₁,G₂)} max(θ₁, θ₃)` and `Σ` itself by
//! `Θ(Σ) = min_{(G₁,G₂)} max(θ₁, θ₂)`. The minimum here runs over
//! [`candidate_pairs`], a computable superset of the pairs that can actually
//! occur, so every reported value stays a lower bound.
//!
//! [`theta1_lower`] is the counting bound used inside the minimum;
//! [`theta1_search`] looks for explicit relation certificates and only
//! tightens the per-pair interval. The [`selection`] submodule holds the
//! character-selection construction for sums of `L(9,4)` and
//! [`main_theorem_bound`] evaluates the closed-form estimate for `#ᴺ 2b(9/4)`.

mod cg_bounds;
mod combined;
mod main_theorem;
mod pairs;
pub mod selection;
mod theta1;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::abelian::{AbelianError, FiniteAbelianGroup};
use crate::casson_gordon::CgError;

pub use cg_bounds::{theta2_pair, theta3_pair, CgPairContext, PairObjective};
pub use combined::{theta_cap, theta_lower, theta_lower_cached, PairValue, Status, ThetaBound};
pub use main_theorem::{main_theorem_bound, main_theorem_estimate};
pub use pairs::{candidate_pairs, PairCandidate, PairChecks};
pub use selection::{
    lemma_a2_reduce, prop_a_character, CharacterChoice, LemmaA2Reduction, SurjectionMatrix,
};
pub use theta1::{theta1_lower, theta1_search, AdmissibilityCertificate, Theta1Search};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThetaError {
    #[error("{what}: {count} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: u128,
    },
    #[error("no surjection from H1 onto {target}")]
    NoSurjection { target: FiniteAbelianGroup },
    #[error("the branched double cover is only known through its homology")]
    CoverUnavailable,
    #[error("matrix does not define a surjection onto Z_9^{m}")]
    NotSurjective { m: usize },
    #[error("invalid surjection matrix: {0}")]
    InvalidMatrix(String),
    #[error("internal postcondition violated: {0}")]
    PostconditionViolated(String),
    #[error(transparent)]
    CassonGordon(#[from] CgError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Limits on the exhaustive searches. Hitting any of them marks a result
/// incomplete rather than failing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCaps {
    /// Bound on the number of ordered pairs of quotient classes examined.
    pub max_pairs: usize,
    /// Bound on `|Hom(H₁, G₁⊕G₂)|` per pair.
    pub max_homs: u64,
    /// Largest `n₁ + n₂` tried by the certificate search.
    pub max_n: usize,
    /// Largest diagonal entry of a relation matrix in Hermite form; `None`
    /// means the exponent of the group.
    pub entry_bound: Option<u64>,
    /// Bound on relation matrices examined per value of `n₁ + n₂`.
    pub max_candidates: u64,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_pairs: 10_000,
            max_homs: 10_000_000,
            max_n: 3,
            entry_bound: None,
            max_candidates: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Counting cyclic summands.
    Counting,
    /// Exhaustive enumeration of homomorphisms and characters.
    Enumeration,
    /// An explicit, re-verified certificate.
    Certificate,
    /// The closed-form estimate for powers of `2b(9/4)`.
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Counting => "counting",
            Method::Enumeration => "enumeration",
            Method::Certificate => "certificate",
            Method::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Admissibility(Box<AdmissibilityCertificate>),
    Character(CharacterChoice),
}

/// `lower ≤ value ≤ upper`, with `upper = None` meaning unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundInterval {
    pub lower: BigRational,
    pub upper: Option<BigRational>,
    pub method: Method,
    pub certificate: Option<Certificate>,
}

impl BoundInterval {
    pub fn lower_only(lower: BigRational, method: Method) -> Self {
        BoundInterval {
            lower,
            upper: None,
            method,
            certificate: None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.upper.as_ref().is_none_or(|u| &self.lower <= u)
    }

    pub fn is_exact(&self) -> bool {
        self.upper.as_ref() == Some(&self.lower)
    }
}
