//! The JSON document printed by `dslice bound`.
//!
//! Field order is the declaration order below and never changes. Every
//! rational is a reduced `num/den` string; integers that may grow without
//! bound (the determinant, invariant factors) are decimal strings.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::abelian::FiniteAbelianGroup;
use crate::knots::{GenusBounds, KnotInvariants, KnotSpec};
use crate::rational;
use crate::theta::{PairValue, Status, Theta1Search, ThetaBound};

pub const SMOOTH_LOWER: &str = "smooth-lower";
pub const TOPOLOGICAL_UPPER: &str = "topological-upper";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub value: u64,
    pub category: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopUpper {
    pub value: u64,
    pub category: &'static str,
    /// Set when the upper bound is known to be attained.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleSliceUpper {
    pub value: u64,
    pub category: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaSummary {
    pub value: String,
    pub ceiling: i64,
    pub method: &'static str,
    /// The candidate pair attaining the minimum, when one was evaluated.
    pub pair: Option<[String; 2]>,
    /// Both characters of a Casson–Gordon term have the same prime.
    pub character_primes: &'static str,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairInterval {
    pub g1: String,
    pub g2: String,
    pub theta1_lower: String,
    /// Smallest certified `n₁ + n₂`, when the search found one.
    pub search_upper: Option<String>,
    /// Every smaller total was refuted, so `search_upper` is θ₁ itself.
    pub exact: bool,
    /// Totals shown to admit no extension.
    pub refuted: Vec<u64>,
    pub cg: Option<String>,
    pub value: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub knot: String,
    pub h1_cover: Vec<String>,
    pub signature: i64,
    pub determinant: String,
    pub alexander_degree: u64,
    pub superslice_lower: LowerBound,
    pub superslice_top_upper: TopUpper,
    pub double_slice_top_upper: Option<DoubleSliceUpper>,
    pub theta_lower: ThetaSummary,
    pub theta1_intervals: Option<Vec<PairInterval>>,
    pub status: &'static str,
}

fn factors(g: &FiniteAbelianGroup) -> Vec<String> {
    g.factors().iter().map(ToString::to_string).collect()
}

fn opt(q: &Option<BigRational>) -> Option<String> {
    q.as_ref().map(rational::format)
}

impl PairInterval {
    pub fn new(pv: &PairValue, search: Option<&Theta1Search>) -> Self {
        PairInterval {
            g1: pv.g1.to_string(),
            g2: pv.g2.to_string(),
            theta1_lower: rational::format(&pv.theta1),
            search_upper: search.and_then(|s| opt(&s.interval.upper)),
            exact: search.is_some_and(|s| s.exact().is_some()),
            refuted: search
                .map_or_else(Vec::new, |s| s.refuted.iter().map(|&n| n as u64).collect()),
            cg: opt(&pv.cg),
            value: opt(&pv.value),
            note: pv.note.clone(),
        }
    }
}

impl BoundReport {
    pub fn new(
        knot: &KnotSpec,
        inv: &KnotInvariants,
        genus: &GenusBounds,
        theta: &ThetaBound,
        intervals: Option<Vec<PairInterval>>,
    ) -> Self {
        BoundReport {
            knot: knot.to_string(),
            h1_cover: factors(&inv.h1_cover),
            signature: inv.signature,
            determinant: inv.determinant.to_string(),
            alexander_degree: inv.alexander_degree() as u64,
            superslice_lower: LowerBound {
                value: genus.superslice_lower as u64,
                category: SMOOTH_LOWER,
            },
            superslice_top_upper: TopUpper {
                value: genus.superslice_top_upper as u64,
                category: TOPOLOGICAL_UPPER,
                exact: genus.superslice_top_exact.is_some(),
            },
            double_slice_top_upper: genus.double_slice_top_upper.map(|v| DoubleSliceUpper {
                value: v as u64,
                category: TOPOLOGICAL_UPPER,
            }),
            theta_lower: ThetaSummary {
                value: rational::format(theta.value()),
                ceiling: theta.ceiling.to_i64().expect("ceiling fits in i64"),
                method: theta.interval.method.as_str(),
                pair: theta
                    .pair
                    .as_ref()
                    .map(|(a, b)| [a.to_string(), b.to_string()]),
                character_primes: "same",
                notes: theta.notes.clone(),
            },
            theta1_intervals: intervals,
            status: theta.status.as_str(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete.as_str()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
