//! Lower bounds for the double slice genus and superslice genus of knots.
//!
//! The crate is organized bottom-up:
//!
//! - [`abelian`]: Smith normal form, cokernels, finite abelian groups and
//!   enumeration of homomorphisms between them.
//! - [`casson_gordon`]: exact Casson–Gordon signatures of connected sums of
//!   lens spaces.
//! - [`knots`]: two-bridge knots and Seifert matrices, their classical
//!   invariants and the superslice genus bounds.
//! - [`theta`]: the θ-family of double slice genus lower bounds, the
//!   character-selection construction for sums of `L(9,4)`, and the
//!   closed-form bound for `#ᴺ 2b(9/4)`.
//! - [`cli`]: the knot expression parser, the JSON bound report, and the
//!   `bound` / `cg-table` commands used by the `dslice` binary.

// matrix code indexes rows and columns together
#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod casson_gordon;
pub mod cli;
pub mod knots;
pub mod rational;
pub mod theta;

pub use abelian::{FiniteAbelianGroup, IntMatrix};
pub use casson_gordon::{CGValue, Character, LensSpace, LensSpaceSum};
pub use knots::{KnotSpec, SeifertMatrix, TwoBridgeKnot};
