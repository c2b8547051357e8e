//! Exact integer linear algebra and finite abelian groups.

mod group;
mod hom;
mod matrix;
pub mod primes;
mod snf;

use thiserror::Error;

pub use group::{cokernel, cokernel_of_presentation, Cokernel, FiniteAbelianGroup, FreeExtension};
pub use hom::{
    enumerate_homomorphisms, inverse_mod, rank_mod_p, HomIter, HomSpace, Homomorphism,
    DEFAULT_HOM_CAP,
};
pub use matrix::IntMatrix;
pub use snf::{invariant_diagonal, smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group has an infinite cyclic summand")]
    InfiniteGroup,
    #[error("image of generator {generator} is incompatible with its order")]
    IncompatibleImage { generator: usize },
    #[error("search space too large: {count} homomorphisms exceeds cap {cap}")]
    SearchSpaceTooLarge { count: u128, cap: u64 },
}
