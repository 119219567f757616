//! Finite permutation groups.

pub mod affine;
pub mod chain;
pub mod group;
pub mod ksolvable;
pub mod pair;
pub mod permutation;

use thiserror::Error;

pub use affine::{classify_primitive_solvable_with_cycle, PrimitiveSolvableClass};
pub use chain::StabChain;
pub use group::PermGroup;
pub use ksolvable::{is_k_solvable, nonabelian_composition_factors, KSolvability, SimpleFactor};
pub use pair::{AlmostNormalWitness, GroupPair};
pub use permutation::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a bijection")]
    NotABijection,
    #[error("bad cycle notation: {0}")]
    BadCycleNotation(String),
    #[error("generators of different degrees")]
    DegreeMismatch,
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("search budget exceeded ({what}, budget {budget})")]
    SearchBudgetExceeded { what: String, budget: u128 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}
