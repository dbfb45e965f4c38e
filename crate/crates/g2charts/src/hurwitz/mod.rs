//! Hurwitz systems: structured factor lists, moves, fiber sums and counts.

pub mod search;
pub mod system;

pub use search::{equivalence_search, replay, DistinctWitness, Equivalence, HurwitzStep, SearchBudget};
pub use system::{
    basic_system, BasicName, FactorClass, FactorKind, FiberCounts, FiberType, HurwitzError, HurwitzFactor,
    HurwitzSystem, MoveDirection,
};
