//! Computations in the endomorphism monoid `End(T_n)` of the full transformation
//! semigroup `T_n`.
//!
//! Transformations compose left to right throughout: `st` first applies `s`,
//! then `t`. The same convention holds for endomorphisms.

pub mod endomorphism;
pub mod error;
pub mod generators;
pub mod monoid;
pub mod pairs;
pub mod presentation;
pub mod structure;
pub mod transformation;
pub mod verify;

pub use endomorphism::{
    enumerate_end, identify, oracle_multiply, oracle_multiply_with, Block, Endomorphism, IdentifyOptions,
    StarOp, TypeTag,
};
pub use error::{Error, Result};
pub use generators::{essential_orbits, minimal_generating_set, orbits, verify_generates, MinimalGeneratingSet, Orbit};
pub use monoid::{ElemId, EndMonoid};
pub use pairs::{count_pairs_for, decompose, enumerate_p, enumerate_pairs_for, is_in_u, PermissiblePair, UDecomposition};
pub use presentation::{presentation, Presentation, Symbol, Word};
pub use structure::{
    abundance_report, count_ideals, enumerate_ideals, extended_partition, fix_set, green_partition, idempotent_partition,
    j_leq, principal_ideals, regular_elements, GreenPartition, Relation, Universe,
};
pub use transformation::{classify, compose, conjugate, enumerate_all, permutations, Parity, TransformClass, Transformation};
