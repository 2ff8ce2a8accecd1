//! Exact computations on coadjoint representations of algebraic Lie
//! algebras: index, semi-invariants, adapted pairs and slice diagnostics,
//! specialized to truncated biparabolic subalgebras of simple Lie algebras.

#![allow(clippy::needless_range_loop)]

pub mod adapted;
pub mod biparabolic;
pub mod catalog;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod roots;
pub mod slices;

pub use adapted::{
    equivalence_check, search_adapted_pairs, solve_h_from_support, verify_adapted_pair, verify_biparabolic_pair,
    AdaptedPairCandidate, AdaptedPairReport, BiparabolicPair, BiparabolicPairReport, ComplementSpec, Equivalence, HSolution,
    SearchReport, StructuralVerdicts,
};
pub use biparabolic::{
    compute_truncation, truncation_identity_check, BiparabolicSpec, IdentityCheck, TruncatedBiparabolic, TruncationMode,
};
pub use catalog::CatalogEntry;
pub use error::{Error, Result, ViolationKind};
pub use invariants::{semi_invariants, GradedSolveReport, InvariantPoly};
pub use lie::{DualVector, LieAlgebra, Sparse};
pub use linalg::{Matrix, MultiPoly, Scalar};
pub use roots::{ChevalleyConstants, RootSystem, WeylElement};
pub use slices::{SampleSpec, SectionSpec};
