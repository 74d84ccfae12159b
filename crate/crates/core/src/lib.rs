//! Exact verification of 3-Lie algebras, their representations and
//! cohomology, and 2-term 3-Lie∞ algebras together with the constructions
//! that relate them to quadruples, crossed modules and symplectic structures.
//!
//! Every identity is checked by exhaustive evaluation on basis tuples over
//! exact rationals; results come back as a [`VerificationReport`] listing
//! each failing tuple with both sides of the equation.

pub mod error;
pub mod exactlin;
pub mod fundobj;
pub mod homotopy;
pub mod report;
pub mod cohomology;
pub mod corpus;
pub mod correspondences;
pub mod trilie;

pub use cohomology::{coboundary, cochain_blocks, delta_squared_zero, is_cocycle, Cochain};
pub use correspondences::{
    build_skeletal, build_strict_from_crossed_module, build_strict_from_symplectic, check_symplectic,
    extract_crossed_module, extract_quadruple, induced_pre_lie, pre_lie_commutator, symplectic_pipeline_report,
    verify_crossed_module, verify_pre_lie, CrossedModule, SkeletalQuadruple, SymplecticThreeLie, ThreePreLie,
};
pub use error::{Error, Result};
pub use exactlin::{invert, nullspace, skew_canon, solve_linear, Block, BlockTensor, Matrix, Scalar, Vector};
pub use fundobj::{
    evaluate_lod_relations, find_lod_violation, induced_bracket, verify_lod_relations, InducedBrackets, WedgeElement,
    WedgeKey,
};
pub use homotopy::{
    compose_homomorphisms, horizontal_compose, identity_homomorphism, l5_blocks, phi2_blocks, verify_homomorphism,
    verify_two_homomorphism, verify_two_term, vertical_compose, Graded, Homomorphism, ThreeLie2Algebra,
    TwoHomomorphism,
};
pub use report::{Failure, VerificationReport};
pub use trilie::{action_blocks, bracket_blocks, numbered_labels, FundamentalElement, Representation, ThreeLieAlgebra};
