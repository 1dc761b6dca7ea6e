//! Finite lattices, their tolerances and congruences, and the construction
//! that exhibits every tolerance of a lattice `L` as the image `phi(theta)`
//! of a congruence `theta` on a larger lattice `K` under a homomorphism
//! `phi: K -> L`.
//!
//! Everything works at desk scale: relations are dense bit matrices, and
//! tolerances are enumerated exhaustively so the construction can be checked
//! on every tolerance of small lattices.

pub mod blocks;
pub mod cli;
pub mod construction;
pub mod document;
pub mod dot;
pub mod error;
pub mod lattice;
pub mod quotient;
pub mod relations;
pub mod report;

pub use blocks::{block_lattice, blocks_of, Block, BlockLattice};
pub use construction::{build_k, verify_theorem1, PairedLattice};
pub use error::{Error, LatticeDefect, Result};
pub use lattice::{find_isomorphism, is_isomorphism, ElementId, IsoMap, Lattice};
pub use quotient::{
    alpha_over_gamma, kernel, quotient, verify_theorem2_converse, verify_theorem2_forward, QuotientLattice,
};
pub use relations::{
    enumerate_congruences, enumerate_congruences_with_cap, enumerate_tolerances, enumerate_tolerances_with_cap,
    image_relation, is_congruence, is_homomorphism, is_tolerance, tolerance_generated_by, BinaryRelation, Homomorphism,
    DEFAULT_ENUMERATION_CAP,
};
pub use report::{Check, VerificationReport};
