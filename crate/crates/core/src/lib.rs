//! Exact invariants of codimension-two projective toric varieties from the
//! Gale dual matrix `B`: face lattice, local Euler obstructions, Chern-Mather
//! volumes, polar degrees, dual degree and ED degree, with an independent
//! `A`-matrix pipeline for cross-validation.

pub mod characteristic;
pub mod error;
pub mod face;
pub mod gale;
pub mod invariants;
pub mod fixtures;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod report;

pub use characteristic::{compute_report, convert_convention, Convention, InvariantReport};
pub use error::{Error, Result};
pub use face::{enumerate_faces, Face, FaceKind, FaceLattice};
pub use gale::{a_from_gale_dual, gale_dual_from_a, GaleSystem};
pub use matrix::IntegerMatrix;
