//! Exact combinatorics of depth-zero characters on covering tori.
//!
//! The crate computes, over a tamely ramified local field with residue size `q`,
//! the twisted affine root system attached to a depth-zero character of a
//! covering torus, the stabilizer groups and their extended variants, the
//! associated Hecke algebra presentation, and the comparison with the
//! endoscopic (linear) side.
//!
//! Everything is exact: integers, residues mod `q - 1`, and rationals. No
//! floating point enters until a consumer rasterizes geometry for display.

#![no_std]

extern crate alloc;

pub mod chi_geometry;
pub mod cover_torus;
pub mod hecke_algebra;
pub mod linalg;
pub mod quad_cover;
pub mod rng;
pub mod root_datum;
pub mod shimura;
pub mod tame_arith;

pub use num_rational::Ratio;

/// Exact scalar used for alcove points and shift vectors.
pub type Rat = Ratio<i64>;
