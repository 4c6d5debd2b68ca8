//! Exact small quantum orbifold cohomology of weighted projective spaces.
//!
//! Everything here is pure rational arithmetic over `alloc`: the inertia-stack
//! combinatorics of `P(w0,...,wn)`, the small quantum product at `t = 0`, the
//! small J-function together with its hypergeometric differential equation,
//! and the I-function / terminal-singularity machinery for weighted
//! projective complete intersections.
//!
//! The companion `orbiqc` crate carries the CLI and the JSON/CSV formats.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod intersection;
pub mod jfunction;
pub mod ring;
pub mod sector;

pub use arith::{rat, Coeff, NovikovScalar, Rational, SectorPoly, ZLaurent};
pub use error::{Error, Result};
pub use sector::{BasisElement, Inertia, OrbClass, Sector, Weights};
