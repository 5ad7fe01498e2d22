//! Numerical noncommutative geometry on the truncated fuzzy sphere.
//!
//! The pipeline runs bottom-up: [`triple`] builds `(A_N, H_N, D_N)`,
//! [`calculus`] gives one- and two-forms with `d`, [`koszul`] solves for the
//! Levi-Civita connection of a bilinear metric, and [`curvature`] computes
//! `R`, Ricci and the scalar curvature.

#![allow(clippy::needless_range_loop)]

pub mod calculus;
pub mod curvature;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod triple;

pub use error::{NcgError, Result};
pub use linalg::{ComplexMatrix, C64};
pub use triple::{build_triple, build_triple_with, Orientation, SpectralTriple};
