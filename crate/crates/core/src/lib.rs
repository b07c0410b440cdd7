//! Mahler measures of the family `R_t(x, y) = t(x^m - 1) y - (x^n - 1)`.
//!
//! Three independent routes are provided and cross-checked:
//!
//! - [`mahler::quadrature_measure`] integrates the Jensen reduction of the
//!   measure over the upper half circle with adaptive Gauss-Kronrod panels.
//! - [`mahler::closed_form_measure`] sums exact Bloch-Wigner antiderivatives
//!   over the arcs where `|y| >= t`.
//! - [`polygons::enumerate_polygons`] builds one admissible cyclic polygon per
//!   unit-circle root and sums the volumes of the ideal polyhedra over them.
//!
//! The [`apoly`] module carries the gluing-equation side: the exponent matrix,
//! an exact symplectic identity check, and the `x = y = 1` solution set.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod apoly;
pub mod dilog;
mod error;
mod math;
pub mod mahler;
pub mod polygons;
pub mod quadrature;
pub mod spectrum;
mod sum;

pub use dilog::{AngleRadians, ComplexValue};
pub use error::{Error, Result};
pub use spectrum::FamilyParams;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
