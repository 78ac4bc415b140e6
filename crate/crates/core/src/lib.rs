//! Exactly solvable PT-symmetric Eckart, Pöschl-Teller and Hulthén models.
//!
//! The crate evaluates the closed-form bound-state spectra and eigenfunctions
//! of the three families on regularizing complex contours, implements the
//! Liouville change of variables that links the shifted-line Pöschl-Teller
//! problem to the Hulthén problem on a down-bent arch, and cross-checks every
//! closed form against an independent finite-difference eigensolver running
//! on the same contour.
//!
//! Module map:
//!
//! - [`special`]: Pochhammer symbols, terminating ₂F₁, Jacobi polynomials.
//! - [`potentials`]: pointwise potentials and the PT-symmetry defect.
//! - [`contour`]: shifted line, arch, Liouville maps, wave-function transport.
//! - [`spectra`]: level enumeration and analytic eigenfunctions.
//! - [`numeric`]: discretized Hamiltonians, eigensolvers, verification.
//! - [`cli`]: the command-line front end (library side).

pub mod cli;
pub mod contour;
mod ddouble;
pub mod error;
pub mod numeric;
pub mod par;
pub mod potentials;
pub mod special;
pub mod spectra;

pub use error::{Error, Result};

/// Complex scalar used for couplings, coordinates and wave-function values.
pub type ComplexScalar = num_complex::Complex64;

pub use num_complex::Complex64;
