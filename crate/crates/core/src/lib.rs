//! Spectra of Bochner-Kodaira Laplacians on positive line bundles.
//!
//! The crate computes eigenvalues and multiplicities of `Delta_0` on
//! `L^B (x) T^q` over flat tori, projective spaces and (for the first two
//! levels) Grassmannians, and cross-checks them three ways:
//!
//! * [`charclass`] counts multiplicities with exact Todd/Chern arithmetic;
//! * [`exppoly`] realises the torus ladder operators on theta functions;
//! * [`lattice`] and [`galerkin`] solve the eigenproblem numerically on the
//!   torus and on `P^1`.
//!
//! [`spectra`] holds the closed-form tables the checks are measured against.

pub mod charclass;
pub mod error;
pub mod exact;
pub mod exppoly;
pub mod galerkin;
pub mod lattice;
pub mod report;
pub mod spectra;

pub use error::{Error, Result};
