//! Combinatorial multibranched surfaces.
//!
//! A multibranched surface is a 2-complex obtained by gluing compact surfaces
//! (sectors) to a disjoint union of circles (branches) along covering maps of
//! their boundary circles. This crate represents them combinatorially and
//! computes:
//!
//! * elementary invariants: regularity, branch index and degree, Euler
//!   characteristic, connected components ([`surface`]);
//! * first homology via Smith normal form, and the torsion obstruction to
//!   embedding in `S³` ([`homology`]);
//! * boundary surfaces and dual graphs of neighborhoods, and the resulting
//!   Heegaard genus upper bounds ([`neighborhood`]);
//! * sector removal, annulus contraction, degree reduction, torus sums,
//!   isomorphism, minor enumeration and obstruction-set candidacy
//!   ([`minors`]);
//! * the standard example families ([`builders`]) and a plain-text file
//!   format with JSON and DOT exports ([`format`], [`export`], [`cli`]).

pub mod builders;
pub mod cli;
pub mod error;
pub mod export;
pub mod format;
pub mod homology;
pub mod minors;
pub mod neighborhood;
pub mod surface;

mod dsu;

pub use error::{Error, Result};
pub use surface::{BranchId, MultibranchedSurface, Prebranch, Sector, SectorId};
