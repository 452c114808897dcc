//! Radial calculus and sharp-constant machinery for the p-Laplacian
//! equation `-Δ_p u = V |u|^{p-2} u` on balls and on all of space.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure
//! and deterministic; IO, report files and the command-line front end live
//! in the companion `plap` crate.
//!
//! Modules:
//! * [`radial`] – glued closed-form radial profiles, the radial p-Laplacian,
//!   potentials built from profiles, and radial quadrature.
//! * [`families`] – the explicit extremal and counterexample `(u, V)` pairs.
//! * [`sobolev`] – Sobolev constants on balls (shooting, closed forms,
//!   Talenti quadrature), the measure scaling bound and eigenvalue bounds.
//! * [`orlicz`] – the complementary Orlicz pair, Luxemburg-type norm and
//!   Moser–Trudinger functional.
//! * [`verifier`] – both sides of every minimal-support inequality as a
//!   [`verifier::BoundReport`].

#![no_std]
// `!(x > 0.0)` style guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exponents;
pub mod families;
pub mod math;
pub mod optimize;
pub mod orlicz;
pub mod quadrature;
pub mod radial;
pub mod sobolev;
pub mod verifier;

pub use error::{Error, Result};
pub use exponents::ExponentConfig;
pub use families::{FamilyOutput, FamilySpec};
pub use orlicz::{LuxemburgResult, OrliczPair};
pub use radial::{PiecewiseRadialProfile, Potential, Segment, SegmentKind};
pub use sobolev::{Method, SobolevConstant};
pub use verifier::{BoundReport, Verdict};
