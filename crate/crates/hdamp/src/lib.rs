//! Numerical machinery for high-energy bounds on D-dimensional elastic
//! scattering amplitudes.
//!
//! The crate is organized around five pieces:
//!
//! * [`specfun`] — Gegenbauer polynomial evaluation (plain, log-scaled,
//!   series form), zero location, and weighted orthogonality integrals;
//! * [`amplitude`] — unitarity-respecting model partial-wave sets and the
//!   D-dimensional amplitude F(s, t), its absorptive part, and the total
//!   cross section;
//! * [`bounds`] — closed-form evaluators for the modulus bound, the
//!   Froissart-Martin-type cross-section bounds, zero-counting bounds, and
//!   the Harnack interval, plus log-log scaling-exponent fits;
//! * [`zeroscan`] — argument-principle zero counting and census in complex-t
//!   disks, with the Jensen-bound comparison;
//! * [`scenario`] — a deterministic scenario runner behind the `hdamp` CLI
//!   that emits JSON/CSV reports.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod amplitude;
pub mod bounds;
pub mod error;
pub mod rng;
pub mod scenario;
pub mod specfun;
pub mod zeroscan;

pub use error::{Error, Result};
pub use specfun::DimensionSpec;
