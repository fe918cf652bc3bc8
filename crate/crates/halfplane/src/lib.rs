//! Numerical laboratory for Hardy-space and Bloch-space analysis on the
//! upper half-plane, and for the Volterra-type integral operators J_g and
//! I_g acting between them.
//!
//! The crate provides:
//!
//! * domain types for half-plane points, strips, search regions and
//!   evaluatable holomorphic functions ([`domain`], [`gallery`]);
//! * an expression language with symbolic differentiation for user-supplied
//!   symbols ([`exprlang`]);
//! * quadrature kernels: adaptive segment integrals, Cauchy-circle
//!   derivatives and horizontal-line L2 integrals ([`quad`]);
//! * global supremum estimation with divergence detection ([`search`]);
//! * the operators J_g / I_g / M_g, the kernel-type extremal family and the
//!   Bloch functionals ([`ops`]);
//! * boundedness and compactness criteria: the two criterion suprema,
//!   boundary-vanishing checks, compactness probes, certificates, strip
//!   decay and derivative-growth constants ([`criteria`]);
//! * reproducible JSON/CSV experiment reports and a `verify` suite that
//!   runs every documented invariant ([`report`], [`config`], [`verify`],
//!   [`cli`]).
//!
//! The `examples/` directory has one runnable program per capability; the
//! thin `halfplane` binary exposes the same operations as subcommands.

pub mod cli;
pub mod config;
pub mod criteria;
pub mod domain;
pub mod error;
pub mod exprlang;
pub mod gallery;
pub mod ops;
pub mod quad;
pub mod report;
pub mod rng;
pub mod search;
pub mod verify;

pub use domain::{HoloFun, Point, ScaleLevel, SearchRegion, Strip, SupEstimate};
pub use error::{ConfigError, DomainError, QuadError};
pub use ops::{extremal_fw, OperatorKind, OperatorResult};
pub use quad::QuadConfig;
