//! Exact analysis of the simple random walk on the directed wheel.
//!
//! The directed wheel on `N` cycle vertices is a bidirected `N`-cycle plus
//! an absorbing hub that every cycle vertex points to. This crate computes,
//! entirely in exact arbitrary-precision arithmetic:
//!
//! - average hitting times from cycle vertex 0 to any cycle vertex, by four
//!   independent routes (a Fibonacci/Lucas closed form, two exact linear
//!   solves, and an explicit entrywise matrix inverse) that must agree
//!   exactly ([`hitting`]);
//! - weighted counts of inward- and outward-directed spanning trees, by
//!   Laplacian cofactors, closed forms, and brute-force enumeration
//!   ([`trees`]);
//! - a seeded, reproducible Monte Carlo estimate of the same hitting times
//!   ([`montecarlo`]);
//! - cross-validation suites over all of the above ([`verify`]).
//!
//! With the default `parallel` feature, sweeps, enumeration, and sampling
//! fan out over a rayon pool; results are bit-identical to the sequential
//! fallback.

pub mod error;
pub mod hitting;
pub mod linalg;
pub mod montecarlo;
pub mod sequences;
pub mod trees;
pub mod verify;
pub mod wheel;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, Integer, Rational};
pub use wheel::{DirectedWheel, VertexId};
