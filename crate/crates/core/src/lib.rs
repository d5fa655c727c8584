//! Exact verification harness for the discrete pre-trace formula of
//! GL3 over finite fields, acting on the finite upper half-space.
//!
//! The geometric side is a sum of orbital sums over conjugacy classes of
//! GL3(F_p); the spectral side is a sum over irreducibles of GL3(F_q)
//! weighted by their multiplicity in Ind 1. Every closed form is checked
//! against a brute-force oracle.

pub mod error;
pub mod exec;
pub mod gf;
pub mod geometric;
pub mod gl3;
pub mod halfspace;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use exec::Exec;
