//! Exact-arithmetic multiplicative weight spectral sequences.
//!
//! This crate computes, over exact rationals, the first pages of
//! multiplicative weight spectral sequences attached to resolution data of
//! singular projective varieties, certifies formality via purity and
//! multiplicative-section witnesses, and derives weight-graded rational
//! homotopy through Sullivan minimal models.

pub mod scalar;
pub mod linalg;
pub mod cdga;
pub mod simplex;
pub mod builders;
pub mod bundled;
pub mod cone;
pub mod formality;
pub mod sullivan;
pub mod datum;
pub mod report;
pub mod cli;
pub mod pages;
pub mod tw;

pub use cli::cli_main;
