//! Combination sets and Boolean functions carry identical raw data but
//! transform differently along maps between universes. This crate implements
//! both transport actions, four diagram families that denote them (decision
//! diagrams read as classifiers or as combination families, and their
//! sentential generalizations), and a law-checking harness that verifies by
//! exhaustive enumeration on small universes which interpretations commute
//! with relabeling, and reproduces counterexamples for the ones that do not.

pub mod diagram;
pub mod error;
pub mod lawcheck;
pub mod sentential;
pub mod setfun;
pub mod text;
pub mod vtree;

pub use error::{Error, Result};
