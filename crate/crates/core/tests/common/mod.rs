//! Shared fixtures and an independent numerical oracle.
//!
//! Nothing in `oracle` touches the symbolic engine: metrics and vector fields
//! are plain Rust closures, derivatives are high-order central differences,
//! and curvature comes from the coordinate Christoffel formula.

#![allow(dead_code)]

pub mod fixtures;
pub mod oracle;
pub mod trees;
