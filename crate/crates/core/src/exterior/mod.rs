//! Differential forms with expression coefficients.
//!
//! A [`PForm`] stores its coefficients sparsely, keyed by a [`Blade`]: the set
//! of coordinate indices `i1 < i2 < ... < ip` of the basis element
//! `dx^i1 ∧ ... ∧ dx^ip`. Structurally zero coefficients are never stored.

mod form;
mod matrix;

pub use form::{contract_fields, ext_d, form_eval, wedge, Blade, FormError, PForm};
pub use matrix::{matrix_curvature, MatrixForm};
