//! Moving-frame differential geometry over closed-form coefficients.
//!
//! The crate is layered bottom-up:
//!
//! * [`expr`]: symbolic scalar expressions (parse, simplify, differentiate, evaluate).
//! * [`chart`]: coordinate charts, sampling domains and reproducible sample sets.
//! * [`exterior`]: differential forms with expression coefficients, wedge, `d`, and
//!   matrix-valued forms with their curvature `dω + ω∧ω`.
//! * [`frames`]: orthonormal coframes from a metric, the torsion-free connection,
//!   Riemann/Ricci/Schouten/Weyl tensors and ambient classification.
//! * [`submersion`]: codimension-1 analysis of a flow: adapted coframe, the
//!   vorticity block `M` and acceleration block `K`, rigidity, covariant
//!   derivatives and the curvature constraint system.
//! * [`herglotz`]: hypothesis checks, reconstruction of the Killing magnitude and
//!   isometry verification.
//!
//! Sign conventions are fixed once and documented in `docs/conventions.md`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chart;
pub mod expr;
pub mod exterior;
pub mod frames;
pub mod herglotz;
mod linalg;
mod quadrature;
pub mod submersion;

pub use chart::{Chart, ChartError, Domain, Exclusion, SampleSpec};
pub use expr::{parse_expr, EvalError, Expr, Func, Number, ParseError, Tape};
pub use exterior::{ext_d, form_eval, matrix_curvature, wedge, FormError, MatrixForm, PForm};

/// Threshold below which a Gram-Schmidt pivot or flow norm counts as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;
