//! Orthonormal coframes, the torsion-free connection and curvature.
//!
//! Conventions (see `docs/conventions.md`):
//!
//! * `g = Σ η_a θ^a ⊗ θ^a`, frame `e_a` dual to `θ^a`;
//! * `dθ^a = -α^a_b ∧ θ^b`, with `α_ab = η_a α^a_b` antisymmetric;
//! * `Ω = dα + α∧α`, `Ω^a_b = ½ R^a_bcd θ^c∧θ^d`, `R_abcd = η_a R^a_bcd`;
//! * Ricci `R_bd = R^a_bad`, scalar `R = η^bd R_bd`.

mod classify;
mod connection;
mod curvature;
mod frame;
mod metric;

use alloc::vec::Vec;

use crate::chart::ChartError;
use crate::expr::{EvalError, Expr, ParseError, Tape};
use crate::exterior::FormError;

pub use classify::{classify_space, Classification, ConformalStatus};
pub use connection::{solve_connection, Connection};
pub use curvature::{curvature_package, FrameData, FrameDiagnostics};
pub use frame::{build_coframe, frame_from_vectors, gram_schmidt, Frame};
pub use metric::Metric;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FrameError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("metric needs {expected} entries, got {got}")]
    MetricShape { expected: usize, got: usize },
    #[error("metric is not symmetric: g[{i}][{j}] differs from g[{j}][{i}]")]
    Asymmetric { i: usize, j: usize },
    #[error("frame order must be a permutation of 0..{0}")]
    BadOrder(usize),
    #[error("singular metric: Gram-Schmidt pivot {pivot} is {value:e} at point {point:?}")]
    SingularMetric { point: Vec<f64>, pivot: usize, value: f64 },
    #[error("signature mismatch: pivot {index} has sign opposite to the declared η at point {point:?}")]
    SignatureMismatch { point: Vec<f64>, index: usize },
    #[error("coframe is not invertible at point {point:?}")]
    NotInvertible { point: Vec<f64> },
    #[error("evaluation failed at point {point:?}: {source}")]
    Eval { point: Vec<f64>, source: EvalError },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Largest magnitude of a set of expressions over a set of points.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxAbs {
    pub value: f64,
    /// Index into the sample list of the maximizing point, if any.
    pub at: Option<usize>,
}

/// Evaluates `exprs` at every point and returns the largest magnitude.
pub fn max_abs(exprs: &[Expr], points: &[Vec<f64>]) -> Result<MaxAbs, FrameError> {
    let live: Vec<Expr> = exprs.iter().filter(|e| !e.is_zero()).cloned().collect();
    let mut best = MaxAbs { value: 0.0, at: None };
    if live.is_empty() {
        return Ok(best);
    }
    let tape = Tape::compile(&live);
    let mut scratch = Vec::new();
    let mut out = alloc::vec![0.0; live.len()];
    for (k, p) in points.iter().enumerate() {
        tape.eval_into(p, &mut scratch, &mut out).map_err(|source| FrameError::Eval { point: p.clone(), source })?;
        for v in &out {
            if v.abs() > best.value || best.at.is_none() {
                best = MaxAbs { value: best.value.max(v.abs()), at: Some(k) };
            }
        }
    }
    Ok(best)
}

/// Evaluates `exprs` at every point (rows = points).
pub fn eval_all(exprs: &[Expr], points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, FrameError> {
    Tape::compile(exprs)
        .eval_points(points)
        .map_err(|(k, source)| FrameError::Eval { point: points[k].clone(), source })
}
