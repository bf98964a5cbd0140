//! Codimension-one analysis of a nowhere-vanishing flow on a Riemannian chart.
//!
//! The flow `V` is normalized to `u = V / |V|` and completed to an adapted
//! orthonormal frame `e_0 = u, e_1, ..., e_{n-1}`. Horizontal indices
//! `i, j, k` below run over `1..n` in frame numbering; in the API they are
//! 0-based (`0..n-1`) and map to frame index `i + 1`.
//!
//! With `ψ = θ^0` and `c^a_bc = dθ^a(e_b, e_c)`:
//!
//! * vorticity `M_ij = ½ c^0_ij = ½ dψ(e_i, e_j)`;
//! * acceleration block `K_i = -c^0_0i`, so that `∇_u u = -K_i e_i`;
//! * the flow is rigid when `c^j_0i + c^i_0j = 0` for all horizontal `i, j`.

mod adapted;
mod constraints;
mod invariants;
mod tensor;

use alloc::vec::Vec;

use crate::expr::{EvalError, ParseError};
use crate::frames::FrameError;

pub use adapted::{adapted_frame, Submersion};
pub use constraints::{constraint_residuals, Constraints};
pub use invariants::{invariants, Invariants};
pub use tensor::HTensor;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SubmersionError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("flow analysis needs a Riemannian signature")]
    NotRiemannian,
    #[error("flow needs {expected} components, got {got}")]
    FlowShape { expected: usize, got: usize },
    #[error("flow vanishes (|V| = {norm:e}) at point {point:?}")]
    VanishingFlow { point: Vec<f64>, norm: f64 },
    #[error("evaluation failed at point {point:?}: {source}")]
    Eval { point: Vec<f64>, source: EvalError },
}
