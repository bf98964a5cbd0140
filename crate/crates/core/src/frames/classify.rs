use alloc::vec::Vec;

use super::{eval_all, max_abs, FrameData, FrameError};
use crate::expr::{Expr, Number};

/// Whether the Weyl tensor vanishes on the samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConformalStatus {
    Flat,
    NotFlat,
    /// `n ≤ 3`: the Weyl tensor vanishes identically and says nothing
    /// (in three dimensions the Cotton tensor would decide, which is not computed).
    Indeterminate,
}

/// Numerical classification of a metric from its frame curvature.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub max_riemann: f64,
    pub max_ricci: f64,
    /// Sample mean of `R / (n(n-1))`.
    pub kappa: f64,
    /// `max |R_abcd - κ(η_ac η_bd - η_ad η_bc)|`.
    pub constant_curvature_residual: f64,
    pub max_weyl: Option<f64>,
    pub flat: bool,
    pub constant_curvature: bool,
    pub ricci_flat: bool,
    pub conformal: ConformalStatus,
}

impl Classification {
    /// Nothing special detected.
    pub fn generic(&self) -> bool {
        !self.flat && !self.constant_curvature && !self.ricci_flat && self.conformal != ConformalStatus::Flat
    }

    /// Short label for reports.
    pub fn label(&self) -> &'static str {
        if self.flat {
            "flat"
        } else if self.constant_curvature {
            "constant-curvature"
        } else if self.conformal == ConformalStatus::Flat {
            "conformally-flat"
        } else if self.ricci_flat {
            "ricci-flat"
        } else {
            "generic"
        }
    }
}

/// Classifies with absolute tolerance `tol` on every residual.
pub fn classify_space(data: &FrameData, points: &[Vec<f64>], tol: f64) -> Result<Classification, FrameError> {
    let n = data.dim();
    let max_riemann = max_abs(data.riemann_all(), points)?.value;
    let max_ricci = max_abs(data.ricci_all(), points)?.value;
    let denom = (n * (n - 1)) as i64;
    let kappa_expr = data.scalar().scale(Number::ratio(1, denom));
    let kappa = if points.is_empty() {
        0.0
    } else {
        let vals = eval_all(core::slice::from_ref(&kappa_expr), points)?;
        vals.iter().map(|v| v[0]).sum::<f64>() / points.len() as f64
    };
    let eta = data.frame.eta();
    let delta = |a: usize, b: usize| if a == b { eta[a] as f64 } else { 0.0 };
    let mut residual = Vec::with_capacity(n * n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let model = kappa * (delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c));
                    residual.push(data.riemann(a, b, c, d) - Expr::float(model));
                }
            }
        }
    }
    let constant_curvature_residual = max_abs(&residual, points)?.value;
    let max_weyl = match data.weyl() {
        Some(w) => Some(max_abs(w, points)?.value),
        None => None,
    };
    let conformal = match max_weyl {
        _ if n <= 3 => ConformalStatus::Indeterminate,
        Some(w) if w < tol => ConformalStatus::Flat,
        Some(_) => ConformalStatus::NotFlat,
        None => ConformalStatus::Indeterminate,
    };
    Ok(Classification {
        max_riemann,
        max_ricci,
        kappa,
        constant_curvature_residual,
        max_weyl,
        flat: max_riemann < tol,
        constant_curvature: constant_curvature_residual < tol,
        ricci_flat: max_ricci < tol,
        conformal,
    })
}
