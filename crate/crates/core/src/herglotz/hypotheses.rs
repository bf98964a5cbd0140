use alloc::vec::Vec;

use super::HerglotzError;
use crate::expr::{Differentiator, Expr, Number};
use crate::frames::{max_abs, Classification, ConformalStatus};
use crate::submersion::{Invariants, Submersion};

/// Measured hypotheses and consequences, all maxima over the samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypotheses {
    /// `max |c^j_0i + c^i_0j|`.
    pub rigidity: f64,
    /// `max |M_ij|`.
    pub max_vorticity: f64,
    /// `max |K_[i;j]|`.
    pub closedness: f64,
    /// `max |(L_u M)_ij|`.
    pub leaf_m: f64,
    /// `max |(L_u K)_i|`.
    pub leaf_k: f64,
    pub ambient_applicable: bool,
}

pub fn check_hypotheses(
    sub: &Submersion,
    inv: &Invariants,
    ambient: &Classification,
    points: &[Vec<f64>],
) -> Result<Hypotheses, HerglotzError> {
    let h = sub.horizontal();
    let mut differ = Differentiator::new();
    let kg = inv.k.horizontal_gradient(sub, &mut differ);
    let mut skew: Vec<Expr> = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            skew.push((kg.get(&[i, j]) - kg.get(&[j, i])).scale(Number::ratio(1, 2)));
        }
    }
    let lm = inv.m.leaf_derivative(sub, &mut differ);
    let lk = inv.k.leaf_derivative(sub, &mut differ);
    Ok(Hypotheses {
        rigidity: max_abs(&sub.rigidity_defects(), points)?.value,
        max_vorticity: max_abs(inv.m.components(), points)?.value,
        closedness: max_abs(&skew, points)?.value,
        leaf_m: max_abs(lm.components(), points)?.value,
        leaf_k: max_abs(lk.components(), points)?.value,
        ambient_applicable: ambient.flat || ambient.constant_curvature || ambient.conformal == ConformalStatus::Flat,
    })
}
