use alloc::vec::Vec;

use super::{HTensor, Invariants, Submersion, SubmersionError};
use crate::expr::{Differentiator, Expr, Number};
use crate::frames::max_abs;

/// Residuals of the curvature constraint system of a rigid flow, plus the
/// curvature `R̃` of the horizontal distribution.
///
/// Horizontal indices `i, j, k, l`, `0` the flow, `;` the projected covariant
/// derivative, `K_(i;j)` the symmetrized gradient:
///
/// * `R_0i0j = -K_(i;j) - K_i K_j + Σ_k M_ki M_kj`
/// * `R_0ijk = M_ik;j - M_ij;k + 2 K_i M_jk`
/// * `R_ij0k = M_kj;i - M_ki;j + 2 K_k M_ij`
/// * `Ric_00 = -Σ_i K_i;i - |K|² + |M|²`
/// * `Ric_0i = Σ_j (M_ij;j + 2 K_j M_ij)`
/// * `R̃_ijkl = R_ijkl + M_ik M_jl - M_il M_jk - 2 M_ij M_lk`
/// * `R̃_ij = Ric_ij + 2 Σ_k M_ik M_jk + K_i K_j + K_(i;j)`, which must equal `Σ_k R̃_kikj`
/// * `R̃ = R + 2 Σ_i K_i;i + 2|K|² + |M|²`, which must equal `Σ_i R̃_ii`
#[derive(Clone, Debug)]
pub struct Constraints {
    h: usize,
    tilde_riemann: Vec<Expr>,
    tilde_ricci: Vec<Expr>,
    tilde_scalar: Expr,
    pub vertical: f64,
    pub vertical_codazzi: f64,
    pub mixed_codazzi: f64,
    pub ricci_00: f64,
    pub ricci_0i: f64,
    pub ricci_ij: f64,
    pub scalar: f64,
    /// `max |u(|M|²)|`.
    pub leaf_vorticity: f64,
    /// `max |(L_u R̃)_ijkl|`, horizontal part of the Lie derivative along the flow.
    pub leaf_tilde_riemann: f64,
    /// `max |(L_u R̃)_ij|`.
    pub leaf_tilde_ricci: f64,
    /// `max |u(R̃)|`.
    pub leaf_tilde_scalar: f64,
}

impl Constraints {
    pub fn tilde_riemann(&self, i: usize, j: usize, k: usize, l: usize) -> &Expr {
        let h = self.h;
        &self.tilde_riemann[((i * h + j) * h + k) * h + l]
    }

    pub fn tilde_ricci(&self, i: usize, j: usize) -> &Expr {
        &self.tilde_ricci[i * self.h + j]
    }

    pub fn tilde_scalar(&self) -> &Expr {
        &self.tilde_scalar
    }

    /// Largest residual among the equations that involve only ambient curvature.
    pub fn frame_equations(&self) -> f64 {
        self.vertical.max(self.vertical_codazzi).max(self.mixed_codazzi)
    }

    /// Largest residual among the Ricci rows.
    pub fn ricci_rows(&self) -> f64 {
        self.ricci_00.max(self.ricci_0i).max(self.ricci_ij).max(self.scalar)
    }
}

/// Evaluates the constraint system over the samples.
pub fn constraint_residuals(
    sub: &Submersion,
    inv: &Invariants,
    points: &[Vec<f64>],
) -> Result<Constraints, SubmersionError> {
    let h = sub.horizontal();
    let mut differ = Differentiator::new();
    let kg = inv.k.horizontal_gradient(sub, &mut differ);
    let mg = inv.m.horizontal_gradient(sub, &mut differ);
    let r = |a: usize, b: usize, c: usize, d: usize| sub.data.riemann(a, b, c, d).clone();
    let m = |i: usize, j: usize| inv.m(i, j).clone();
    let k = |i: usize| inv.k(i).clone();
    let ks = |i: usize, j: usize| (kg.get(&[i, j]) + kg.get(&[j, i])).scale(Number::ratio(1, 2));
    let md = |i: usize, j: usize, l: usize| mg.get(&[i, j, l]).clone();
    let two = || Expr::int(2);
    let m_sq = inv.m_norm_sq();
    let k_sq = inv.k_norm_sq();
    let div_k = Expr::sum((0..h).map(|i| kg.get(&[i, i]).clone()));

    let mut vertical = Vec::new();
    let mut vertical_codazzi = Vec::new();
    let mut mixed_codazzi = Vec::new();
    for i in 0..h {
        for j in 0..h {
            let rhs = Expr::sum([-ks(i, j), -(k(i) * k(j)), Expr::sum((0..h).map(|l| m(l, i) * m(l, j)))]);
            vertical.push(r(0, i + 1, 0, j + 1) - rhs);
            for l in 0..h {
                let rhs = Expr::sum([md(i, l, j), -md(i, j, l), two() * k(i) * m(j, l)]);
                vertical_codazzi.push(r(0, i + 1, j + 1, l + 1) - rhs);
                let rhs = Expr::sum([md(l, j, i), -md(l, i, j), two() * k(l) * m(i, j)]);
                mixed_codazzi.push(r(i + 1, j + 1, 0, l + 1) - rhs);
            }
        }
    }

    let ricci_00 = sub.data.ricci(0, 0) - Expr::sum([-div_k.clone(), -k_sq.clone(), m_sq.clone()]);
    let ricci_0i: Vec<Expr> = (0..h)
        .map(|i| sub.data.ricci(0, i + 1) - Expr::sum((0..h).map(|j| md(i, j, j) + two() * k(j) * m(i, j))))
        .collect();

    let mut tilde_riemann = Vec::with_capacity(h * h * h * h);
    for i in 0..h {
        for j in 0..h {
            for a in 0..h {
                for b in 0..h {
                    tilde_riemann.push(Expr::sum([
                        r(i + 1, j + 1, a + 1, b + 1),
                        m(i, a) * m(j, b),
                        -(m(i, b) * m(j, a)),
                        -(two() * m(i, j) * m(b, a)),
                    ]));
                }
            }
        }
    }
    let tr = |i: usize, j: usize, a: usize, b: usize| tilde_riemann[((i * h + j) * h + a) * h + b].clone();
    let mut tilde_ricci = Vec::with_capacity(h * h);
    let mut ricci_ij = Vec::with_capacity(h * h);
    for i in 0..h {
        for j in 0..h {
            let t = Expr::sum([
                sub.data.ricci(i + 1, j + 1).clone(),
                two() * Expr::sum((0..h).map(|l| m(i, l) * m(j, l))),
                k(i) * k(j),
                ks(i, j),
            ]);
            ricci_ij.push(&t - Expr::sum((0..h).map(|l| tr(l, i, l, j))));
            tilde_ricci.push(t);
        }
    }
    let tilde_scalar = Expr::sum([sub.data.scalar().clone(), two() * &div_k, two() * &k_sq, m_sq.clone()]);
    let scalar = &tilde_scalar - Expr::sum((0..h).map(|i| tilde_ricci[i * h + i].clone()));
    let leaf = sub.along(0, &m_sq, &mut differ);
    // only the components independent under the pair symmetries
    let tilde_r = HTensor::new(h, 4, tilde_riemann.clone());
    let tilde_ric = HTensor::new(h, 2, tilde_ricci.clone());
    let mut leaf_riemann = Vec::new();
    let mut leaf_ricci = Vec::new();
    for i in 0..h {
        for j in i..h {
            leaf_ricci.push(tilde_ric.leaf_component(sub, &[i, j], &mut differ));
            if j == i {
                continue;
            }
            for a in 0..h {
                for b in a + 1..h {
                    if (i, j) <= (a, b) {
                        leaf_riemann.push(tilde_r.leaf_component(sub, &[i, j, a, b], &mut differ));
                    }
                }
            }
        }
    }
    let leaf_scalar = sub.along(0, &tilde_scalar, &mut differ);

    Ok(Constraints {
        h,
        vertical: max_abs(&vertical, points)?.value,
        vertical_codazzi: max_abs(&vertical_codazzi, points)?.value,
        mixed_codazzi: max_abs(&mixed_codazzi, points)?.value,
        ricci_00: max_abs(core::slice::from_ref(&ricci_00), points)?.value,
        ricci_0i: max_abs(&ricci_0i, points)?.value,
        ricci_ij: max_abs(&ricci_ij, points)?.value,
        scalar: max_abs(core::slice::from_ref(&scalar), points)?.value,
        leaf_vorticity: max_abs(core::slice::from_ref(&leaf), points)?.value,
        leaf_tilde_riemann: max_abs(&leaf_riemann, points)?.value,
        leaf_tilde_ricci: max_abs(&leaf_ricci, points)?.value,
        leaf_tilde_scalar: max_abs(core::slice::from_ref(&leaf_scalar), points)?.value,
        tilde_riemann,
        tilde_ricci,
        tilde_scalar,
    })
}
