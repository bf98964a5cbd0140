use alloc::vec::Vec;

use super::{eval_all, FrameError, Metric};
use crate::expr::{Differentiator, Expr};
use crate::exterior::PForm;
use crate::linalg;
use crate::DEGENERACY_THRESHOLD;

/// Orthonormal frame `e_a` with its dual coframe `θ^a`.
#[derive(Clone, Debug)]
pub struct Frame {
    metric: Metric,
    eta: Vec<i8>,
    /// `vectors[a][μ] = e_a^μ`.
    vectors: Vec<Vec<Expr>>,
    coframe: Vec<PForm>,
}

impl Frame {
    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn eta(&self) -> &[i8] {
        &self.eta
    }

    pub fn eta_f(&self, a: usize) -> f64 {
        self.eta[a] as f64
    }

    pub fn vector(&self, a: usize) -> &[Expr] {
        &self.vectors[a]
    }

    pub fn vectors(&self) -> &[Vec<Expr>] {
        &self.vectors
    }

    pub fn coframe(&self) -> &[PForm] {
        &self.coframe
    }

    /// `θ^a_μ`.
    pub fn theta(&self, a: usize, mu: usize) -> Expr {
        self.coframe[a].coeff(&[mu])
    }

    /// Directional derivative `e_a(f)`.
    pub fn apply(&self, a: usize, f: &Expr, differ: &mut Differentiator) -> Expr {
        Expr::sum(
            self.vectors[a]
                .iter()
                .enumerate()
                .filter(|(mu, c)| !c.is_zero() && f.depends_on(*mu))
                .map(|(mu, c)| c * differ.diff(f, mu)),
        )
    }

    /// Coordinate components of the frame-component vector `Σ_a X^a e_a`.
    pub fn to_coordinates(&self, comps: &[Expr]) -> Vec<Expr> {
        let n = self.dim();
        (0..n)
            .map(|mu| Expr::sum((0..n).filter(|a| !comps[*a].is_zero()).map(|a| &comps[a] * &self.vectors[a][mu])))
            .collect()
    }

    /// `max |Σ_a η_a θ^a_μ θ^a_ν - g_μν|` over the points.
    pub fn reconstruction_residual(&self, points: &[Vec<f64>]) -> Result<f64, FrameError> {
        let n = self.dim();
        let mut exprs = Vec::new();
        for mu in 0..n {
            for nu in mu..n {
                let s =
                    Expr::sum((0..n).map(|a| Expr::int(self.eta[a] as i64) * self.theta(a, mu) * self.theta(a, nu)));
                exprs.push(s - self.metric.entry(mu, nu));
            }
        }
        Ok(super::max_abs(&exprs, points)?.value)
    }

    /// `max |θ^a(e_b) - δ^a_b|` over the points.
    pub fn duality_residual(&self, points: &[Vec<f64>]) -> Result<f64, FrameError> {
        let n = self.dim();
        let mut exprs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let s = Expr::sum((0..n).map(|mu| self.theta(a, mu) * &self.vectors[b][mu]));
                exprs.push(if a == b { s - Expr::one() } else { s });
            }
        }
        Ok(super::max_abs(&exprs, points)?.value)
    }

    /// Errors with the first point where `det θ^a_μ` is below 1e-12 in magnitude.
    pub fn check_invertible(&self, points: &[Vec<f64>]) -> Result<(), FrameError> {
        let n = self.dim();
        let mut exprs = Vec::with_capacity(n * n);
        for a in 0..n {
            for mu in 0..n {
                exprs.push(self.theta(a, mu));
            }
        }
        for (p, vals) in points.iter().zip(eval_all(&exprs, points)?) {
            if linalg::det(vals, n).abs() < 1e-12 {
                return Err(FrameError::NotInvertible { point: p.clone() });
            }
        }
        Ok(())
    }
}

/// Gram-Schmidt on vector fields with respect to `metric`.
///
/// `e_k = v_k (η_k p_k)^{-1/2}` with `v_k = w_k - Σ_{j<k} η_j g(w_k, e_j) e_j`
/// and pivot `p_k = g(w_k, w_k) - Σ_{j<k} η_j g(w_k, e_j)²`. Every pivot is
/// checked at the sample points: it must exceed the degeneracy threshold in
/// magnitude and carry the sign `η_k`. When `first_is_unit` is set, the first
/// vector is taken as already normalized (its pivot is still checked).
pub fn gram_schmidt(
    metric: &Metric,
    initial: &[Vec<Expr>],
    eta: &[i8],
    first_is_unit: bool,
    points: &[Vec<f64>],
) -> Result<Vec<Vec<Expr>>, FrameError> {
    let n = metric.dim();
    let mut out: Vec<Vec<Expr>> = Vec::with_capacity(initial.len());
    for (k, w) in initial.iter().enumerate() {
        let lw = metric.lower(w);
        let dot =
            |e: &[Expr]| Expr::sum(lw.iter().zip(e).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y));
        let proj: Vec<Expr> = out.iter().map(|e| dot(e)).collect();
        let mut v = w.clone();
        let mut pivot_terms = alloc::vec![dot(w)];
        for (j, e) in out.iter().enumerate() {
            if proj[j].is_zero() {
                continue;
            }
            let c = Expr::int(eta[j] as i64) * &proj[j];
            for mu in 0..n {
                if !e[mu].is_zero() {
                    v[mu] = &v[mu] - &c * &e[mu];
                }
            }
            pivot_terms.push(-(&c * &proj[j]));
        }
        let pivot = Expr::sum(pivot_terms);
        check_pivot(&pivot, k, eta[k], points)?;
        let e = if k == 0 && first_is_unit {
            v
        } else {
            let scale = (Expr::int(eta[k] as i64) * &pivot).powq(-1, 2);
            v.iter().map(|c| c * &scale).collect()
        };
        out.push(e);
    }
    Ok(out)
}

fn check_pivot(pivot: &Expr, index: usize, eta: i8, points: &[Vec<f64>]) -> Result<(), FrameError> {
    for (p, vals) in points.iter().zip(eval_all(core::slice::from_ref(pivot), points)?) {
        let v = vals[0];
        if v.abs() <= DEGENERACY_THRESHOLD {
            return Err(FrameError::SingularMetric { point: p.clone(), pivot: index, value: v });
        }
        if v * eta as f64 <= 0.0 {
            return Err(FrameError::SignatureMismatch { point: p.clone(), index });
        }
    }
    Ok(())
}

/// Coframe from Gram-Schmidt on the coordinate vectors `∂_{order[0]}, ∂_{order[1]}, ...`.
///
/// Frame index `a` carries the chart signature entry `η_a`. The coframe is
/// `θ^a_μ = η_a g_μν e_a^ν`, which needs no symbolic matrix inverse.
pub fn build_coframe(metric: &Metric, order: &[usize], points: &[Vec<f64>]) -> Result<Frame, FrameError> {
    let n = metric.dim();
    let mut seen = alloc::vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || core::mem::replace(&mut seen[i], true)) {
        return Err(FrameError::BadOrder(n));
    }
    let initial: Vec<Vec<Expr>> =
        order.iter().map(|&i| (0..n).map(|mu| if mu == i { Expr::one() } else { Expr::zero() }).collect()).collect();
    let eta = metric.chart().signature().to_vec();
    let vectors = gram_schmidt(metric, &initial, &eta, false, points)?;
    Ok(frame_from_vectors(metric, eta, vectors))
}

/// Assembles a frame from orthonormal vectors; the coframe is obtained by lowering.
pub fn frame_from_vectors(metric: &Metric, eta: Vec<i8>, vectors: Vec<Vec<Expr>>) -> Frame {
    let coframe = vectors
        .iter()
        .zip(&eta)
        .map(|(e, s)| {
            let low = metric.lower(e);
            PForm::one_form(&low.iter().map(|c| c * Expr::int(*s as i64)).collect::<Vec<_>>())
        })
        .collect();
    Frame { metric: metric.clone(), eta, vectors, coframe }
}
