use alloc::vec::Vec;

use super::SubmersionError;
use crate::expr::{Differentiator, Expr};
use crate::frames::{
    curvature_package, eval_all, frame_from_vectors, gram_schmidt, solve_connection, FrameData, Metric,
};
use crate::DEGENERACY_THRESHOLD;

/// A flow together with its adapted frame and curvature.
#[derive(Clone, Debug)]
pub struct Submersion {
    /// Frame index 0 is the unit flow `u`.
    pub data: FrameData,
    flow: Vec<Expr>,
    norm_sq: Expr,
    dropped: usize,
    normalization: Option<f64>,
}

/// Builds `e_0 = V/|V|` and completes it by Gram-Schmidt.
///
/// The coordinate vector dropped from the completion is the one whose
/// component of `u` stays furthest from zero over the samples (the smallest
/// index wins ties); the rest follow in chart order. `|V|` must exceed the
/// degeneracy threshold at every sample.
pub fn adapted_frame(metric: &Metric, flow: &[Expr], points: &[Vec<f64>]) -> Result<Submersion, SubmersionError> {
    let n = metric.dim();
    if !metric.chart().is_riemannian() {
        return Err(SubmersionError::NotRiemannian);
    }
    if flow.len() != n {
        return Err(SubmersionError::FlowShape { expected: n, got: flow.len() });
    }
    let flow: Vec<Expr> = flow.iter().map(Expr::simplify).collect();
    let norm_sq = metric.inner(&flow, &flow);
    let mut worst_unit = 0.0f64;
    for (p, v) in points.iter().zip(eval_all(core::slice::from_ref(&norm_sq), points)?) {
        let norm = libm::sqrt(v[0].max(0.0));
        if norm.is_nan() || norm <= DEGENERACY_THRESHOLD {
            return Err(SubmersionError::VanishingFlow { point: p.clone(), norm });
        }
        worst_unit = worst_unit.max((v[0] - 1.0).abs());
    }
    let inv_norm = norm_sq.powq(-1, 2);
    let u: Vec<Expr> = flow.iter().map(|c| c * &inv_norm).collect();

    let mut min_abs = alloc::vec![f64::INFINITY; n];
    for row in eval_all(&u, points)? {
        for (m, v) in min_abs.iter_mut().zip(row) {
            *m = m.min(v.abs());
        }
    }
    let mut dropped = 0;
    for k in 1..n {
        if min_abs[k] > min_abs[dropped] {
            dropped = k;
        }
    }

    let mut initial = alloc::vec![u];
    for mu in (0..n).filter(|&mu| mu != dropped) {
        initial.push((0..n).map(|nu| if nu == mu { Expr::one() } else { Expr::zero() }).collect());
    }
    let eta = alloc::vec![1i8; n];
    let vectors = gram_schmidt(metric, &initial, &eta, true, points)?;
    let frame = frame_from_vectors(metric, eta, vectors);
    let connection = solve_connection(&frame, points)?;
    let data = curvature_package(frame, connection)?;
    let normalization = (worst_unit > 1e-12).then_some(worst_unit);
    Ok(Submersion { data, flow, norm_sq, dropped, normalization })
}

impl Submersion {
    /// Parses the flow components in the chart's grammar.
    pub fn parse<S: AsRef<str>>(
        metric: &Metric,
        flow: &[S],
        points: &[Vec<f64>],
    ) -> Result<Submersion, SubmersionError> {
        let exprs = flow.iter().map(|s| metric.chart().parse(s.as_ref())).collect::<Result<Vec<_>, _>>()?;
        adapted_frame(metric, &exprs, points)
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    /// Number of horizontal directions, `n - 1`.
    pub fn horizontal(&self) -> usize {
        self.data.dim() - 1
    }

    /// The flow as given, simplified.
    pub fn flow(&self) -> &[Expr] {
        &self.flow
    }

    /// `g(V, V)`.
    pub fn norm_sq(&self) -> &Expr {
        &self.norm_sq
    }

    /// Chart index of the coordinate vector left out of the completion.
    pub fn dropped_coordinate(&self) -> usize {
        self.dropped
    }

    /// `max |g(V,V) - 1|` over the samples when `V` is not already unit.
    pub fn normalization(&self) -> Option<f64> {
        self.normalization
    }

    /// Unit flow `u` in coordinates.
    pub fn unit(&self) -> &[Expr] {
        self.data.frame.vector(0)
    }

    /// `c^a_bc` in frame numbering.
    pub fn structure(&self, a: usize, b: usize, c: usize) -> &Expr {
        self.data.connection.structure(a, b, c)
    }

    /// `Γ^a_bc` in frame numbering.
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> &Expr {
        self.data.connection.gamma(a, b, c)
    }

    /// `e_a(f)` with `a` in frame numbering.
    pub fn along(&self, a: usize, f: &Expr, differ: &mut Differentiator) -> Expr {
        self.data.frame.apply(a, f, differ)
    }

    /// Rigidity defects `c^j_0i + c^i_0j` for horizontal `i ≤ j`.
    pub fn rigidity_defects(&self) -> Vec<Expr> {
        let h = self.horizontal();
        let mut out = Vec::new();
        for i in 1..=h {
            for j in i..=h {
                out.push(self.structure(j, 0, i) + self.structure(i, 0, j));
            }
        }
        out
    }
}
