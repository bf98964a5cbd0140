use alloc::vec::Vec;

use super::HerglotzError;
use crate::chart::Chart;
use crate::expr::{Expr, Tape};
use crate::exterior::{ext_d, PForm};
use crate::frames::max_abs;
use crate::quadrature;
use crate::submersion::{Invariants, Submersion};

const MAX_INTERVALS: usize = 256;
const GRADIENT_STEP: f64 = 4e-3;

/// A path integral with its quadrature error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathIntegral {
    pub value: f64,
    pub error: f64,
}

/// `log λ(p) = ∫_{p_0}^{p} K̂` for a closed coordinate 1-form `K̂`, with `λ(p_0) = 1`.
///
/// Paths are straight segments or coordinate-wise polygons between points of
/// the sampling box, which is convex, so only the exclusions are checked
/// (at every quadrature node).
#[derive(Clone, Debug)]
pub struct LambdaProblem {
    chart: Chart,
    khat: Vec<Expr>,
    tape: Tape,
    basepoint: Vec<f64>,
    tol: f64,
}

impl LambdaProblem {
    /// Refuses unless the domain is declared simply connected, the basepoint
    /// is admissible and `max |dK̂| ≤ closed_tol` over `points`.
    pub fn new(
        chart: Chart,
        khat: Vec<Expr>,
        basepoint: Vec<f64>,
        points: &[Vec<f64>],
        closed_tol: f64,
        quadrature_tol: f64,
    ) -> Result<LambdaProblem, HerglotzError> {
        let n = chart.dim();
        if basepoint.len() != n {
            return Err(HerglotzError::Basepoint { expected: n, got: basepoint.len() });
        }
        if !chart.domain().simply_connected {
            return Err(HerglotzError::NotSimplyConnected);
        }
        if chart.is_excluded(&basepoint) {
            return Err(HerglotzError::PathExcluded { point: basepoint });
        }
        let khat: Vec<Expr> = khat.iter().map(Expr::simplify).collect();
        let residual = closedness(&khat, points)?;
        if residual > closed_tol {
            return Err(HerglotzError::NotClosed { residual });
        }
        let tape = Tape::compile(&khat);
        Ok(LambdaProblem { chart, khat, tape, basepoint, tol: quadrature_tol })
    }

    /// `K̂ = Σ_i K_i θ^i` from an adapted frame.
    pub fn from_submersion(
        sub: &Submersion,
        inv: &Invariants,
        basepoint: Vec<f64>,
        points: &[Vec<f64>],
        closed_tol: f64,
        quadrature_tol: f64,
    ) -> Result<LambdaProblem, HerglotzError> {
        let frame = &sub.data.frame;
        let n = sub.dim();
        let khat =
            (0..n).map(|mu| Expr::sum((0..sub.horizontal()).map(|i| inv.k(i) * frame.theta(i + 1, mu)))).collect();
        LambdaProblem::new(frame.metric().chart().clone(), khat, basepoint, points, closed_tol, quadrature_tol)
    }

    /// Coordinate components `K̂_μ`.
    pub fn khat(&self) -> &[Expr] {
        &self.khat
    }

    pub fn basepoint(&self) -> &[f64] {
        &self.basepoint
    }

    fn integrand(&self, q: &[f64], dir: &[f64]) -> Result<f64, HerglotzError> {
        if self.chart.is_excluded(q) {
            return Err(HerglotzError::PathExcluded { point: q.to_vec() });
        }
        let k = self.tape.eval(q).map_err(|source| HerglotzError::Eval { point: q.to_vec(), source })?;
        Ok(k.iter().zip(dir).map(|(a, b)| a * b).sum())
    }

    fn integrate(
        &self,
        f: impl FnMut(f64) -> Result<f64, HerglotzError>,
        a: f64,
        b: f64,
    ) -> Result<PathIntegral, HerglotzError> {
        let est = quadrature::integrate(f, a, b, self.tol, self.tol, MAX_INTERVALS)?;
        if est.error.is_nan() || est.error > self.tol.max(self.tol * est.value.abs()) {
            return Err(HerglotzError::Quadrature { error: est.error });
        }
        Ok(PathIntegral { value: est.value, error: est.error })
    }

    /// Along the straight segment from the basepoint.
    pub fn log_lambda(&self, p: &[f64]) -> Result<PathIntegral, HerglotzError> {
        let p0 = &self.basepoint;
        let dir: Vec<f64> = p.iter().zip(p0).map(|(a, b)| a - b).collect();
        let mut q = p0.clone();
        self.integrate(
            |t| {
                for ((qi, a), d) in q.iter_mut().zip(p0).zip(&dir) {
                    *qi = a + t * d;
                }
                self.integrand(&q, &dir)
            },
            0.0,
            1.0,
        )
    }

    /// Along the polygon that moves one coordinate at a time, in chart order.
    pub fn log_lambda_polygonal(&self, p: &[f64]) -> Result<PathIntegral, HerglotzError> {
        let n = p.len();
        let mut corner = self.basepoint.clone();
        let mut total = PathIntegral { value: 0.0, error: 0.0 };
        for mu in 0..n {
            if corner[mu] != p[mu] {
                let mut dir = alloc::vec![0.0; n];
                dir[mu] = 1.0;
                let mut q = corner.clone();
                let leg = self.integrate(
                    |s| {
                        q[mu] = s;
                        self.integrand(&q, &dir)
                    },
                    corner[mu],
                    p[mu],
                )?;
                total.value += leg.value;
                total.error += leg.error;
                corner[mu] = p[mu];
            }
        }
        Ok(total)
    }

    pub fn lambda(&self, p: &[f64]) -> Result<f64, HerglotzError> {
        Ok(libm::exp(self.log_lambda(p)?.value))
    }

    /// `∂_μ λ` by Richardson-extrapolated central differences of the path integral.
    pub fn gradient(&self, p: &[f64]) -> Result<Vec<f64>, HerglotzError> {
        let mut out = Vec::with_capacity(p.len());
        let mut q = p.to_vec();
        for mu in 0..p.len() {
            let mut central = |h: f64| -> Result<f64, HerglotzError> {
                q[mu] = p[mu] + h;
                let up = self.lambda(&q)?;
                q[mu] = p[mu] - h;
                let down = self.lambda(&q)?;
                q[mu] = p[mu];
                Ok((up - down) / (2.0 * h))
            };
            let coarse = central(GRADIENT_STEP)?;
            let fine = central(GRADIENT_STEP / 2.0)?;
            out.push((4.0 * fine - coarse) / 3.0);
        }
        Ok(out)
    }
}

/// `max |dK̂|` over the points.
fn closedness(khat: &[Expr], points: &[Vec<f64>]) -> Result<f64, HerglotzError> {
    let d = ext_d(&PForm::one_form(khat));
    Ok(max_abs(&d.coefficients(), points)?.value)
}
