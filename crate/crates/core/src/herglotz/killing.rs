use alloc::vec::Vec;

use super::{HerglotzError, LambdaProblem};
use crate::expr::{Differentiator, Expr, Tape};
use crate::frames::Frame;

/// A vector field known through its value and first derivatives at points.
pub trait VectorFieldSource {
    fn dim(&self) -> usize;

    /// `(X^ρ, ∂_μ X^ρ)` at `p`, the Jacobian stored as `[ρ * n + μ]`.
    fn jet(&self, p: &[f64]) -> Result<(Vec<f64>, Vec<f64>), HerglotzError>;
}

/// `X = λ u` with `u` symbolic and `λ` from path integration.
pub struct ScaledFlow<'a> {
    lambda: &'a LambdaProblem,
    n: usize,
    /// `u^ρ` followed by `∂_μ u^ρ`.
    tape: Tape,
}

impl<'a> ScaledFlow<'a> {
    pub fn new(lambda: &'a LambdaProblem, unit: &[Expr]) -> ScaledFlow<'a> {
        let n = unit.len();
        let mut differ = Differentiator::new();
        let mut exprs = unit.to_vec();
        for u in unit {
            for mu in 0..n {
                exprs.push(differ.diff(u, mu));
            }
        }
        ScaledFlow { lambda, n, tape: Tape::compile(&exprs) }
    }

    fn eval(&self, p: &[f64]) -> Result<Vec<f64>, HerglotzError> {
        self.tape.eval(p).map_err(|source| HerglotzError::Eval { point: p.to_vec(), source })
    }

    pub fn unit_at(&self, p: &[f64]) -> Result<Vec<f64>, HerglotzError> {
        let mut v = self.eval(p)?;
        v.truncate(self.n);
        Ok(v)
    }

    /// `(λ, ∂_μ λ)` at `p`.
    pub fn lambda_jet(&self, p: &[f64]) -> Result<(f64, Vec<f64>), HerglotzError> {
        Ok((self.lambda.lambda(p)?, self.lambda.gradient(p)?))
    }
}

impl VectorFieldSource for ScaledFlow<'_> {
    fn dim(&self) -> usize {
        self.n
    }

    fn jet(&self, p: &[f64]) -> Result<(Vec<f64>, Vec<f64>), HerglotzError> {
        let n = self.n;
        let v = self.eval(p)?;
        let (lambda, grad) = self.lambda_jet(p)?;
        let value = v[..n].iter().map(|u| lambda * u).collect();
        let mut jac = alloc::vec![0.0; n * n];
        for rho in 0..n {
            for mu in 0..n {
                jac[rho * n + mu] = grad[mu] * v[rho] + lambda * v[n + rho * n + mu];
            }
        }
        Ok((value, jac))
    }
}

/// `max |(L_X g)(e_a, e_b)|` over the points, from the coordinate formula
/// `(L_X g)_μν = X^ρ ∂_ρ g_μν + g_ρν ∂_μ X^ρ + g_μρ ∂_ν X^ρ`.
pub fn verify_killing(
    frame: &Frame,
    source: &dyn VectorFieldSource,
    points: &[Vec<f64>],
) -> Result<f64, HerglotzError> {
    let metric = frame.metric();
    let n = metric.dim();
    let mut differ = Differentiator::new();
    let mut exprs: Vec<Expr> = metric.entries().to_vec();
    for g in metric.entries() {
        for rho in 0..n {
            exprs.push(differ.diff(g, rho));
        }
    }
    for e in frame.vectors() {
        exprs.extend(e.iter().cloned());
    }
    let tape = Tape::compile(&exprs);
    let mut worst = 0.0f64;
    for p in points {
        let v = tape.eval(p).map_err(|source| HerglotzError::Eval { point: p.clone(), source })?;
        let g = |mu: usize, nu: usize| v[mu * n + nu];
        let dg = |mu: usize, nu: usize, rho: usize| v[n * n + (mu * n + nu) * n + rho];
        let e = |a: usize, mu: usize| v[n * n + n * n * n + a * n + mu];
        let (x, jac) = source.jet(p)?;
        let mut lie = alloc::vec![0.0; n * n];
        for mu in 0..n {
            for nu in 0..n {
                let mut s = 0.0;
                for rho in 0..n {
                    s += x[rho] * dg(mu, nu, rho) + g(rho, nu) * jac[rho * n + mu] + g(mu, rho) * jac[rho * n + nu];
                }
                lie[mu * n + nu] = s;
            }
        }
        for a in 0..n {
            for b in a..n {
                let mut s = 0.0;
                for mu in 0..n {
                    for nu in 0..n {
                        s += lie[mu * n + nu] * e(a, mu) * e(b, nu);
                    }
                }
                worst = worst.max(s.abs());
            }
        }
    }
    Ok(worst)
}
