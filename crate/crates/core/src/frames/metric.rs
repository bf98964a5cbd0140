use alloc::vec::Vec;

use super::FrameError;
use crate::chart::Chart;
use crate::expr::{Expr, Func};

/// Symmetric metric `g_μν` on a chart, entries in canonical form.
#[derive(Clone, Debug)]
pub struct Metric {
    chart: Chart,
    g: Vec<Expr>,
}

impl Metric {
    /// Entries in row-major order. Symmetry is checked structurally after
    /// simplification.
    pub fn new(chart: Chart, entries: Vec<Expr>) -> Result<Metric, FrameError> {
        let n = chart.dim();
        if entries.len() != n * n {
            return Err(FrameError::MetricShape { expected: n * n, got: entries.len() });
        }
        let g: Vec<Expr> = entries.iter().map(Expr::simplify).collect();
        for i in 0..n {
            for j in i + 1..n {
                if g[i * n + j] != g[j * n + i] {
                    return Err(FrameError::Asymmetric { i, j });
                }
            }
        }
        Ok(Metric { chart, g })
    }

    /// Parses row-major entries in the expression grammar.
    pub fn parse<S: AsRef<str>>(chart: Chart, entries: &[S]) -> Result<Metric, FrameError> {
        let exprs = entries.iter().map(|s| chart.parse(s.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Metric::new(chart, exprs)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Expr {
        &self.g[i * self.dim() + j]
    }

    pub fn entries(&self) -> &[Expr] {
        &self.g
    }

    /// The conformally rescaled metric `e^{2σ} g`.
    pub fn conformal(&self, sigma: &Expr) -> Metric {
        let s = (Expr::int(2) * sigma).apply(Func::Exp);
        Metric { chart: self.chart.clone(), g: self.g.iter().map(|e| e * &s).collect() }
    }

    /// `g_μν v^ν`.
    pub fn lower(&self, v: &[Expr]) -> Vec<Expr> {
        let n = self.dim();
        (0..n)
            .map(|mu| Expr::sum((0..n).filter(|nu| !v[*nu].is_zero()).map(|nu| self.entry(mu, nu) * &v[nu])))
            .collect()
    }

    /// `g(a, b)`.
    pub fn inner(&self, a: &[Expr], b: &[Expr]) -> Expr {
        let lb = self.lower(b);
        Expr::sum(a.iter().zip(&lb).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y))
    }

    /// Numeric metric matrix at a point.
    pub fn at(&self, p: &[f64]) -> Result<Vec<f64>, crate::expr::EvalError> {
        self.g.iter().map(|e| e.eval(p)).collect()
    }
}
