use alloc::vec::Vec;

use super::{build_coframe, max_abs, solve_connection, Connection, Frame, FrameError, Metric};
use crate::expr::{Expr, Number};
use crate::exterior::{contract_fields, matrix_curvature, MatrixForm};

/// Everything derived from one orthonormal frame.
#[derive(Clone, Debug)]
pub struct FrameData {
    pub frame: Frame,
    pub connection: Connection,
    /// `Ω = dα + α∧α`, η-tagged.
    pub omega: MatrixForm,
    n: usize,
    riemann: Vec<Expr>,
    ricci: Vec<Expr>,
    scalar: Expr,
    schouten: Option<Vec<Expr>>,
    weyl: Option<Vec<Expr>>,
}

/// Residual maxima of the structural invariants over a sample set.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameDiagnostics {
    pub reconstruction: f64,
    pub duality: f64,
    pub torsion: f64,
    pub connection_antisymmetry: f64,
    pub curvature_antisymmetry: f64,
    /// `R_abcd + R_bacd`.
    pub riemann_first_pair: f64,
    /// `R_abcd + R_abdc`.
    pub riemann_second_pair: f64,
    /// `R_abcd - R_cdab`.
    pub riemann_pair_exchange: f64,
    /// `R_abcd + R_acdb + R_adbc`.
    pub first_bianchi: f64,
    /// Largest η-trace of the Weyl tensor; `None` when `n < 3`.
    pub weyl_trace: Option<f64>,
}

impl FrameDiagnostics {
    /// Largest residual among those that must vanish.
    pub fn worst(&self) -> f64 {
        [
            self.reconstruction,
            self.duality,
            self.torsion,
            self.connection_antisymmetry,
            self.curvature_antisymmetry,
            self.riemann_first_pair,
            self.riemann_second_pair,
            self.riemann_pair_exchange,
            self.first_bianchi,
            self.weyl_trace.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn idx4(n: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * n + b) * n + c) * n + d
}

/// Curvature, Ricci, scalar, Schouten and Weyl tensors from a frame and its connection.
///
/// `R^a_bcd = Ω^a_b(e_c, e_d)`. For `n ≥ 3` the Schouten tensor is
/// `F_ab = (R_ab - R η_ab / (2(n-1))) / (n-2)` and the Weyl tensor
/// `W_abcd = R_abcd - η_ac F_db + η_ad F_cb + η_bc F_da - η_bd F_ac`.
pub fn curvature_package(frame: Frame, connection: Connection) -> Result<FrameData, FrameError> {
    let n = frame.dim();
    let omega = matrix_curvature(&connection.alpha)?;
    let eta = |a: usize| frame.eta()[a] as i64;
    let mut riemann = alloc::vec![Expr::zero(); n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            let form = omega.entry(a, b);
            if form.is_zero() {
                continue;
            }
            for c in 0..n {
                for d in c + 1..n {
                    let v = contract_fields(form, &[frame.vector(c), frame.vector(d)])?.scale(Number::int(eta(a)));
                    riemann[idx4(n, a, b, d, c)] = -&v;
                    riemann[idx4(n, a, b, c, d)] = v;
                }
            }
        }
    }
    let mut ricci = alloc::vec![Expr::zero(); n * n];
    for b in 0..n {
        for d in 0..n {
            // R_bd = R^a_bad = η_a R_abad
            ricci[b * n + d] = Expr::sum((0..n).map(|a| riemann[idx4(n, a, b, a, d)].scale(Number::int(eta(a)))));
        }
    }
    let scalar = Expr::sum((0..n).map(|b| ricci[b * n + b].scale(Number::int(eta(b)))));
    let (schouten, weyl) = if n >= 3 {
        let nn = n as i64;
        let mut f = alloc::vec![Expr::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                let mut v = ricci[a * n + b].clone();
                if a == b {
                    v = v - scalar.scale(Number::ratio(eta(a), 2 * (nn - 1)));
                }
                f[a * n + b] = v.scale(Number::ratio(1, nn - 2));
            }
        }
        let delta = |a: usize, b: usize| if a == b { eta(a) } else { 0 };
        let mut w = alloc::vec![Expr::zero(); n * n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut terms = alloc::vec![riemann[idx4(n, a, b, c, d)].clone()];
                        for (s, x, y, fi, fj) in [(-1, a, c, d, b), (1, a, d, c, b), (1, b, c, d, a), (-1, b, d, a, c)]
                        {
                            let k = delta(x, y);
                            if k != 0 {
                                terms.push(f[fi * n + fj].scale(Number::int(s * k)));
                            }
                        }
                        w[idx4(n, a, b, c, d)] = Expr::sum(terms);
                    }
                }
            }
        }
        (Some(f), Some(w))
    } else {
        (None, None)
    };
    Ok(FrameData { frame, connection, omega, n, riemann, ricci, scalar, schouten, weyl })
}

impl FrameData {
    /// Coordinate-order Gram-Schmidt frame, connection and curvature in one step.
    pub fn from_metric(metric: &Metric, order: &[usize], points: &[Vec<f64>]) -> Result<FrameData, FrameError> {
        let frame = build_coframe(metric, order, points)?;
        let connection = solve_connection(&frame, points)?;
        curvature_package(frame, connection)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `R_abcd` (first index lowered with η).
    pub fn riemann(&self, a: usize, b: usize, c: usize, d: usize) -> &Expr {
        &self.riemann[idx4(self.n, a, b, c, d)]
    }

    pub fn riemann_all(&self) -> &[Expr] {
        &self.riemann
    }

    pub fn ricci(&self, a: usize, b: usize) -> &Expr {
        &self.ricci[a * self.n + b]
    }

    pub fn ricci_all(&self) -> &[Expr] {
        &self.ricci
    }

    pub fn scalar(&self) -> &Expr {
        &self.scalar
    }

    pub fn schouten(&self) -> Option<&[Expr]> {
        self.schouten.as_deref()
    }

    pub fn weyl(&self) -> Option<&[Expr]> {
        self.weyl.as_deref()
    }

    fn eta(&self, a: usize) -> i64 {
        self.frame.eta()[a] as i64
    }

    /// Every η-trace `Σ_a η_a W_a b a d` and its partners; empty for `n < 3`.
    pub fn weyl_traces(&self) -> Vec<Expr> {
        let Some(w) = &self.weyl else { return Vec::new() };
        let n = self.n;
        let mut out = Vec::new();
        for b in 0..n {
            for d in 0..n {
                // contraction of the first and third slots; the other traces
                // follow from the symmetries, which are checked separately
                out.push(Expr::sum((0..n).map(|a| w[idx4(n, a, b, a, d)].scale(Number::int(self.eta(a))))));
                out.push(Expr::sum((0..n).map(|a| w[idx4(n, b, a, d, a)].scale(Number::int(self.eta(a))))));
                out.push(Expr::sum((0..n).map(|a| w[idx4(n, a, a, b, d)].scale(Number::int(self.eta(a))))));
            }
        }
        out
    }

    /// Evaluates every structural invariant at the sample points.
    pub fn diagnostics(&self, points: &[Vec<f64>]) -> Result<FrameDiagnostics, FrameError> {
        let n = self.n;
        let frame = &self.frame;
        let mut torsion = Vec::new();
        for t in self.connection.torsion_forms(frame)? {
            torsion.extend(t.coefficients());
        }
        let mut conn_anti = Vec::new();
        let mut curv_anti = Vec::new();
        for a in 0..n {
            for b in a..n {
                let (ea, eb) = (Expr::int(self.eta(a)), Expr::int(self.eta(b)));
                let s =
                    self.connection.alpha.entry(a, b).scale(&ea).add(&self.connection.alpha.entry(b, a).scale(&eb))?;
                conn_anti.extend(s.coefficients());
                let s = self.omega.entry(a, b).scale(&ea).add(&self.omega.entry(b, a).scale(&eb))?;
                curv_anti.extend(s.coefficients());
            }
        }
        let r = |a, b, c, d| self.riemann(a, b, c, d).clone();
        let (mut first, mut second, mut exchange, mut bianchi) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        first.push(r(a, b, c, d) + r(b, a, c, d));
                        second.push(r(a, b, c, d) + r(a, b, d, c));
                        exchange.push(r(a, b, c, d) - r(c, d, a, b));
                        bianchi.push(Expr::sum([r(a, b, c, d), r(a, c, d, b), r(a, d, b, c)]));
                    }
                }
            }
        }
        let weyl_trace = if self.weyl.is_some() { Some(max_abs(&self.weyl_traces(), points)?.value) } else { None };
        Ok(FrameDiagnostics {
            reconstruction: frame.reconstruction_residual(points)?,
            duality: frame.duality_residual(points)?,
            torsion: max_abs(&torsion, points)?.value,
            connection_antisymmetry: max_abs(&conn_anti, points)?.value,
            curvature_antisymmetry: max_abs(&curv_anti, points)?.value,
            riemann_first_pair: max_abs(&first, points)?.value,
            riemann_second_pair: max_abs(&second, points)?.value,
            riemann_pair_exchange: max_abs(&exchange, points)?.value,
            first_bianchi: max_abs(&bianchi, points)?.value,
            weyl_trace,
        })
    }
}
