use alloc::vec::Vec;

use super::{Frame, FrameError};
use crate::expr::Expr;
use crate::exterior::{contract_fields, ext_d, wedge, MatrixForm, PForm};

/// Levi-Civita connection of a frame.
#[derive(Clone, Debug)]
pub struct Connection {
    /// `α^a_b`, tagged η-antisymmetric.
    pub alpha: MatrixForm,
    n: usize,
    /// `c^a_bc = dθ^a(e_b, e_c)`.
    structure: Vec<Expr>,
    /// `Γ^a_bc = α^a_b(e_c)`.
    gamma: Vec<Expr>,
}

impl Connection {
    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Structure function `c^a_bc` (antisymmetric in `b, c`).
    pub fn structure(&self, a: usize, b: usize, c: usize) -> &Expr {
        &self.structure[self.idx(a, b, c)]
    }

    /// Connection coefficient `Γ^a_bc = α^a_b(e_c)`.
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> &Expr {
        &self.gamma[self.idx(a, b, c)]
    }

    pub fn structure_functions(&self) -> &[Expr] {
        &self.structure
    }

    pub fn gammas(&self) -> &[Expr] {
        &self.gamma
    }

    /// Coefficients of `dθ^a + α^a_b ∧ θ^b`, which vanish for a torsion-free connection.
    pub fn torsion_forms(&self, frame: &Frame) -> Result<Vec<PForm>, FrameError> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for a in 0..n {
            let mut t = ext_d(&frame.coframe()[a]);
            for b in 0..n {
                let w = wedge(self.alpha.entry(a, b), &frame.coframe()[b])?;
                if !w.is_zero() {
                    t = t.add(&w)?;
                }
            }
            out.push(t);
        }
        Ok(out)
    }
}

/// Solves `dθ^a = -α^a_b ∧ θ^b` for the η-antisymmetric `α`.
///
/// With `dθ^a = ½ c^a_bc θ^b∧θ^c` and lowered `c_abc = η_a c^a_bc`, the unique
/// solution is `Γ_abc = ½(c_abc + c_bca - c_cab)`, `α^a_b = η_a Γ_abc θ^c`.
/// The coframe must be invertible at every sample point.
pub fn solve_connection(frame: &Frame, points: &[Vec<f64>]) -> Result<Connection, FrameError> {
    frame.check_invertible(points)?;
    let n = frame.dim();
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut structure = alloc::vec![Expr::zero(); n * n * n];
    for a in 0..n {
        let dtheta = ext_d(&frame.coframe()[a]);
        if dtheta.is_zero() {
            continue;
        }
        for b in 0..n {
            for c in b + 1..n {
                let v = contract_fields(&dtheta, &[frame.vector(b), frame.vector(c)])?;
                structure[idx(a, c, b)] = -&v;
                structure[idx(a, b, c)] = v;
            }
        }
    }
    let lowered =
        |a: usize, b: usize, c: usize| structure[idx(a, b, c)].scale(crate::Number::int(frame.eta()[a] as i64));
    let mut gamma = alloc::vec![Expr::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let g = Expr::sum([lowered(a, b, c), lowered(b, c, a), -lowered(c, a, b)])
                    .scale(crate::Number::ratio(1, 2));
                gamma[idx(a, b, c)] = g.scale(crate::Number::int(frame.eta()[a] as i64));
            }
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut form = PForm::zero(frame.metric().dim(), 1);
            for c in 0..n {
                let g = &gamma[idx(a, b, c)];
                if !g.is_zero() {
                    form = form.add(&frame.coframe()[c].scale(g))?;
                }
            }
            entries.push(form);
        }
    }
    let alpha = MatrixForm::new(n, n, entries, Some(frame.eta().to_vec()))?;
    Ok(Connection { alpha, n, structure, gamma })
}
