use alloc::vec::Vec;

use super::form::{ext_d_with, wedge, FormError, PForm};
use crate::expr::{Differentiator, EvalError};

/// Matrix of forms of a common degree, e.g. a connection or its curvature.
///
/// When `eta` is set the matrix claims to lie in the η-orthogonal algebra:
/// `η_i ω^i_j + η_j ω^j_i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixForm {
    rows: usize,
    cols: usize,
    degree: usize,
    entries: Vec<PForm>,
    eta: Option<Vec<i8>>,
}

impl MatrixForm {
    pub fn new(rows: usize, cols: usize, entries: Vec<PForm>, eta: Option<Vec<i8>>) -> Result<MatrixForm, FormError> {
        if entries.len() != rows * cols || entries.is_empty() {
            return Err(FormError::Shape);
        }
        let degree = entries[0].degree();
        let dim = entries[0].dim();
        if entries.iter().any(|e| e.degree() != degree || e.dim() != dim) {
            return Err(FormError::Shape);
        }
        if let Some(eta) = &eta {
            if rows != cols || eta.len() != rows {
                return Err(FormError::Shape);
            }
        }
        Ok(MatrixForm { rows, cols, degree, entries, eta })
    }

    pub fn zero(rows: usize, cols: usize, dim: usize, degree: usize) -> MatrixForm {
        MatrixForm { rows, cols, degree, entries: alloc::vec![PForm::zero(dim, degree); rows * cols], eta: None }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eta(&self) -> Option<&[i8]> {
        self.eta.as_deref()
    }

    pub fn entry(&self, i: usize, j: usize) -> &PForm {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[PForm] {
        &self.entries
    }

    /// Largest `|η_i ω^i_j + η_j ω^j_i|` coefficient at `point`; zero when untagged.
    pub fn tag_residual(&self, point: &[f64]) -> Result<f64, EvalError> {
        let Some(eta) = &self.eta else { return Ok(0.0) };
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                let a = self.entry(i, j).scale(&crate::Expr::int(eta[i] as i64));
                let b = self.entry(j, i).scale(&crate::Expr::int(eta[j] as i64));
                let s = a.add(&b).map_err(|_| EvalError::NonFinite)?;
                worst = worst.max(s.max_abs_at(point)?);
            }
        }
        Ok(worst)
    }
}

/// `Ω = dω + ω∧ω`, entrywise `Ω^i_j = dω^i_j + Σ_k ω^i_k ∧ ω^k_j`.
///
/// For matrix Lie algebras this equals `dω + ½[ω∧ω]`. An η tag on the input
/// carries over to the output.
pub fn matrix_curvature(omega: &MatrixForm) -> Result<MatrixForm, FormError> {
    if omega.rows != omega.cols {
        return Err(FormError::NonSquare { rows: omega.rows, cols: omega.cols });
    }
    let n = omega.rows;
    let mut differ = Differentiator::new();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ext_d_with(omega.entry(i, j), &mut differ);
            for k in 0..n {
                let w = wedge(omega.entry(i, k), omega.entry(k, j))?;
                if !w.is_zero() {
                    acc = acc.add(&w)?;
                }
            }
            entries.push(acc);
        }
    }
    MatrixForm::new(n, n, entries, omega.eta.clone())
}
