use alloc::vec::Vec;

use super::{HTensor, Submersion, SubmersionError};
use crate::expr::{Expr, Number};
use crate::frames::max_abs;

/// Vorticity and acceleration blocks, computed two ways.
#[derive(Clone, Debug)]
pub struct Invariants {
    /// `M_ij = ½ dψ(e_i, e_j)`.
    pub m: HTensor,
    /// `K_i = -dψ(e_0, e_i)`.
    pub k: HTensor,
    /// `Γ^0_ij`: equals `M_ij` exactly when the flow is rigid.
    pub m_connection: HTensor,
    /// `Γ^0_i0`: equals `K_i` for any flow.
    pub k_connection: HTensor,
}

/// Reads `M` and `K` off `dψ`, and again off the connection matrix.
pub fn invariants(sub: &Submersion) -> Invariants {
    let h = sub.horizontal();
    let mut m = Vec::with_capacity(h * h);
    let mut mb = Vec::with_capacity(h * h);
    for i in 1..=h {
        for j in 1..=h {
            m.push(sub.structure(0, i, j).scale(Number::ratio(1, 2)));
            mb.push(sub.gamma(0, i, j).clone());
        }
    }
    let k = (1..=h).map(|i| -sub.structure(0, 0, i)).collect();
    let kb = (1..=h).map(|i| sub.gamma(0, i, 0).clone()).collect();
    Invariants {
        m: HTensor::new(h, 2, m),
        k: HTensor::new(h, 1, k),
        m_connection: HTensor::new(h, 2, mb),
        k_connection: HTensor::new(h, 1, kb),
    }
}

impl Invariants {
    pub fn horizontal(&self) -> usize {
        self.k.horizontal()
    }

    pub fn m(&self, i: usize, j: usize) -> &Expr {
        self.m.get(&[i, j])
    }

    pub fn k(&self, i: usize) -> &Expr {
        self.k.get(&[i])
    }

    /// `|M|² = Σ_ij M_ij²`.
    pub fn m_norm_sq(&self) -> Expr {
        Expr::sum(self.m.components().iter().map(|x| x * x))
    }

    /// `|K|² = Σ_i K_i²`.
    pub fn k_norm_sq(&self) -> Expr {
        Expr::sum(self.k.components().iter().map(|x| x * x))
    }

    /// `max |Γ^0_ij + Γ^0_ji|`: twice the shear and expansion of the flow.
    pub fn skewness(&self, points: &[Vec<f64>]) -> Result<f64, SubmersionError> {
        let h = self.horizontal();
        let mut sums = Vec::new();
        for i in 0..h {
            for j in i..h {
                sums.push(self.m_connection.get(&[i, j]) + self.m_connection.get(&[j, i]));
            }
        }
        Ok(max_abs(&sums, points)?.value)
    }

    /// Largest disagreement between the `dψ` and connection routes.
    pub fn path_agreement(&self, points: &[Vec<f64>]) -> Result<f64, SubmersionError> {
        let mut diffs = Vec::new();
        for (a, b) in self.m.components().iter().zip(self.m_connection.components()) {
            diffs.push(a - b);
        }
        for (a, b) in self.k.components().iter().zip(self.k_connection.components()) {
            diffs.push(a - b);
        }
        Ok(max_abs(&diffs, points)?.value)
    }
}
