use alloc::vec::Vec;

use super::Submersion;
use crate::expr::{Differentiator, Expr};

/// Covariant tensor with horizontal indices only, components in the adapted frame.
///
/// Indices are 0-based horizontal; component `(i_1, ..., i_r)` is stored at
/// `Σ i_s h^{r-s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HTensor {
    h: usize,
    rank: usize,
    comps: Vec<Expr>,
}

impl HTensor {
    pub fn new(h: usize, rank: usize, comps: Vec<Expr>) -> HTensor {
        assert_eq!(comps.len(), h.pow(rank as u32), "component count");
        HTensor { h, rank, comps }
    }

    pub fn horizontal(&self) -> usize {
        self.h
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.h + i)
    }

    fn unflat(&self, mut k: usize) -> Vec<usize> {
        let mut idx = alloc::vec![0; self.rank];
        for s in (0..self.rank).rev() {
            idx[s] = k % self.h;
            k /= self.h;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.comps[self.flat(idx)]
    }

    /// `Σ_s Σ_k coeff(i_s, k) T_{I[s→k]}` for every multi-index `I`.
    fn index_sum(&self, coeff: impl Fn(usize, usize) -> Expr) -> Vec<Expr> {
        (0..self.comps.len())
            .map(|flat| {
                let idx = self.unflat(flat);
                let mut terms = Vec::new();
                for s in 0..self.rank {
                    let mut j = idx.clone();
                    for k in 0..self.h {
                        j[s] = k;
                        let t = self.get(&j);
                        if t.is_zero() {
                            continue;
                        }
                        let c = coeff(idx[s], k);
                        if !c.is_zero() {
                            terms.push(c * t);
                        }
                    }
                }
                Expr::sum(terms)
            })
            .collect()
    }

    /// Horizontally projected covariant derivative along frame vector `e_c`
    /// (frame numbering, `c = 0` is the flow):
    /// `T_{I;c} = e_c(T_I) + Σ_s Σ_k Γ_{i_s k c} T_{I[s→k]}`.
    pub fn covariant(&self, sub: &Submersion, c: usize, differ: &mut Differentiator) -> HTensor {
        let corr = self.index_sum(|i, k| sub.gamma(i + 1, k + 1, c).clone());
        let comps = self.comps.iter().zip(corr).map(|(t, r)| sub.along(c, t, differ) + r).collect();
        HTensor { h: self.h, rank: self.rank, comps }
    }

    /// Covariant derivatives along every horizontal direction, appended as a last index.
    pub fn horizontal_gradient(&self, sub: &Submersion, differ: &mut Differentiator) -> HTensor {
        let grads: Vec<HTensor> = (1..=self.h).map(|c| self.covariant(sub, c, differ)).collect();
        let mut comps = Vec::with_capacity(self.comps.len() * self.h);
        for k in 0..self.comps.len() {
            for g in &grads {
                comps.push(g.comps[k].clone());
            }
        }
        HTensor { h: self.h, rank: self.rank + 1, comps }
    }

    /// One component of [`HTensor::leaf_derivative`].
    pub fn leaf_component(&self, sub: &Submersion, idx: &[usize], differ: &mut Differentiator) -> Expr {
        let mut terms = alloc::vec![sub.along(0, self.get(idx), differ)];
        let mut j = idx.to_vec();
        for s in 0..self.rank {
            for m in 0..self.h {
                j[s] = m;
                let t = self.get(&j);
                let c = sub.structure(m + 1, 0, idx[s] + 1);
                if !t.is_zero() && !c.is_zero() {
                    terms.push(c * t);
                }
            }
            j[s] = idx[s];
        }
        Expr::sum(terms)
    }

    /// Horizontal part of the Lie derivative along the unit flow:
    /// `(L_u T)_I = u(T_I) + Σ_s Σ_m c^m_{0 i_s} T_{I[s→m]}`.
    pub fn leaf_derivative(&self, sub: &Submersion, differ: &mut Differentiator) -> HTensor {
        let corr = self.index_sum(|i, m| sub.structure(m + 1, 0, i + 1).clone());
        let comps = self.comps.iter().zip(corr).map(|(t, r)| sub.along(0, t, differ) + r).collect();
        HTensor { h: self.h, rank: self.rank, comps }
    }
}
