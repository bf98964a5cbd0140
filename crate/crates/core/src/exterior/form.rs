use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::expr::{Differentiator, EvalError, Expr};
use crate::linalg;

/// Bitmask of coordinate indices; bit `i` set means `dx^i` is a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub fn from_indices(idx: &[usize]) -> Option<(Blade, f64)> {
        let mut bits = 0u32;
        for &i in idx {
            let b = 1u32 << i;
            if bits & b != 0 {
                return None;
            }
            bits |= b;
        }
        Some((Blade(bits), linalg::permutation_sign(idx)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Sign of `self ∧ other` relative to the sorted blade, or `None` if they overlap.
    fn wedge_sign(self, other: Blade) -> Option<f64> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in other) with i > j
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            swaps += (self.0 >> j).count_ones();
        }
        Some(if swaps.is_multiple_of(2) { 1.0 } else { -1.0 })
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FormError {
    #[error("forms live on charts of different dimension ({0} vs {1})")]
    ChartMismatch(usize, usize),
    #[error("a {degree}-form needs {degree} vectors, got {got}")]
    Arity { degree: usize, got: usize },
    #[error("matrix form is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix entries have mixed or mismatched shapes")]
    Shape,
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
}

/// A differential `p`-form on an `n`-dimensional chart.
#[derive(Clone, Debug, PartialEq)]
pub struct PForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, Expr>,
}

impl PForm {
    pub fn zero(dim: usize, degree: usize) -> PForm {
        PForm { dim, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, f: Expr) -> PForm {
        PForm::zero(dim, 0).with_term(Blade(0), f)
    }

    /// The coordinate differential `dx^i`.
    pub fn dx(dim: usize, i: usize) -> PForm {
        PForm::zero(dim, 1).with_term(Blade(1 << i), Expr::one())
    }

    /// `Σ_μ coeffs[μ] dx^μ`.
    pub fn one_form(coeffs: &[Expr]) -> PForm {
        let mut f = PForm::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(Blade(1 << i), c.clone());
        }
        f
    }

    /// Builds a form from `(indices, coefficient)` pairs in any index order.
    pub fn from_terms(dim: usize, degree: usize, terms: &[(&[usize], Expr)]) -> PForm {
        let mut f = PForm::zero(dim, degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree, "index tuple length must equal the degree");
            assert!(idx.iter().all(|i| *i < dim), "index out of range");
            if let Some((b, s)) = Blade::from_indices(idx) {
                f.add_term(b, if s < 0.0 { -c } else { c.clone() });
            }
        }
        f
    }

    fn with_term(mut self, b: Blade, c: Expr) -> PForm {
        self.add_term(b, c);
        self
    }

    fn add_term(&mut self, b: Blade, c: Expr) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&b) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(b, s);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Expr)> {
        self.terms.iter().map(|(b, e)| (*b, e))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Structurally zero (no stored coefficient).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `dx^idx[0] ∧ ...` (with the permutation sign applied).
    pub fn coeff(&self, idx: &[usize]) -> Expr {
        match Blade::from_indices(idx) {
            Some((b, s)) => match self.terms.get(&b) {
                Some(c) if s < 0.0 => -c,
                Some(c) => c.clone(),
                None => Expr::zero(),
            },
            None => Expr::zero(),
        }
    }

    /// The coefficient of a 0-form.
    pub fn as_scalar(&self) -> Expr {
        self.terms.get(&Blade(0)).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn add(&self, other: &PForm) -> Result<PForm, FormError> {
        self.check(other)?;
        if self.degree != other.degree {
            return Err(FormError::Shape);
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PForm) -> Result<PForm, FormError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PForm {
        self.scale(&Expr::int(-1))
    }

    /// Multiplication by a function.
    pub fn scale(&self, f: &Expr) -> PForm {
        let mut out = PForm::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, c * f);
        }
        out
    }

    fn check(&self, other: &PForm) -> Result<(), FormError> {
        if self.dim != other.dim {
            return Err(FormError::ChartMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// Every stored coefficient, in blade order.
    pub fn coefficients(&self) -> Vec<Expr> {
        self.terms.values().cloned().collect()
    }

    /// Largest coefficient magnitude at `point`.
    pub fn max_abs_at(&self, point: &[f64]) -> Result<f64, EvalError> {
        let mut m: f64 = 0.0;
        for c in self.terms.values() {
            m = m.max(c.eval(point)?.abs());
        }
        Ok(m)
    }
}

/// `a ∧ b`. When `deg a + deg b` exceeds the dimension the result is the zero
/// form of that (collapsed) degree.
pub fn wedge(a: &PForm, b: &PForm) -> Result<PForm, FormError> {
    a.check(b)?;
    let mut out = PForm::zero(a.dim, a.degree + b.degree);
    if a.degree + b.degree > a.dim {
        return Ok(out);
    }
    for (ba, ca) in &a.terms {
        for (bb, cb) in &b.terms {
            if let Some(s) = ba.wedge_sign(*bb) {
                let c = ca * cb;
                out.add_term(Blade(ba.0 | bb.0), if s < 0.0 { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Exterior derivative.
pub fn ext_d(a: &PForm) -> PForm {
    ext_d_with(a, &mut Differentiator::new())
}

pub(crate) fn ext_d_with(a: &PForm, differ: &mut Differentiator) -> PForm {
    let mut out = PForm::zero(a.dim, a.degree + 1);
    if a.degree >= a.dim {
        return out;
    }
    for (b, c) in &a.terms {
        for k in 0..a.dim {
            if b.contains(k) || !c.depends_on(k) {
                continue;
            }
            let dc = differ.diff(c, k);
            if dc.is_zero() {
                continue;
            }
            // moving dx^k past the smaller indices of the blade
            let before = (b.0 & ((1u32 << k) - 1)).count_ones();
            out.add_term(Blade(b.0 | (1 << k)), if before.is_multiple_of(2) { dc } else { -dc });
        }
    }
    out
}

/// Numeric value `a(v_1, ..., v_p)` at `point`.
pub fn form_eval(a: &PForm, vectors: &[Vec<f64>], point: &[f64]) -> Result<f64, FormError> {
    if vectors.len() != a.degree {
        return Err(FormError::Arity { degree: a.degree, got: vectors.len() });
    }
    if vectors.iter().any(|v| v.len() != a.dim) {
        return Err(FormError::ChartMismatch(a.dim, vectors.iter().map(Vec::len).find(|l| *l != a.dim).unwrap()));
    }
    let p = a.degree;
    let mut total = 0.0;
    for (b, c) in &a.terms {
        let idx = b.indices();
        let mut m = Vec::with_capacity(p * p);
        for i in &idx {
            for v in vectors {
                m.push(v[*i]);
            }
        }
        let d = linalg::det(m, p);
        if d != 0.0 {
            total += c.eval(point)? * d;
        }
    }
    Ok(total)
}

/// Symbolic value `a(X_1, ..., X_p)` for vector fields given by their
/// coordinate components.
pub fn contract_fields(a: &PForm, fields: &[&[Expr]]) -> Result<Expr, FormError> {
    if fields.len() != a.degree {
        return Err(FormError::Arity { degree: a.degree, got: fields.len() });
    }
    let perms = linalg::permutations(a.degree);
    let mut terms = Vec::new();
    for (b, c) in &a.terms {
        let idx = b.indices();
        let mut det_terms = Vec::with_capacity(perms.len());
        for (perm, sign) in &perms {
            let mut factors = Vec::with_capacity(a.degree + 1);
            factors.push(Expr::int(*sign as i64));
            let mut zero = false;
            for (slot, &k) in perm.iter().enumerate() {
                let comp = &fields[slot][idx[k]];
                if comp.is_zero() {
                    zero = true;
                    break;
                }
                factors.push(comp.clone());
            }
            if !zero {
                det_terms.push(Expr::product(factors));
            }
        }
        if !det_terms.is_empty() {
            terms.push(c * Expr::sum(det_terms));
        }
    }
    Ok(Expr::sum(terms))
}
