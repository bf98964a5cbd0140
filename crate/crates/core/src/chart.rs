//! Coordinate charts, sampling domains and reproducible sample sets.

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{parse_expr, Expr, ParseError, Tape};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ChartError {
    #[error("a chart needs at least two coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("duplicate coordinate name `{0}`")]
    DuplicateName(String),
    #[error("invalid coordinate name `{0}`")]
    InvalidName(String),
    #[error("signature has length {got}, expected {expected}")]
    SignatureLength { expected: usize, got: usize },
    #[error("signature entries must be +1 or -1, got {0}")]
    SignatureEntry(i8),
    #[error("domain has {got} bounds, expected {expected}")]
    BoundsLength { expected: usize, got: usize },
    #[error("empty or non-finite bound for `{0}`")]
    BadBound(String),
    #[error("could not draw {wanted} admissible samples (got {got}); exclusions cover too much of the box")]
    SamplingExhausted { wanted: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Region cut out of the sampling box around a singular locus.
///
/// A point is excluded when `expr` fails to evaluate there or when
/// `|expr| < min_abs`.
#[derive(Clone, Debug)]
pub struct Exclusion {
    pub expr: Expr,
    pub min_abs: f64,
    pub label: String,
}

#[derive(Clone, Debug, Default)]
pub struct Domain {
    /// Closed interval per coordinate, in chart order.
    pub bounds: Vec<(f64, f64)>,
    pub exclusions: Vec<Exclusion>,
    /// Declared by the user; never inferred.
    pub simply_connected: bool,
}

/// How to draw sample points from the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSpec {
    /// `count` points from ChaCha8 seeded with `seed` (rejection of excluded points).
    Random { count: usize, seed: u64 },
    /// Cell centres of a uniform grid with `per_axis` cells per coordinate.
    Grid { per_axis: usize },
}

/// Ordered coordinates with a frame signature and a sampling domain.
#[derive(Clone, Debug)]
pub struct Chart {
    names: Vec<String>,
    signature: Vec<i8>,
    domain: Domain,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && crate::expr::Func::from_name(s).is_none()
}

impl Chart {
    pub fn new(names: Vec<String>, signature: Vec<i8>, domain: Domain) -> Result<Chart, ChartError> {
        let n = names.len();
        if n < 2 {
            return Err(ChartError::TooFewCoordinates(n));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(ChartError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(ChartError::DuplicateName(name.clone()));
            }
        }
        if signature.len() != n {
            return Err(ChartError::SignatureLength { expected: n, got: signature.len() });
        }
        if let Some(&bad) = signature.iter().find(|s| **s != 1 && **s != -1) {
            return Err(ChartError::SignatureEntry(bad));
        }
        if domain.bounds.len() != n {
            return Err(ChartError::BoundsLength { expected: n, got: domain.bounds.len() });
        }
        for (name, (lo, hi)) in names.iter().zip(&domain.bounds) {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(ChartError::BadBound(name.clone()));
            }
        }
        Ok(Chart { names, signature, domain })
    }

    /// Riemannian chart over a box, no exclusions.
    pub fn riemannian(names: &[&str], bounds: &[(f64, f64)]) -> Result<Chart, ChartError> {
        Chart::new(
            names.iter().map(|s| String::from(*s)).collect(),
            alloc::vec![1; names.len()],
            Domain { bounds: bounds.to_vec(), exclusions: Vec::new(), simply_connected: false },
        )
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn eta(&self, a: usize) -> f64 {
        self.signature[a] as f64
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.iter().all(|s| *s == 1)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn domain_mut(&mut self) -> &mut Domain {
        &mut self.domain
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses an expression over this chart's coordinates (raw tree).
    pub fn parse(&self, text: &str) -> Result<Expr, ParseError> {
        parse_expr(text, &self.names)
    }

    /// Adds an exclusion predicate parsed from `text`.
    pub fn exclude(&mut self, text: &str, min_abs: f64, label: &str) -> Result<(), ChartError> {
        let expr = self.parse(text)?.simplify();
        self.domain.exclusions.push(Exclusion { expr, min_abs, label: String::from(label) });
        Ok(())
    }

    pub fn in_box(&self, p: &[f64]) -> bool {
        p.len() == self.dim() && p.iter().zip(&self.domain.bounds).all(|(x, (lo, hi))| *lo <= *x && *x <= *hi)
    }

    /// Whether `p` lies in an excluded region (box membership is not checked).
    pub fn is_excluded(&self, p: &[f64]) -> bool {
        self.domain.exclusions.iter().any(|ex| match ex.expr.eval(p) {
            Ok(v) => v.abs() < ex.min_abs,
            Err(_) => true,
        })
    }

    fn excluder(&self) -> Option<Tape> {
        if self.domain.exclusions.is_empty() {
            return None;
        }
        let exprs: Vec<Expr> = self.domain.exclusions.iter().map(|e| e.expr.clone()).collect();
        Some(Tape::compile(&exprs))
    }

    /// Deterministic sample set for `spec`.
    ///
    /// Random mode draws each coordinate in chart order as
    /// `lo + (hi - lo)·u`, with `u = (next_u64 >> 11)·2^-53` from ChaCha8
    /// seeded via `seed_from_u64`; excluded points are rejected and drawing
    /// continues. Grid mode returns admissible cell centres in row-major order
    /// (last coordinate fastest).
    pub fn samples(&self, spec: SampleSpec) -> Result<Vec<Vec<f64>>, ChartError> {
        let tape = self.excluder();
        let mut scratch = Vec::new();
        let mut vals = alloc::vec![0.0; self.domain.exclusions.len()];
        let mut admissible = |p: &[f64]| match &tape {
            None => true,
            Some(t) => match t.eval_into(p, &mut scratch, &mut vals) {
                Ok(()) => vals.iter().zip(&self.domain.exclusions).all(|(v, ex)| v.abs() >= ex.min_abs),
                Err(_) => false,
            },
        };
        let n = self.dim();
        match spec {
            SampleSpec::Random { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut out = Vec::with_capacity(count);
                let budget = count.saturating_mul(1000).max(1000);
                let mut tries = 0;
                while out.len() < count {
                    if tries == budget {
                        return Err(ChartError::SamplingExhausted { wanted: count, got: out.len() });
                    }
                    tries += 1;
                    let p: Vec<f64> = self
                        .domain
                        .bounds
                        .iter()
                        .map(|(lo, hi)| {
                            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                            lo + (hi - lo) * u
                        })
                        .collect();
                    if admissible(&p) {
                        out.push(p);
                    }
                }
                Ok(out)
            }
            SampleSpec::Grid { per_axis } => {
                let per_axis = per_axis.max(1);
                let total = per_axis.pow(n as u32);
                let mut out = Vec::new();
                for flat in 0..total {
                    let mut k = flat;
                    let mut p = alloc::vec![0.0; n];
                    for axis in (0..n).rev() {
                        let idx = k % per_axis;
                        k /= per_axis;
                        let (lo, hi) = self.domain.bounds[axis];
                        p[axis] = lo + (hi - lo) * (idx as f64 + 0.5) / per_axis as f64;
                    }
                    if admissible(&p) {
                        out.push(p);
                    }
                }
                if out.is_empty() {
                    return Err(ChartError::SamplingExhausted { wanted: total, got: 0 });
                }
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Chart {
        Chart::riemannian(&["x", "y", "z"], &[(-1.0, 1.0), (-1.0, 1.0), (0.0, 2.0)]).unwrap()
    }

    #[test]
    fn rejects_bad_charts() {
        assert_eq!(Chart::riemannian(&["x"], &[(0.0, 1.0)]).unwrap_err(), ChartError::TooFewCoordinates(1));
        assert!(matches!(Chart::riemannian(&["x", "x"], &[(0.0, 1.0), (0.0, 1.0)]), Err(ChartError::DuplicateName(_))));
        assert!(matches!(Chart::riemannian(&["x", "sin"], &[(0.0, 1.0), (0.0, 1.0)]), Err(ChartError::InvalidName(_))));
        let d = Domain { bounds: alloc::vec![(0.0, 1.0); 2], ..Domain::default() };
        assert!(matches!(
            Chart::new(alloc::vec!["a".into(), "b".into()], alloc::vec![1], d),
            Err(ChartError::SignatureLength { .. })
        ));
    }

    #[test]
    fn random_samples_are_reproducible_and_in_box() {
        let c = xyz();
        let a = c.samples(SampleSpec::Random { count: 50, seed: 7 }).unwrap();
        let b = c.samples(SampleSpec::Random { count: 50, seed: 7 }).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| c.in_box(p)));
        let other = c.samples(SampleSpec::Random { count: 50, seed: 8 }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn exclusions_are_respected() {
        let mut c = xyz();
        c.exclude("x^2 + y^2", 0.25, "axis").unwrap();
        let pts = c.samples(SampleSpec::Random { count: 200, seed: 1 }).unwrap();
        assert!(pts.iter().all(|p| p[0] * p[0] + p[1] * p[1] >= 0.25));
        let grid = c.samples(SampleSpec::Grid { per_axis: 4 }).unwrap();
        assert!(grid.iter().all(|p| !c.is_excluded(p)));
        assert!(grid.len() < 64);
    }
}
