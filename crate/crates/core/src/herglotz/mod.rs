//! Rigid rotational flows: hypothesis checks, the Killing magnitude `λ` and
//! isometry verification.
//!
//! A rigid, rotational unit flow `u` in a flat, constant-curvature or
//! conformally flat ambient is expected to be isometric: there is a positive
//! `λ` with `d log λ = K̂ = Σ_i K_i θ^i` and `λu` Killing. Nothing here
//! assumes that outcome. The module checks the hypotheses, checks the
//! consequences (`K̂` closed, `M` and `K` invariant along the flow),
//! reconstructs `λ` by path integration and then tests `λu` against the
//! coordinate Killing equation, reporting `Inconsistent` whenever a
//! consequence fails.

mod hypotheses;
mod killing;
mod lambda;
mod ricci;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::expr::EvalError;
use crate::frames::{Classification, FrameError};
use crate::submersion::{Invariants, Submersion, SubmersionError};

pub use hypotheses::{check_hypotheses, Hypotheses};
pub use killing::{verify_killing, ScaledFlow, VectorFieldSource};
pub use lambda::{LambdaProblem, PathIntegral};
pub use ricci::{ricci_flat_check, RicciFlatReport};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum HerglotzError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Submersion(#[from] SubmersionError),
    #[error("evaluation failed at point {point:?}: {source}")]
    Eval { point: Vec<f64>, source: EvalError },
    #[error("integration path enters an excluded region at {point:?}")]
    PathExcluded { point: Vec<f64> },
    #[error("K is not closed (residual {residual:e}); log λ is path dependent")]
    NotClosed { residual: f64 },
    #[error("the domain is not declared simply connected; λ is not reconstructed")]
    NotSimplyConnected,
    #[error("quadrature did not converge (error estimate {error:e})")]
    Quadrature { error: f64 },
    #[error("basepoint has {got} coordinates, expected {expected}")]
    Basepoint { expected: usize, got: usize },
}

/// Outcome of the isometry analysis.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    IsometricVerified,
    HypothesesNotMet(String),
    /// The hypotheses hold but a consequence failed numerically.
    Inconsistent(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::IsometricVerified => "isometric-verified",
            Verdict::HypothesesNotMet(_) => "hypotheses-not-met",
            Verdict::Inconsistent(_) => "inconsistent",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::IsometricVerified => None,
            Verdict::HypothesesNotMet(r) | Verdict::Inconsistent(r) => Some(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    /// Absolute tolerance on every residual that must vanish.
    pub residual: f64,
    /// `max |M|` at or below this counts as irrotational.
    pub rotational_threshold: f64,
    /// Absolute and relative tolerance of each path integral.
    pub quadrature: f64,
    /// Relative tolerance between the two integration paths.
    pub path_agreement: f64,
    /// Where `λ = 1`; the first sample when `None`.
    pub basepoint: Option<Vec<f64>>,
    /// Points at which `λ` is reported.
    pub probes: Vec<Vec<f64>>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            residual: 1e-7,
            rotational_threshold: 1e-6,
            quadrature: 1e-10,
            path_agreement: 1e-6,
            basepoint: None,
            probes: Vec::new(),
        }
    }
}

/// Everything measured while reconstructing `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSummary {
    pub basepoint: Vec<f64>,
    /// Largest `|log λ_straight - log λ_polygonal| / max(1, |log λ|)`.
    pub path_agreement: f64,
    /// `max |u(λ)|`.
    pub flow_derivative: f64,
    /// `max |(L_{λu} g)(e_a, e_b)|`.
    pub killing_residual: f64,
    pub probes: Vec<(Vec<f64>, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub hypotheses: Hypotheses,
    pub verdict: Verdict,
    pub lambda: Option<LambdaSummary>,
}

/// Runs the hypothesis checks and, when they hold, reconstructs and verifies `λ`.
pub fn analyze(
    sub: &Submersion,
    inv: &Invariants,
    ambient: &Classification,
    points: &[Vec<f64>],
    opts: &Options,
) -> Result<Report, HerglotzError> {
    let hyp = check_hypotheses(sub, inv, ambient, points)?;
    let not_met =
        |reason: String| Report { hypotheses: hyp.clone(), verdict: Verdict::HypothesesNotMet(reason), lambda: None };
    if hyp.rigidity > opts.residual {
        return Ok(not_met(format!("flow is not rigid (residual {:e})", hyp.rigidity)));
    }
    if hyp.max_vorticity <= opts.rotational_threshold {
        return Ok(not_met(format!("flow is irrotational (max |M| = {:e})", hyp.max_vorticity)));
    }
    if !hyp.ambient_applicable {
        return Ok(not_met(String::from("ambient is not flat, of constant curvature or conformally flat")));
    }
    let inconsistent =
        |reason: String| Report { hypotheses: hyp.clone(), verdict: Verdict::Inconsistent(reason), lambda: None };
    if hyp.closedness > opts.residual {
        return Ok(inconsistent(format!("K is not closed (residual {:e})", hyp.closedness)));
    }
    if hyp.leaf_m.max(hyp.leaf_k) > opts.residual {
        return Ok(inconsistent(format!(
            "M or K varies along the flow (|u(M)| = {:e}, |u(K)| = {:e})",
            hyp.leaf_m, hyp.leaf_k
        )));
    }
    let chart = sub.data.frame.metric().chart();
    if !chart.domain().simply_connected {
        return Ok(not_met(String::from("domain is not declared simply connected")));
    }
    let basepoint = opts.basepoint.clone().unwrap_or_else(|| points[0].clone());
    let problem = LambdaProblem::from_submersion(sub, inv, basepoint.clone(), points, opts.residual, opts.quadrature)?;
    let source = ScaledFlow::new(&problem, sub.unit());

    let mut path_agreement = 0.0f64;
    let mut flow_derivative = 0.0f64;
    for p in points {
        let a = problem.log_lambda(p)?;
        let b = problem.log_lambda_polygonal(p)?;
        path_agreement = path_agreement.max((a.value - b.value).abs() / a.value.abs().max(1.0));
        let (_, du) = source.lambda_jet(p)?;
        let u = source.unit_at(p)?;
        flow_derivative = flow_derivative.max(u.iter().zip(&du).map(|(x, y)| x * y).sum::<f64>().abs());
    }
    let killing_residual = verify_killing(&sub.data.frame, &source, points)?;
    let probes =
        opts.probes.iter().map(|p| problem.lambda(p).map(|v| (p.clone(), v))).collect::<Result<Vec<_>, _>>()?;
    let summary = LambdaSummary { basepoint, path_agreement, flow_derivative, killing_residual, probes };

    let verdict = if path_agreement > opts.path_agreement {
        Verdict::Inconsistent(format!("integration paths disagree (relative {path_agreement:e})"))
    } else if flow_derivative > opts.residual {
        Verdict::Inconsistent(format!("λ varies along the flow (|u(λ)| = {flow_derivative:e})"))
    } else if killing_residual > opts.residual {
        Verdict::Inconsistent(format!("λu fails the Killing equation (residual {killing_residual:e})"))
    } else {
        Verdict::IsometricVerified
    };
    Ok(Report { hypotheses: hyp, verdict, lambda: Some(summary) })
}
