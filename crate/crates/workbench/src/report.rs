//! Machine-readable run report and its text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};

pub const REPORT_SCHEMA: &str = "workbench-report/1";

/// Marker placed on sections computed for a flow that is not rigid.
pub const ADVISORY: &str = "outside theorem hypotheses";

/// A float written with 12 significant digits.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct Num(pub f64);

impl Num {
    pub fn round(x: f64) -> f64 {
        if !x.is_finite() || x == 0.0 {
            return x;
        }
        format!("{x:.11e}").parse().unwrap_or(x)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(Num::round(self.0))
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Num {
        Num(x)
    }
}

pub fn nums(xs: &[f64]) -> Vec<Num> {
    xs.iter().copied().map(Num).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: Tool,
    /// SHA-256 of the conventions document the numbers follow.
    pub conventions_sha256: String,
    pub tasks: Vec<String>,
    pub samples: Samples,
    pub frame: FrameSection,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curvature: Option<CurvatureSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flow: Option<FlowSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub herglotz: Option<HerglotzSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ricci_flat: Option<RicciFlatSection>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Samples {
    pub mode: String,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub prng: String,
    /// Admissible points actually used.
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSection {
    /// `adapted` (first vector along the flow) or `gram-schmidt`.
    pub kind: String,
    pub order: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conformal_scale: Option<String>,
    pub reconstruction: Num,
    pub duality: Num,
    pub torsion: Num,
    pub connection_antisymmetry: Num,
    pub curvature_antisymmetry: Num,
    pub riemann_symmetries: Num,
    pub first_bianchi: Num,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weyl_trace: Option<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub index: Vec<usize>,
    pub value: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCurvature {
    pub point: Vec<Num>,
    /// Independent `R_abcd` with `a < b`, `c < d`, `(a,b) ≤ (c,d)`.
    pub riemann: Vec<Component>,
    /// `R_ab` with `a ≤ b`.
    pub ricci: Vec<Component>,
    pub scalar: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSection {
    pub max_riemann: Num,
    pub max_ricci: Num,
    pub max_scalar: Num,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_weyl: Option<Num>,
    pub points: Vec<PointCurvature>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationSection {
    pub label: String,
    pub flat: bool,
    pub constant_curvature: bool,
    pub ricci_flat: bool,
    /// `flat`, `not-flat` or `indeterminate` (dimension three or less).
    pub conformally_flat: String,
    pub kappa: Num,
    pub constant_curvature_residual: Num,
    pub max_riemann: Num,
    pub max_ricci: Num,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_weyl: Option<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointFlow {
    pub point: Vec<Num>,
    pub norm: Num,
    /// `M_ij`, `i < j`, horizontal frame numbering starting at 1.
    pub m: Vec<Component>,
    pub k: Vec<Num>,
    /// Independent components of the quotient curvature `R̃_ijkl`.
    pub tilde_riemann: Vec<Component>,
    pub tilde_scalar: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSection {
    pub vertical: Num,
    pub vertical_codazzi: Num,
    pub mixed_codazzi: Num,
    pub ricci_00: Num,
    pub ricci_0i: Num,
    pub ricci_ij: Num,
    pub scalar: Num,
    pub leaf_vorticity: Num,
    pub leaf_tilde_riemann: Num,
    pub leaf_tilde_ricci: Num,
    pub leaf_tilde_scalar: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowSection {
    pub rigid: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub advisory: Option<String>,
    pub rigidity_residual: Num,
    pub rotational: bool,
    pub max_vorticity: Num,
    /// `max |Γ^0_ij + Γ^0_ji|`.
    pub skewness: Num,
    /// `M` and `K` from `dψ` against the connection route.
    pub path_agreement: Num,
    pub dropped_coordinate: usize,
    /// `max |g(V,V) - 1|` when the flow was normalized.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normalization: Option<Num>,
    pub constraints: ConstraintSection,
    pub points: Vec<PointFlow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesesSection {
    pub rigidity: Num,
    pub max_vorticity: Num,
    pub closedness: Num,
    pub leaf_m: Num,
    pub leaf_k: Num,
    pub ambient_applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub point: Vec<Num>,
    pub lambda: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaSection {
    pub basepoint: Vec<Num>,
    pub path_agreement: Num,
    pub flow_derivative: Num,
    pub killing_residual: Num,
    pub probes: Vec<Probe>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HerglotzSection {
    /// `isometric-verified`, `hypotheses-not-met`, `inconsistent` or `error`.
    pub verdict: String,
    /// `false` whenever the hypotheses are not met.
    pub theorem_applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub advisory: Option<String>,
    pub hypotheses: Option<HypothesesSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<LambdaSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RicciFlatSection {
    /// `applicable` or `inapplicable`.
    pub status: String,
    pub ricci_00: Num,
    pub ricci_0i: Num,
    pub ricci_ij: Num,
    pub scalar: Num,
    pub leaf_vorticity: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<Num>,
    pub passed: bool,
    /// Reported only; does not affect the exit code.
    pub advisory: bool,
}

fn pts(p: &[Num]) -> String {
    let parts: Vec<String> = p.iter().map(|x| format!("{}", Num::round(x.0))).collect();
    format!("({})", parts.join(", "))
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let f = |x: Num| format!("{:.6e}", x.0);
        let _ = writeln!(w, "{} {} ({})", self.tool.name, self.tool.version, self.schema);
        let _ = writeln!(w, "conventions sha256 {}", self.conventions_sha256);
        let _ = writeln!(w, "tasks: {}", self.tasks.join(", "));
        let s = &self.samples;
        let _ = writeln!(w, "samples: {} {} -> {} points", s.mode, s.count, s.points);
        let fr = &self.frame;
        let _ = writeln!(
            w,
            "frame: {} order {:?}, torsion {}, reconstruction {}",
            fr.kind,
            fr.order,
            f(fr.torsion),
            f(fr.reconstruction)
        );
        if let Some(c) = &self.curvature {
            let _ = writeln!(
                w,
                "curvature: max|R| {}, max|Ric| {}, max|scalar| {}",
                f(c.max_riemann),
                f(c.max_ricci),
                f(c.max_scalar)
            );
            for p in &c.points {
                let _ = writeln!(w, "  at {}: scalar {}", pts(&p.point), f(p.scalar));
                for r in p.riemann.iter().filter(|r| r.value.0.abs() > 1e-12) {
                    let _ = writeln!(w, "    R{:?} = {}", r.index, f(r.value));
                }
            }
        }
        if let Some(c) = &self.classification {
            let _ = writeln!(
                w,
                "classification: {} (kappa {}, conformally flat: {})",
                c.label,
                f(c.kappa),
                c.conformally_flat
            );
        }
        if let Some(fl) = &self.flow {
            let _ = writeln!(
                w,
                "flow: rigid {} (residual {}), max|M| {}, two-route agreement {}",
                fl.rigid,
                f(fl.rigidity_residual),
                f(fl.max_vorticity),
                f(fl.path_agreement)
            );
            if let Some(a) = &fl.advisory {
                let _ = writeln!(w, "  [{a}]");
            }
        }
        if let Some(h) = &self.herglotz {
            let _ = write!(w, "herglotz: {}", h.verdict);
            if let Some(r) = &h.reason {
                let _ = write!(w, " ({r})");
            }
            let _ = writeln!(w);
            if let Some(l) = &h.lambda {
                for p in &l.probes {
                    let _ = writeln!(w, "  lambda{} = {}", pts(&p.point), f(p.lambda));
                }
            }
        }
        if let Some(r) = &self.ricci_flat {
            let _ = writeln!(w, "ricci-flat: {}", r.status);
        }
        for c in &self.checks {
            let status = match (c.passed, c.advisory) {
                (true, _) => "pass",
                (false, true) => "advisory",
                (false, false) => "FAIL",
            };
            let _ = write!(w, "check {:<28} {:<8}", c.name, status);
            if let (Some(v), Some(t)) = (c.value, c.tolerance) {
                let _ = write!(w, " {} (tol {})", f(v), f(t));
            }
            let _ = writeln!(w);
        }
        let _ = writeln!(w, "result: {}", if self.passed { "passed" } else { "failed" });
        out
    }
}
