//! JSON run configuration and its validation.

use std::collections::BTreeSet;

use cartan_core::frames::Metric;
use cartan_core::{Chart, Domain, Expr, SampleSpec};
use serde::{Deserialize, Serialize};

use crate::WorkbenchError;

pub const CONFIG_SCHEMA: &str = "workbench-config/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema: String,
    pub chart: ChartConfig,
    /// Row-major `n × n` expression strings.
    pub metric: Vec<Vec<String>>,
    #[serde(default)]
    pub flow: Option<Vec<String>>,
    /// `σ` such that the analysed metric is `e^{2σ} g`.
    #[serde(default)]
    pub conformal_scale: Option<String>,
    /// Coordinate order for Gram-Schmidt when no flow frame is built.
    #[serde(default)]
    pub frame_order: Option<Vec<usize>>,
    pub samples: SamplesConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub tasks: Vec<String>,
    #[serde(default)]
    pub basepoint: Option<Vec<f64>>,
    /// Points at which `λ` is reported.
    #[serde(default)]
    pub probes: Vec<Vec<f64>>,
    /// Points at which components are printed; the first three samples when empty.
    #[serde(default)]
    pub report_points: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartConfig {
    pub coordinates: Vec<String>,
    /// All `+1` when omitted.
    #[serde(default)]
    pub signature: Option<Vec<i8>>,
    pub domain: DomainConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub bounds: Vec<[f64; 2]>,
    #[serde(default)]
    pub exclusions: Vec<ExclusionConfig>,
    #[serde(default)]
    pub simply_connected: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExclusionConfig {
    pub expr: String,
    pub min_abs: f64,
    #[serde(default)]
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    Grid,
    Random,
}

/// In grid mode `count` is the number of cells per coordinate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesConfig {
    pub mode: SampleMode,
    pub count: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct Tolerances {
    /// Every residual that must vanish.
    pub residual: f64,
    /// Frame reconstruction, duality and torsion.
    pub frame: f64,
    pub rotational_threshold: f64,
    pub quadrature: f64,
    /// Relative agreement of the two `λ` integration paths.
    pub path_agreement: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual: 1e-7, frame: 1e-9, rotational_threshold: 1e-6, quadrature: 1e-10, path_agreement: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Curvature,
    Classify,
    Flow,
    Herglotz,
    RicciFlat,
}

impl Task {
    pub const ALL: [Task; 5] = [Task::Curvature, Task::Classify, Task::Flow, Task::Herglotz, Task::RicciFlat];

    pub fn name(self) -> &'static str {
        match self {
            Task::Curvature => "curvature",
            Task::Classify => "classify",
            Task::Flow => "flow",
            Task::Herglotz => "herglotz",
            Task::RicciFlat => "ricci-flat",
        }
    }

    fn from_name(s: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn needs_flow(self) -> bool {
        matches!(self, Task::Flow | Task::Herglotz | Task::RicciFlat)
    }
}

/// A config that has passed every static check, with parsed pieces.
#[derive(Clone, Debug)]
pub struct Validated {
    pub config: Config,
    pub tasks: BTreeSet<Task>,
    /// Already rescaled by the conformal factor when one is given.
    pub metric: Metric,
    pub flow: Option<Vec<Expr>>,
    pub order: Vec<usize>,
    pub samples: SampleSpec,
}

fn bad(msg: impl Into<String>) -> WorkbenchError {
    WorkbenchError::Config(msg.into())
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config, WorkbenchError> {
        serde_json::from_str(text).map_err(|e| WorkbenchError::Json(e.to_string()))
    }

    pub fn validate(self) -> Result<Validated, WorkbenchError> {
        if self.schema != CONFIG_SCHEMA {
            return Err(bad(format!("unsupported schema `{}`, expected `{CONFIG_SCHEMA}`", self.schema)));
        }
        let n = self.chart.coordinates.len();
        let chart = self.chart()?;

        if self.metric.len() != n || self.metric.iter().any(|row| row.len() != n) {
            return Err(bad(format!("metric must be {n}×{n}")));
        }
        let entries: Vec<&str> = self.metric.iter().flatten().map(String::as_str).collect();
        let mut metric = Metric::parse(chart.clone(), &entries).map_err(|e| bad(format!("metric: {e}")))?;
        if let Some(sigma) = &self.conformal_scale {
            let s = chart.parse(sigma).map_err(|e| bad(format!("conformal_scale: {e}")))?;
            metric = metric.conformal(&s);
        }

        let flow = match &self.flow {
            None => None,
            Some(f) if f.len() != n => return Err(bad(format!("flow has {} components, expected {n}", f.len()))),
            Some(f) => Some(
                f.iter()
                    .enumerate()
                    .map(|(i, s)| chart.parse(s).map_err(|e| bad(format!("flow[{i}]: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };

        let order = match &self.frame_order {
            None => (0..n).collect(),
            Some(o) => {
                let mut sorted = o.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return Err(bad(format!("frame_order must be a permutation of 0..{n}")));
                }
                o.clone()
            }
        };

        let samples = match (self.samples.mode, self.samples.seed) {
            _ if self.samples.count == 0 => return Err(bad("samples.count must be positive")),
            (SampleMode::Random, None) => return Err(bad("samples.seed is required in random mode")),
            (SampleMode::Random, Some(seed)) => SampleSpec::Random { count: self.samples.count, seed },
            (SampleMode::Grid, _) => SampleSpec::Grid { per_axis: self.samples.count },
        };

        let t = &self.tolerances;
        for (name, v) in [
            ("residual", t.residual),
            ("frame", t.frame),
            ("rotational-threshold", t.rotational_threshold),
            ("quadrature", t.quadrature),
            ("path-agreement", t.path_agreement),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(bad(format!("tolerance {name} must be positive and finite")));
            }
        }

        if self.tasks.is_empty() {
            return Err(bad("tasks must not be empty"));
        }
        let mut tasks = BTreeSet::new();
        for name in &self.tasks {
            if name == "all" {
                tasks.extend(Task::ALL);
            } else {
                tasks.insert(Task::from_name(name).ok_or_else(|| bad(format!("unknown task `{name}`")))?);
            }
        }
        if flow.is_none() {
            if let Some(t) = tasks.iter().find(|t| t.needs_flow()) {
                return Err(bad(format!("task `{}` needs a flow", t.name())));
            }
        }

        let check_point = |what: &str, p: &[f64]| -> Result<(), WorkbenchError> {
            if p.len() != n {
                return Err(bad(format!("{what} has {} coordinates, expected {n}", p.len())));
            }
            if !chart.in_box(p) || chart.is_excluded(p) {
                return Err(bad(format!("{what} {p:?} is outside the domain")));
            }
            Ok(())
        };
        if let Some(b) = &self.basepoint {
            check_point("basepoint", b)?;
        }
        for p in &self.probes {
            check_point("probe", p)?;
        }
        for p in &self.report_points {
            check_point("report point", p)?;
        }

        Ok(Validated { config: self, tasks, metric, flow, order, samples })
    }

    fn chart(&self) -> Result<Chart, WorkbenchError> {
        let c = &self.chart;
        let n = c.coordinates.len();
        let signature = c.signature.clone().unwrap_or_else(|| vec![1; n]);
        let domain = Domain {
            bounds: c.domain.bounds.iter().map(|[lo, hi]| (*lo, *hi)).collect(),
            exclusions: Vec::new(),
            simply_connected: c.domain.simply_connected,
        };
        let mut chart = Chart::new(c.coordinates.clone(), signature, domain).map_err(|e| bad(format!("chart: {e}")))?;
        for ex in &c.domain.exclusions {
            if !(ex.min_abs.is_finite() && ex.min_abs >= 0.0) {
                return Err(bad(format!("exclusion `{}`: min_abs must be non-negative", ex.expr)));
            }
            chart.exclude(&ex.expr, ex.min_abs, &ex.label).map_err(|e| bad(format!("exclusion `{}`: {e}", ex.expr)))?;
        }
        Ok(chart)
    }
}
