//! Runs the requested tasks in dependency order and assembles the report.
//!
//! Order: coframe, connection, curvature, classification, flow invariants,
//! isometry analysis. A task that another one needs is computed even when not
//! requested, but only requested tasks get a report section and checks.

use cartan_core::frames::{classify_space, max_abs, Classification, ConformalStatus, FrameData, FrameError, MaxAbs};
use cartan_core::herglotz::{analyze, ricci_flat_check, Options, Verdict};
use cartan_core::submersion::{adapted_frame, constraint_residuals, invariants, Constraints, Invariants, Submersion};
use cartan_core::{Expr, SampleSpec, Tape};

use crate::config::{Task, Validated};
use crate::report::*;
use crate::{conventions_sha256, WorkbenchError};

fn input<E: std::fmt::Display>(e: E) -> WorkbenchError {
    WorkbenchError::Input(e.to_string())
}

fn maxabs(exprs: &[Expr], points: &[Vec<f64>]) -> Result<f64, WorkbenchError> {
    max_abs(exprs, points).map(|MaxAbs { value, .. }| value).map_err(input)
}

/// Values of `exprs` at `p`.
fn eval_at(exprs: &[Expr], p: &[f64]) -> Result<Vec<f64>, WorkbenchError> {
    Tape::compile(exprs).eval(p).map_err(|source| input(FrameError::Eval { point: p.to_vec(), source }))
}

fn point(p: &[f64]) -> Vec<Num> {
    nums(p)
}

struct Checks {
    list: Vec<Check>,
}

impl Checks {
    fn bound(&mut self, name: &str, value: f64, tol: f64, advisory: bool) {
        self.list.push(Check {
            name: name.into(),
            value: Some(Num(value)),
            tolerance: Some(Num(tol)),
            passed: value <= tol,
            advisory,
        });
    }

    fn flag(&mut self, name: &str, passed: bool, advisory: bool) {
        self.list.push(Check { name: name.into(), value: None, tolerance: None, passed, advisory });
    }
}

/// Independent `(a,b,c,d)` of a tensor with the Riemann symmetries.
fn riemann_indices(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for d in c + 1..n {
                    if (a, b) <= (c, d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn components(idx: &[[usize; 4]], values: &[f64], offset: usize) -> Vec<Component> {
    idx.iter()
        .zip(values)
        .map(|(i, v)| Component { index: i.iter().map(|k| k + offset).collect(), value: Num(*v) })
        .collect()
}

fn frame_section(
    v: &Validated,
    data: &FrameData,
    sub: Option<&Submersion>,
    points: &[Vec<f64>],
) -> Result<FrameSection, WorkbenchError> {
    let d = data.diagnostics(points).map_err(input)?;
    let (kind, order) = match sub {
        Some(s) => ("adapted", (0..data.dim()).filter(|&k| k != s.dropped_coordinate()).collect()),
        None => ("gram-schmidt", v.order.clone()),
    };
    Ok(FrameSection {
        kind: kind.into(),
        order,
        conformal_scale: v.config.conformal_scale.clone(),
        reconstruction: Num(d.reconstruction),
        duality: Num(d.duality),
        torsion: Num(d.torsion),
        connection_antisymmetry: Num(d.connection_antisymmetry),
        curvature_antisymmetry: Num(d.curvature_antisymmetry),
        riemann_symmetries: Num(d.riemann_first_pair.max(d.riemann_second_pair).max(d.riemann_pair_exchange)),
        first_bianchi: Num(d.first_bianchi),
        weyl_trace: d.weyl_trace.map(Num),
    })
}

fn curvature_section(
    data: &FrameData,
    points: &[Vec<f64>],
    shown: &[Vec<f64>],
) -> Result<CurvatureSection, WorkbenchError> {
    let n = data.dim();
    let ridx = riemann_indices(n);
    let rexprs: Vec<Expr> = ridx.iter().map(|&[a, b, c, d]| data.riemann(a, b, c, d).clone()).collect();
    let mut cidx = Vec::new();
    for a in 0..n {
        for b in a..n {
            cidx.push([a, b]);
        }
    }
    let cexprs: Vec<Expr> = cidx.iter().map(|&[a, b]| data.ricci(a, b).clone()).collect();
    let mut pts = Vec::new();
    for p in shown {
        let r = eval_at(&rexprs, p)?;
        let c = eval_at(&cexprs, p)?;
        let s = eval_at(std::slice::from_ref(data.scalar()), p)?[0];
        pts.push(PointCurvature {
            point: point(p),
            riemann: components(&ridx, &r, 0),
            ricci: cidx.iter().zip(&c).map(|(i, v)| Component { index: i.to_vec(), value: Num(*v) }).collect(),
            scalar: Num(s),
        });
    }
    Ok(CurvatureSection {
        max_riemann: Num(maxabs(data.riemann_all(), points)?),
        max_ricci: Num(maxabs(data.ricci_all(), points)?),
        max_scalar: Num(maxabs(std::slice::from_ref(data.scalar()), points)?),
        max_weyl: data.weyl().map(|w| maxabs(w, points)).transpose()?.map(Num),
        points: pts,
    })
}

fn classification_section(c: &Classification) -> ClassificationSection {
    ClassificationSection {
        label: c.label().into(),
        flat: c.flat,
        constant_curvature: c.constant_curvature,
        ricci_flat: c.ricci_flat,
        conformally_flat: match c.conformal {
            ConformalStatus::Flat => "flat",
            ConformalStatus::NotFlat => "not-flat",
            ConformalStatus::Indeterminate => "indeterminate",
        }
        .into(),
        kappa: Num(c.kappa),
        constant_curvature_residual: Num(c.constant_curvature_residual),
        max_riemann: Num(c.max_riemann),
        max_ricci: Num(c.max_ricci),
        max_weyl: c.max_weyl.map(Num),
    }
}

/// Flow invariants and constraint residuals, computed once and shared.
struct FlowData {
    inv: Invariants,
    constraints: Constraints,
    rigidity: f64,
    rigid: bool,
}

fn flow_section(
    sub: &Submersion,
    f: &FlowData,
    points: &[Vec<f64>],
    shown: &[Vec<f64>],
    tol: &crate::config::Tolerances,
) -> Result<FlowSection, WorkbenchError> {
    let h = sub.horizontal();
    let mut midx = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            midx.push([i, j]);
        }
    }
    let mexprs: Vec<Expr> = midx.iter().map(|&[i, j]| f.inv.m(i, j).clone()).collect();
    let kexprs: Vec<Expr> = (0..h).map(|i| f.inv.k(i).clone()).collect();
    let tidx = riemann_indices(h);
    let texprs: Vec<Expr> = tidx.iter().map(|&[i, j, k, l]| f.constraints.tilde_riemann(i, j, k, l).clone()).collect();
    let mut pts = Vec::new();
    for p in shown {
        let m = eval_at(&mexprs, p)?;
        let t = eval_at(&texprs, p)?;
        pts.push(PointFlow {
            point: point(p),
            norm: Num(eval_at(std::slice::from_ref(sub.norm_sq()), p)?[0].sqrt()),
            m: midx
                .iter()
                .zip(&m)
                .map(|(i, v)| Component { index: vec![i[0] + 1, i[1] + 1], value: Num(*v) })
                .collect(),
            k: nums(&eval_at(&kexprs, p)?),
            tilde_riemann: components(&tidx, &t, 1),
            tilde_scalar: Num(eval_at(std::slice::from_ref(f.constraints.tilde_scalar()), p)?[0]),
        });
    }
    let c = &f.constraints;
    let max_vorticity = maxabs(f.inv.m.components(), points)?;
    Ok(FlowSection {
        rigid: f.rigid,
        advisory: (!f.rigid).then(|| ADVISORY.to_string()),
        rigidity_residual: Num(f.rigidity),
        rotational: max_vorticity > tol.rotational_threshold,
        max_vorticity: Num(max_vorticity),
        skewness: Num(f.inv.skewness(points).map_err(input)?),
        path_agreement: Num(f.inv.path_agreement(points).map_err(input)?),
        dropped_coordinate: sub.dropped_coordinate(),
        normalization: sub.normalization().map(Num),
        constraints: ConstraintSection {
            vertical: Num(c.vertical),
            vertical_codazzi: Num(c.vertical_codazzi),
            mixed_codazzi: Num(c.mixed_codazzi),
            ricci_00: Num(c.ricci_00),
            ricci_0i: Num(c.ricci_0i),
            ricci_ij: Num(c.ricci_ij),
            scalar: Num(c.scalar),
            leaf_vorticity: Num(c.leaf_vorticity),
            leaf_tilde_riemann: Num(c.leaf_tilde_riemann),
            leaf_tilde_ricci: Num(c.leaf_tilde_ricci),
            leaf_tilde_scalar: Num(c.leaf_tilde_scalar),
        },
        points: pts,
    })
}

/// Runs a validated config. Input problems met while computing (a singular
/// metric, a vanishing flow, an expression undefined at a sample) are errors;
/// failed checks are recorded in the report.
pub fn run(v: &Validated) -> Result<Report, WorkbenchError> {
    let cfg = &v.config;
    let tol = &cfg.tolerances;
    let wants = |t: Task| v.tasks.contains(&t);
    let chart = v.metric.chart();
    let points = chart.samples(v.samples).map_err(input)?;
    let shown: Vec<Vec<f64>> =
        if cfg.report_points.is_empty() { points.iter().take(3).cloned().collect() } else { cfg.report_points.clone() };
    let mut checks = Checks { list: Vec::new() };

    // coframe, connection and curvature
    let needs_flow = v.tasks.iter().any(|t| t.needs_flow());
    let sub = match (&v.flow, needs_flow) {
        (Some(flow), true) => Some(adapted_frame(&v.metric, flow, &points).map_err(input)?),
        _ => None,
    };
    let owned;
    let data = match &sub {
        Some(s) => &s.data,
        None => {
            owned = FrameData::from_metric(&v.metric, &v.order, &points).map_err(input)?;
            &owned
        }
    };
    let frame = frame_section(v, data, sub.as_ref(), &points)?;
    let structure = frame.reconstruction.0.max(frame.duality.0).max(frame.torsion.0);
    checks.bound("frame-structure", structure, tol.frame, false);

    let curvature = if wants(Task::Curvature) {
        let symmetries = [
            frame.connection_antisymmetry.0,
            frame.curvature_antisymmetry.0,
            frame.riemann_symmetries.0,
            frame.first_bianchi.0,
            frame.weyl_trace.map_or(0.0, |w| w.0),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        checks.bound("curvature-symmetries", symmetries, tol.residual, false);
        Some(curvature_section(data, &points, &shown)?)
    } else {
        None
    };

    let class = if wants(Task::Classify) || wants(Task::Herglotz) || wants(Task::RicciFlat) {
        Some(classify_space(data, &points, tol.residual).map_err(input)?)
    } else {
        None
    };
    let classification = class.as_ref().filter(|_| wants(Task::Classify)).map(classification_section);

    // flow invariants
    let flow_data = match &sub {
        Some(s) => {
            let inv = invariants(s);
            let constraints = constraint_residuals(s, &inv, &points).map_err(input)?;
            let rigidity = maxabs(&s.rigidity_defects(), &points)?;
            Some(FlowData { inv, constraints, rigidity, rigid: rigidity <= tol.residual })
        }
        None => None,
    };
    let mut flow = None;
    if let (Some(s), Some(f)) = (&sub, &flow_data) {
        if wants(Task::Flow) {
            let section = flow_section(s, f, &points, &shown, tol)?;
            let advisory = !f.rigid;
            checks.bound("rigidity", f.rigidity, tol.residual, false);
            checks.bound("two-route-invariants", section.path_agreement.0, tol.residual, advisory);
            checks.bound("constraint-frame-equations", f.constraints.frame_equations(), tol.residual, advisory);
            checks.bound("constraint-ricci-rows", f.constraints.ricci_rows(), tol.residual, advisory);
            let basic = f
                .constraints
                .leaf_tilde_riemann
                .max(f.constraints.leaf_tilde_ricci)
                .max(f.constraints.leaf_tilde_scalar);
            checks.bound("quotient-curvature-basic", basic, tol.residual, advisory);
            flow = Some(section);
        }
    }

    // isometry analysis
    let mut herglotz = None;
    if let (true, Some(s), Some(f), Some(c)) = (wants(Task::Herglotz), &sub, &flow_data, &class) {
        let opts = Options {
            residual: tol.residual,
            rotational_threshold: tol.rotational_threshold,
            quadrature: tol.quadrature,
            path_agreement: tol.path_agreement,
            basepoint: cfg.basepoint.clone(),
            probes: cfg.probes.clone(),
        };
        let advisory = (!f.rigid).then(|| ADVISORY.to_string());
        let section = match analyze(s, &f.inv, c, &points, &opts) {
            Ok(r) => {
                let h = &r.hypotheses;
                checks.flag("herglotz-consistent", !matches!(r.verdict, Verdict::Inconsistent(_)), false);
                HerglotzSection {
                    verdict: r.verdict.label().into(),
                    theorem_applicable: !matches!(r.verdict, Verdict::HypothesesNotMet(_)),
                    reason: r.verdict.reason().map(String::from),
                    advisory,
                    hypotheses: Some(HypothesesSection {
                        rigidity: Num(h.rigidity),
                        max_vorticity: Num(h.max_vorticity),
                        closedness: Num(h.closedness),
                        leaf_m: Num(h.leaf_m),
                        leaf_k: Num(h.leaf_k),
                        ambient_applicable: h.ambient_applicable,
                    }),
                    lambda: r.lambda.map(|l| LambdaSection {
                        basepoint: point(&l.basepoint),
                        path_agreement: Num(l.path_agreement),
                        flow_derivative: Num(l.flow_derivative),
                        killing_residual: Num(l.killing_residual),
                        probes: l.probes.iter().map(|(p, x)| Probe { point: point(p), lambda: Num(*x) }).collect(),
                    }),
                }
            }
            Err(e) => {
                checks.flag("herglotz-consistent", false, false);
                HerglotzSection {
                    verdict: "error".into(),
                    theorem_applicable: true,
                    reason: Some(e.to_string()),
                    advisory,
                    hypotheses: None,
                    lambda: None,
                }
            }
        };
        herglotz = Some(section);
    }

    let mut ricci_flat = None;
    if let (true, Some(f), Some(c)) = (wants(Task::RicciFlat), &flow_data, &class) {
        let r = ricci_flat_check(c, &f.constraints);
        if r.applicable {
            checks.bound("ricci-flat-rows", r.worst(), tol.residual, !f.rigid);
        }
        ricci_flat = Some(RicciFlatSection {
            status: if r.applicable { "applicable" } else { "inapplicable" }.into(),
            ricci_00: Num(r.ricci_00),
            ricci_0i: Num(r.ricci_0i),
            ricci_ij: Num(r.ricci_ij),
            scalar: Num(r.scalar),
            leaf_vorticity: Num(r.leaf_vorticity),
        });
    }

    let passed = checks.list.iter().all(|c| c.passed || c.advisory);
    let (mode, seed) = match v.samples {
        SampleSpec::Random { seed, .. } => ("random", Some(seed)),
        SampleSpec::Grid { .. } => ("grid", None),
    };
    Ok(Report {
        schema: REPORT_SCHEMA.into(),
        tool: Tool { name: env!("CARGO_PKG_NAME").into(), version: env!("CARGO_PKG_VERSION").into() },
        conventions_sha256: conventions_sha256(),
        tasks: v.tasks.iter().map(|t| t.name().to_string()).collect(),
        samples: Samples {
            mode: mode.into(),
            count: cfg.samples.count,
            seed,
            prng: if seed.is_some() { "chacha8-seed_from_u64" } else { "none" }.into(),
            points: points.len(),
        },
        frame,
        curvature,
        classification,
        flow,
        herglotz,
        ricci_flat,
        checks: checks.list,
        passed,
    })
}
