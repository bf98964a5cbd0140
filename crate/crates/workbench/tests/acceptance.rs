//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every number is cross-checked against an independent route: the
//! coordinate-Christoffel finite-difference oracle shared with the core tests,
//! closed-form values, or the CLI itself.

#[path = "../../core/tests/common/fixtures.rs"]
#[allow(dead_code)]
mod fixtures;
#[path = "../../core/tests/common/oracle.rs"]
#[allow(dead_code)]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use cartan_core::expr::Node;
use cartan_core::frames::{classify_space, eval_all, FrameData};
use cartan_core::herglotz::{analyze, LambdaProblem, Options, Verdict};
use cartan_core::submersion::{constraint_residuals, invariants, Submersion};
use cartan_core::{ext_d, wedge, Expr, Func, Number, PForm, SampleSpec};
use fixtures::{Flow, Space};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of one criterion; `Err` carries the first failed comparison.
type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn samples(space: &Space, count: usize, seed: u64) -> Vec<Vec<f64>> {
    space.chart().samples(SampleSpec::Random { count, seed }).unwrap()
}

fn frame_at(data: &FrameData, p: &[f64]) -> Vec<Vec<f64>> {
    let n = data.dim();
    let flat: Vec<Expr> = data.frame.vectors().iter().flatten().cloned().collect();
    eval_all(&flat, &[p.to_vec()]).unwrap().remove(0).chunks(n).map(|c| c.to_vec()).collect()
}

fn value_at(e: &Expr, p: &[f64]) -> f64 {
    eval_all(std::slice::from_ref(e), &[p.to_vec()]).unwrap()[0][0]
}

fn submersion(flow: &Flow, pts: &[Vec<f64>], simply_connected: bool) -> Submersion {
    let mut chart = flow.space.chart();
    chart.domain_mut().simply_connected = simply_connected;
    let metric = cartan_core::frames::Metric::parse(chart, &flow.space.metric).unwrap();
    Submersion::parse(&metric, &flow.components, pts).unwrap()
}

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Runs the CLI on an example config; returns the exit code and the JSON report.
fn cli(config: &str, out: &Path) -> (i32, serde_json::Value, Vec<u8>) {
    let status = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .arg("run")
        .arg("--config")
        .arg(repo().join("examples/configs").join(config))
        .arg("--out")
        .arg(out)
        .status()
        .expect("workbench runs");
    let bytes = std::fs::read(out).unwrap();
    (status.code().unwrap_or(-1), serde_json::from_slice(&bytes).unwrap(), bytes)
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn structure_exactness() -> Outcome {
    let mut worst = 0.0f64;
    for space in [
        fixtures::flat_cartesian(),
        fixtures::flat_cylindrical(),
        fixtures::sphere_1(),
        fixtures::sphere_2(),
        fixtures::hyperbolic(),
    ] {
        let pts = samples(&space, 200, 7);
        let data = FrameData::from_metric(&space.metric(), &identity(space.dim()), &pts).unwrap();
        let d = data.diagnostics(&pts).unwrap();
        ensure(d.torsion < 1e-9 && d.reconstruction < 1e-9, || format!("{}: {d:?}", space.name))?;
        worst = worst.max(d.torsion).max(d.reconstruction);
    }
    Ok(format!("5 spaces x 200 points, worst residual {worst:.2e}"))
}

/// Largest difference between engine and oracle frame curvature over `pts`.
fn oracle_gap(space: &Space, data: &FrameData, pts: &[Vec<f64>]) -> f64 {
    let vals = eval_all(data.riemann_all(), pts).unwrap();
    let mut gap = 0.0f64;
    for (p, ours) in pts.iter().zip(&vals) {
        let theirs = oracle::riemann_frame(space.oracle, p, &frame_at(data, p));
        for (x, y) in ours.iter().zip(&theirs) {
            gap = gap.max((x - y).abs());
        }
    }
    gap
}

fn curvature_oracles() -> Outcome {
    let sphere = fixtures::sphere_2();
    let pts = samples(&sphere, 50, 5);
    let data = FrameData::from_metric(&sphere.metric(), &[0, 1], &pts).unwrap();
    for v in eval_all(std::slice::from_ref(data.riemann(0, 1, 0, 1)), &pts).unwrap() {
        ensure((v[0] - 0.25).abs() < 1e-6, || format!("sphere R_1212 = {}", v[0]))?;
    }
    let sphere_gap = oracle_gap(&sphere, &data, &pts[..5]);
    ensure(sphere_gap < 1e-5, || format!("sphere oracle gap {sphere_gap:e}"))?;

    let hyp = fixtures::hyperbolic();
    let pts = samples(&hyp, 50, 5);
    let data = FrameData::from_metric(&hyp.metric(), &[0, 1, 2], &pts).unwrap();
    let kappa = classify_space(&data, &pts, 1e-9).unwrap().kappa;
    ensure((kappa + 1.0).abs() < 1e-6, || format!("hyperbolic kappa = {kappa}"))?;
    for p in &pts[..5] {
        let k = oracle::scalar_curvature(hyp.oracle, p) / 6.0;
        ensure((k + 1.0).abs() < 1e-5, || format!("oracle kappa {k} at {p:?}"))?;
    }
    let hyp_gap = oracle_gap(&hyp, &data, &pts[..5]);
    ensure(hyp_gap < 1e-5, || format!("hyperbolic oracle gap {hyp_gap:e}"))?;

    let mut flat_max = 0.0f64;
    let mut flat_gap = 0.0f64;
    for space in [fixtures::flat_cartesian(), fixtures::flat_cylindrical()] {
        let pts = samples(&space, 50, 5);
        let data = FrameData::from_metric(&space.metric(), &[0, 1, 2], &pts).unwrap();
        flat_max = flat_max.max(classify_space(&data, &pts, 1e-9).unwrap().max_riemann);
        flat_gap = flat_gap.max(oracle_gap(&space, &data, &pts[..5]));
    }
    ensure(flat_max < 1e-10, || format!("flat max|R| = {flat_max:e}"))?;
    ensure(flat_gap < 1e-5, || format!("flat oracle gap {flat_gap:e}"))?;
    Ok(format!(
        "R_1212 = 0.25, kappa = {kappa:.9}, flat max|R| {flat_max:.1e}; oracle gaps {sphere_gap:.1e}/{hyp_gap:.1e}/{flat_gap:.1e}"
    ))
}

/// Random expression trees that stay finite on `[-1, 1]^n`.
struct Trees {
    rng: ChaCha8Rng,
    vars: usize,
}

impl Trees {
    fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    fn raw(node: Node) -> Expr {
        Expr::from_node(node)
    }

    fn positive(b: Expr) -> Expr {
        Trees::raw(Node::Add(vec![Expr::int(2), Trees::raw(Node::Pow(b, Expr::int(2)))]))
    }

    fn leaf(&mut self) -> Expr {
        match self.below(3) {
            0 => Expr::var(self.below(self.vars as u64) as usize),
            1 => Expr::int(self.below(11) as i64 - 5),
            _ => Expr::num(Number::ratio(self.below(15) as i64 - 7, 1 + self.below(6) as i64)),
        }
    }

    fn tree(&mut self, depth: u32) -> Expr {
        if depth == 0 || self.below(4) == 0 {
            return self.leaf();
        }
        let d = depth - 1;
        match self.below(8) {
            0 => Trees::raw(Node::Add(vec![self.tree(d), self.tree(d)])),
            1 => Trees::raw(Node::Mul(vec![self.tree(d), self.tree(d)])),
            2 => Trees::raw(Node::Div(self.tree(d), Trees::positive(self.tree(d)))),
            3 => Trees::raw(Node::Pow(self.tree(d), Expr::int(self.below(4) as i64))),
            4 => Trees::raw(Node::Apply(Func::Sin, self.tree(d))),
            5 => Trees::raw(Node::Apply(Func::Exp, Trees::raw(Node::Apply(Func::Cos, self.tree(d))))),
            6 => Trees::raw(Node::Apply(Func::Log, Trees::positive(self.tree(d)))),
            _ => Trees::raw(Node::Apply(Func::Sqrt, Trees::positive(self.tree(d)))),
        }
    }

    fn form(&mut self, max_degree: usize) -> PForm {
        let n = self.vars;
        let degree = self.below(max_degree as u64 + 1) as usize;
        let blades: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == degree)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect();
        let mut terms = Vec::new();
        for b in &blades {
            if self.below(5) < 3 {
                terms.push((b.as_slice(), self.tree(3).simplify()));
            }
        }
        PForm::from_terms(n, degree, &terms)
    }

    fn point(&mut self) -> Vec<f64> {
        (0..self.vars).map(|_| 2.0 * (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 1.0).collect()
    }
}

/// Largest coefficient of `r` at `p` relative to the scale of `refs`.
fn relative(r: &PForm, refs: &[&PForm], p: &[f64]) -> f64 {
    let scale = refs.iter().map(|f| f.max_abs_at(p).unwrap()).fold(1.0, f64::max);
    r.max_abs_at(p).unwrap() / scale
}

fn exterior_laws() -> Outcome {
    let mut g = Trees { rng: ChaCha8Rng::seed_from_u64(2024), vars: 4 };
    let (mut dd, mut comm, mut leib) = (0.0f64, 0.0f64, 0.0f64);
    // forms whose second derivative is not zero for degree reasons alone
    let mut nontrivial = 0;
    for _ in 0..1000 {
        let a = g.form(3);
        let p = g.point();
        let da = ext_d(&a);
        if !da.is_zero() && da.degree() < 4 {
            nontrivial += 1;
        }
        dd = dd.max(relative(&ext_d(&da), &[&da], &p));
    }
    for _ in 0..500 {
        let (a, b, p) = (g.form(2), g.form(2), g.point());
        let ab = wedge(&a, &b).unwrap();
        let sign = if (a.degree() * b.degree()).is_multiple_of(2) { 1 } else { -1 };
        let r = ab.sub(&wedge(&b, &a).unwrap().scale(&Expr::int(sign))).unwrap();
        comm = comm.max(relative(&r, &[&ab], &p));
    }
    for _ in 0..500 {
        let (a, b, p) = (g.form(2), g.form(2), g.point());
        let lhs = ext_d(&wedge(&a, &b).unwrap());
        let sign = if a.degree().is_multiple_of(2) { 1 } else { -1 };
        let rhs = wedge(&ext_d(&a), &b).unwrap().add(&wedge(&a, &ext_d(&b)).unwrap().scale(&Expr::int(sign))).unwrap();
        leib = leib.max(relative(&lhs.sub(&rhs).unwrap(), &[&lhs, &rhs], &p));
    }
    ensure(dd < 1e-10 && comm < 1e-10 && leib < 1e-10, || {
        format!("dd {dd:e}, commutativity {comm:e}, Leibniz {leib:e}")
    })?;
    ensure(nontrivial > 300, || format!("only {nontrivial} forms exercise d∘d"))?;
    Ok(format!("1000 forms per law ({nontrivial} with nonzero dA of degree < 4); dd {dd:.1e}, commutativity {comm:.1e}, Leibniz {leib:.1e}"))
}

/// Weyl tensor from the oracle frame curvature (Riemannian signature).
fn oracle_weyl(r: &[f64], n: usize) -> Vec<f64> {
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    let ric = |b: usize, d: usize| (0..n).map(|a| r[idx(a, b, a, d)]).sum::<f64>();
    let scalar: f64 = (0..n).map(|b| ric(b, b)).sum();
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let p = |a: usize, b: usize| (ric(a, b) - scalar * delta(a, b) / (2.0 * (n as f64 - 1.0))) / (n as f64 - 2.0);
    let mut w = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let kn =
                        p(a, c) * delta(b, d) + p(b, d) * delta(a, c) - p(a, d) * delta(b, c) - p(b, c) * delta(a, d);
                    w[idx(a, b, c, d)] = r[idx(a, b, c, d)] - kn;
                }
            }
        }
    }
    w
}

fn weyl_properties() -> Outcome {
    let mut trace = 0.0f64;
    for space in fixtures::all_spaces().into_iter().filter(|s| s.dim() >= 3) {
        let pts = samples(&space, 30, 9);
        let data = FrameData::from_metric(&space.metric(), &identity(space.dim()), &pts).unwrap();
        let t = data.diagnostics(&pts).unwrap().weyl_trace.unwrap();
        ensure(t < 1e-8, || format!("{}: Weyl trace {t:e}", space.name))?;
        trace = trace.max(t);
    }
    let space = fixtures::conformal_flat_4();
    let pts = samples(&space, 40, 9);
    let data = FrameData::from_metric(&space.metric(), &identity(4), &pts).unwrap();
    let max_w = classify_space(&data, &pts, 1e-7).unwrap().max_weyl.unwrap();
    ensure(max_w < 1e-7, || format!("conformally flat max|W| = {max_w:e}"))?;
    let mut oracle_w = 0.0f64;
    for p in &pts[..3] {
        let r = oracle::riemann_frame(space.oracle, p, &frame_at(&data, p));
        oracle_w = oracle_w.max(oracle_weyl(&r, 4).iter().fold(0.0, |m, x| m.max(x.abs())));
    }
    ensure(oracle_w < 1e-5, || format!("oracle max|W| = {oracle_w:e}"))?;
    Ok(format!("max trace {trace:.1e}; max|W| {max_w:.1e} (oracle {oracle_w:.1e})"))
}

fn screw_points(extra: &[[f64; 3]]) -> Vec<Vec<f64>> {
    let mut pts = samples(&fixtures::screw().space, 40, 7);
    pts.extend(extra.iter().map(|p| p.to_vec()));
    pts
}

fn flow_invariants() -> Outcome {
    let flow = fixtures::screw();
    let pts = screw_points(&[[1.0, 0.0, 0.0]]);
    let sub = submersion(&flow, &pts, true);
    let inv = invariants(&sub);
    let at = [1.0, 0.0, 0.0];
    let m12 = value_at(inv.m(0, 1), &at).abs();
    // the independent route: dψ of the unit flow by finite differences
    let dpsi = oracle::d_psi(flow.space.oracle, &flow.field, &at);
    let frame = frame_at(&sub.data, &at);
    let m_oracle = 0.5 * oracle::two_form(&dpsi, &frame[1], &frame[2]).abs();
    let problem = LambdaProblem::from_submersion(&sub, &inv, at.to_vec(), &pts, 1e-8, 1e-12).unwrap();
    let radial = value_at(&problem.khat()[0], &at);
    let norm = |p: &[f64]| (p[0] * p[0] + p[1] * p[1] + 1.0).sqrt().ln();
    let radial_oracle = oracle::d1(&norm, &at, 0);
    let agreement = inv.path_agreement(&pts).unwrap();
    let rigidity = cartan_core::frames::max_abs(&sub.rigidity_defects(), &pts).unwrap().value;
    ensure((m12 - 0.5).abs() < 1e-6 && (m_oracle - 0.5).abs() < 1e-6, || format!("|M_12| = {m12}, oracle {m_oracle}"))?;
    ensure((radial - 0.5).abs() < 1e-6 && (radial_oracle - 0.5).abs() < 1e-6, || {
        format!("radial K = {radial}, oracle {radial_oracle}")
    })?;
    ensure(agreement < 1e-9, || format!("two-route agreement {agreement:e}"))?;
    ensure(rigidity < 1e-9, || format!("rigidity {rigidity:e}"))?;
    Ok(format!("|M_12| = {m12:.9}, radial K = {radial:.9}, two-route {agreement:.1e}, rigidity {rigidity:.1e}"))
}

fn herglotz_end_to_end(tmp: &Path) -> Outcome {
    let flow = fixtures::screw();
    let pts = screw_points(&[]);
    let sub = submersion(&flow, &pts, true);
    let inv = invariants(&sub);
    let data = &sub.data;
    let class = classify_space(data, &pts, 1e-7).unwrap();
    let opts = Options {
        basepoint: Some(vec![1.0, 0.0, 0.0]),
        probes: vec![vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0]],
        ..Options::default()
    };
    let report = analyze(&sub, &inv, &class, &pts, &opts).unwrap();
    let h = &report.hypotheses;
    let l = report.lambda.as_ref().ok_or("no lambda reconstructed")?;
    let ratio = l.probes[1].1 / l.probes[0].1;
    // |V| = sqrt(1 + r²) for V = (-y, x, 1)
    let oracle_ratio = (5.0f64 / 2.0).sqrt();
    ensure(h.closedness < 1e-8, || format!("K_[i;j] = {:e}", h.closedness))?;
    ensure(h.leaf_m < 1e-7 && h.leaf_k < 1e-7 && l.flow_derivative < 1e-7, || format!("{h:?} {l:?}"))?;
    ensure((ratio - 1.5811).abs() < 1e-4 && (ratio - oracle_ratio).abs() < 1e-9, || format!("ratio {ratio}"))?;
    ensure(l.killing_residual < 1e-7, || format!("Killing residual {:e}", l.killing_residual))?;
    ensure(report.verdict == Verdict::IsometricVerified, || format!("{:?}", report.verdict))?;
    let (code, json, _) = cli("screw.json", &tmp.join("screw.json"));
    let verdict = json["herglotz"]["verdict"].as_str().unwrap_or("");
    ensure(code == 0 && verdict == "isometric-verified", || format!("CLI exit {code}, verdict {verdict}"))?;
    let cli_ratio = num(&json["herglotz"]["lambda"]["probes"][1]["lambda"]);
    ensure((cli_ratio - 1.5811).abs() < 1e-4, || format!("CLI ratio {cli_ratio}"))?;
    Ok(format!(
        "K_[i;j] {:.1e}, u(M) {:.1e}, u(K) {:.1e}, u(lambda) {:.1e}, ratio {ratio:.6}, Killing {:.1e}, CLI exit 0",
        h.closedness, h.leaf_m, h.leaf_k, l.flow_derivative, l.killing_residual
    ))
}

fn constraint_system() -> Outcome {
    let flow = fixtures::screw();
    let pts = screw_points(&[[1.0, 0.0, 0.0]]);
    let sub = submersion(&flow, &pts, true);
    let inv = invariants(&sub);
    let c = constraint_residuals(&sub, &inv, &pts).unwrap();
    let frame = c.frame_equations();
    let rows = c.ricci_rows();
    ensure(frame < 1e-7 && rows < 1e-7, || format!("frame equations {frame:e}, Ricci rows {rows:e}"))?;
    ensure(c.leaf_vorticity < 1e-7, || format!("|u(sum M^2)| = {:e}", c.leaf_vorticity))?;
    let tilde = value_at(c.tilde_riemann(0, 1, 0, 1), &[1.0, 0.0, 0.0]);
    // orbit space of the screw motion: dr² + r²/(1+r²) dφ²
    let quotient: oracle::MetricFn = |p| vec![1.0, 0.0, 0.0, p[0] * p[0] / (1.0 + p[0] * p[0])];
    let gauss = oracle::gauss_curvature(quotient, &[1.0, 0.0]);
    ensure((tilde.abs() - 0.75).abs() < 1e-5, || format!("|R~_1212| = {}", tilde.abs()))?;
    ensure(tilde.signum() == gauss.signum() && (tilde - gauss).abs() < 1e-5, || {
        format!("R~_1212 {tilde} vs oracle {gauss}")
    })?;
    Ok(format!(
        "frame equations {frame:.1e}, Ricci rows {rows:.1e}, |u(sum M^2)| {:.1e}, R~_1212 = {tilde:.9} (oracle {gauss:.6})",
        c.leaf_vorticity
    ))
}

fn negative_controls(tmp: &Path) -> Outcome {
    let (code, json, _) = cli("twist.json", &tmp.join("twist.json"));
    let residual = num(&json["flow"]["rigidity_residual"]);
    ensure(code == 1 && json["flow"]["rigid"] == false, || {
        format!("twist exit {code}, rigid {}", json["flow"]["rigid"])
    })?;
    ensure((residual - 1.0).abs() < 1e-8, || format!("twist residual {residual}"))?;

    // Lie-derivative oracle: |(L_u g)(e_i, e_j)| over the horizontal frame
    let flow = fixtures::twist();
    let pts = samples(&flow.space, 20, 7);
    let sub = submersion(&flow, &pts, true);
    let mut lie = 0.0f64;
    for p in &pts {
        let l = oracle::lie_derivative_metric(flow.space.oracle, &flow.field, p);
        let e = frame_at(&sub.data, p);
        for i in 1..3 {
            for j in 1..3 {
                lie = lie.max(oracle::two_form(&l, &e[i], &e[j]).abs());
            }
        }
    }
    ensure((lie - 1.0).abs() < 1e-6, || format!("oracle twist residual {lie}"))?;

    let (code, json, _) = cli("rotation.json", &tmp.join("rotation.json"));
    let vort = num(&json["flow"]["max_vorticity"]);
    let applicable = &json["herglotz"]["theorem_applicable"];
    let verdict = json["herglotz"]["verdict"].as_str().unwrap_or("");
    ensure(vort < 1e-9, || format!("rotation max|M| = {vort:e}"))?;
    ensure(*applicable == false && verdict == "hypotheses-not-met", || {
        format!("rotation verdict {verdict}, applicable {applicable}")
    })?;
    ensure(code == 0, || format!("rotation exit {code}"))?;
    Ok(format!(
        "twist residual {residual:.12} (oracle {lie:.9}), exit 1; rotation max|M| {vort:.1e}, theorem inapplicable"
    ))
}

fn determinism(tmp: &Path) -> Outcome {
    let mut checked = Vec::new();
    for config in ["screw.json", "twist.json", "conformal.json"] {
        let (_, _, a) = cli(config, &tmp.join("first.json"));
        let (_, _, b) = cli(config, &tmp.join("second.json"));
        ensure(a == b, || format!("{config}: reports differ"))?;
        checked.push(config);
    }
    Ok(format!("byte-identical reports for {}", checked.join(", ")))
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_path_buf();
    let criteria: Vec<Criterion> = vec![
        ("structure-equation exactness", Box::new(structure_exactness)),
        ("curvature oracles", Box::new(curvature_oracles)),
        ("exterior-algebra laws", Box::new(exterior_laws)),
        ("Weyl properties", Box::new(weyl_properties)),
        ("screw-flow invariants", Box::new(flow_invariants)),
        (
            "isometry end to end",
            Box::new({
                let d = dir.clone();
                move || herglotz_end_to_end(&d)
            }),
        ),
        ("constraint system", Box::new(constraint_system)),
        (
            "negative controls",
            Box::new({
                let d = dir.clone();
                move || negative_controls(&d)
            }),
        ),
        (
            "determinism",
            Box::new({
                let d = dir.clone();
                move || determinism(&d)
            }),
        ),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.2}s] {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.2}s] {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
