use cartan_core::frames::Metric;
use cartan_core::Chart;

use super::oracle::MetricFn;

pub struct Space {
    pub name: &'static str,
    pub coords: &'static [&'static str],
    pub bounds: Vec<(f64, f64)>,
    /// Row-major metric entries in the expression grammar.
    pub metric: Vec<&'static str>,
    pub oracle: MetricFn,
}

impl Space {
    pub fn chart(&self) -> Chart {
        Chart::riemannian(self.coords, &self.bounds).unwrap()
    }

    pub fn metric(&self) -> Metric {
        Metric::parse(self.chart(), &self.metric).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

fn diag(n: usize, d: &[f64]) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = d[i];
    }
    m
}

pub fn flat_cartesian() -> Space {
    Space {
        name: "flat R3 (cartesian)",
        coords: &["x", "y", "z"],
        bounds: vec![(-2.0, 2.0); 3],
        metric: vec!["1", "0", "0", "0", "1", "0", "0", "0", "1"],
        oracle: |_| diag(3, &[1.0, 1.0, 1.0]),
    }
}

pub fn flat_cylindrical() -> Space {
    Space {
        name: "flat R3 (polar)",
        coords: &["r", "phi", "z"],
        bounds: vec![(0.5, 2.0), (0.0, 6.0), (-1.0, 1.0)],
        metric: vec!["1", "0", "0", "0", "r^2", "0", "0", "0", "1"],
        oracle: |p| diag(3, &[1.0, p[0] * p[0], 1.0]),
    }
}

pub fn sphere_1() -> Space {
    Space {
        name: "sphere a=1",
        coords: &["phi", "psi"],
        bounds: vec![(0.3, 2.8), (0.0, 6.0)],
        metric: vec!["1", "0", "0", "sin(phi)^2"],
        oracle: |p| diag(2, &[1.0, p[0].sin().powi(2)]),
    }
}

pub fn sphere_2() -> Space {
    Space {
        name: "sphere a=2",
        coords: &["phi", "psi"],
        bounds: vec![(0.3, 2.8), (0.0, 6.0)],
        metric: vec!["4", "0", "0", "4*sin(phi)^2"],
        oracle: |p| diag(2, &[4.0, 4.0 * p[0].sin().powi(2)]),
    }
}

pub fn hyperbolic() -> Space {
    Space {
        name: "hyperbolic H3",
        coords: &["x", "y", "z"],
        bounds: vec![(-1.0, 1.0), (-1.0, 1.0), (0.5, 2.0)],
        metric: vec!["1/z^2", "0", "0", "0", "1/z^2", "0", "0", "0", "1/z^2"],
        oracle: |p| {
            let s = 1.0 / (p[2] * p[2]);
            diag(3, &[s, s, s])
        },
    }
}

#[rustfmt::skip]
pub fn conformal_flat_4() -> Space {
    Space {
        name: "e^(2f) delta on R4",
        coords: &["x", "y", "z", "w"],
        bounds: vec![(-1.0, 1.0); 4],
        metric: vec![
            "exp(2*(0.3*x + 0.1*y^2))", "0", "0", "0",
            "0", "exp(2*(0.3*x + 0.1*y^2))", "0", "0",
            "0", "0", "exp(2*(0.3*x + 0.1*y^2))", "0",
            "0", "0", "0", "exp(2*(0.3*x + 0.1*y^2))",
        ],
        oracle: |p| {
            let s = (2.0 * (0.3 * p[0] + 0.1 * p[1] * p[1])).exp();
            diag(4, &[s, s, s, s])
        },
    }
}

/// A non-diagonal, non-conformally-flat 3-metric to exercise off-diagonal pivots.
#[rustfmt::skip]
pub fn skew_3() -> Space {
    Space {
        name: "off-diagonal 3-metric",
        coords: &["x", "y", "z"],
        bounds: vec![(-1.0, 1.0); 3],
        metric: vec![
            "2 + sin(y)", "0.3*x", "0",
            "0.3*x", "1 + 0.5*z^2", "0.2",
            "0", "0.2", "1 + x^2",
        ],
        oracle: |p| {
            let (x, y, z) = (p[0], p[1], p[2]);
            vec![2.0 + y.sin(), 0.3 * x, 0.0, 0.3 * x, 1.0 + 0.5 * z * z, 0.2, 0.0, 0.2, 1.0 + x * x]
        },
    }
}

pub fn all_spaces() -> Vec<Space> {
    vec![flat_cartesian(), flat_cylindrical(), sphere_1(), sphere_2(), hyperbolic(), conformal_flat_4(), skew_3()]
}

pub struct Flow {
    pub name: &'static str,
    pub space: Space,
    pub components: Vec<&'static str>,
    pub field: super::oracle::FieldFn,
}

/// Helical Killing field `-y ∂x + x ∂y + ∂z` on flat space.
pub fn screw() -> Flow {
    Flow { name: "screw", space: flat_cartesian(), components: vec!["-y", "x", "1"], field: |p| vec![-p[1], p[0], 1.0] }
}

/// `cos z ∂x + sin z ∂y`: unit, twisting, not rigid.
pub fn twist() -> Flow {
    Flow {
        name: "twist",
        space: Space { bounds: vec![(-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)], ..flat_cartesian() },
        components: vec!["cos(z)", "sin(z)", "0"],
        field: |p| vec![p[2].cos(), p[2].sin(), 0.0],
    }
}

/// Unit rotation field `(-y ∂x + x ∂y)/r` away from the axis.
pub fn rotation() -> Flow {
    Flow {
        name: "unit rotation",
        space: Space { bounds: vec![(0.5, 2.0), (0.5, 2.0), (-1.0, 1.0)], ..flat_cartesian() },
        components: vec!["-y/sqrt(x^2 + y^2)", "x/sqrt(x^2 + y^2)", "0"],
        field: |p| {
            let r = p[0].hypot(p[1]);
            vec![-p[1] / r, p[0] / r, 0.0]
        },
    }
}

/// Hopf field on the unit 3-sphere in Hopf coordinates.
pub fn hopf() -> Flow {
    Flow {
        name: "Hopf",
        space: Space {
            name: "unit S3 (Hopf coordinates)",
            coords: &["eta", "a", "b"],
            bounds: vec![(0.3, 1.2), (0.0, 6.0), (0.0, 6.0)],
            metric: vec!["1", "0", "0", "0", "sin(eta)^2", "0", "0", "0", "cos(eta)^2"],
            oracle: |p| diag(3, &[1.0, p[0].sin().powi(2), p[0].cos().powi(2)]),
        },
        components: vec!["0", "1", "1"],
        field: |_| vec![0.0, 1.0, 1.0],
    }
}

/// Rotation plus dilation about the z-axis of the upper half-space model.
pub fn loxodromic() -> Flow {
    Flow {
        name: "loxodromic",
        space: hyperbolic(),
        components: vec!["-y + 0.5*x", "x + 0.5*y", "0.5*z"],
        field: |p| vec![-p[1] + 0.5 * p[0], p[0] + 0.5 * p[1], 0.5 * p[2]],
    }
}

/// A generic flow on the off-diagonal metric: neither rigid nor geodesic.
pub fn generic() -> Flow {
    Flow {
        name: "generic",
        space: skew_3(),
        components: vec!["1 + 0.2*y", "0.3*sin(z)", "0.5 + 0.1*x^2"],
        field: |p| vec![1.0 + 0.2 * p[1], 0.3 * p[2].sin(), 0.5 + 0.1 * p[0] * p[0]],
    }
}

pub fn all_flows() -> Vec<Flow> {
    vec![screw(), twist(), rotation(), hopf(), loxodromic(), generic()]
}
