pub type MetricFn = fn(&[f64]) -> Vec<f64>;
pub type FieldFn = fn(&[f64]) -> Vec<f64>;

/// Step for the fourth-order stencils. Truncation ~h⁴, round-off ~ε/h².
pub const H: f64 = 1e-2;

fn shifted(p: &[f64], i: usize, d: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    q[i] += d;
    q
}

/// ∂_i f at p, fourth order.
pub fn d1<F: Fn(&[f64]) -> f64>(f: &F, p: &[f64], i: usize) -> f64 {
    let h = H;
    (-f(&shifted(p, i, 2.0 * h)) + 8.0 * f(&shifted(p, i, h)) - 8.0 * f(&shifted(p, i, -h))
        + f(&shifted(p, i, -2.0 * h)))
        / (12.0 * h)
}

/// ∂_i ∂_j f at p, fourth order (nested first-derivative stencils).
pub fn d2<F: Fn(&[f64]) -> f64>(f: &F, p: &[f64], i: usize, j: usize) -> f64 {
    if i == j {
        let h = H;
        return (-f(&shifted(p, i, 2.0 * h)) + 16.0 * f(&shifted(p, i, h)) - 30.0 * f(p)
            + 16.0 * f(&shifted(p, i, -h))
            - f(&shifted(p, i, -2.0 * h)))
            / (12.0 * h * h);
    }
    d1(&|q: &[f64]| d1(f, q, j), p, i)
}

pub fn inverse(m: &[f64], n: usize) -> Vec<f64> {
    // Gauss-Jordan with partial pivoting
    let mut a = m.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| a[x * n + c].abs().total_cmp(&a[y * n + c].abs())).unwrap();
        for k in 0..n {
            a.swap(piv * n + k, c * n + k);
            inv.swap(piv * n + k, c * n + k);
        }
        let d = a[c * n + c];
        for k in 0..n {
            a[c * n + k] /= d;
            inv[c * n + k] /= d;
        }
        for r in 0..n {
            if r != c {
                let f = a[r * n + c];
                for k in 0..n {
                    a[r * n + k] -= f * a[c * n + k];
                    inv[r * n + k] -= f * inv[c * n + k];
                }
            }
        }
    }
    inv
}

/// Christoffel symbols of the second kind Γ^k_{ij} (index k*n*n + i*n + j).
pub fn christoffel(g: MetricFn, p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let gi = inverse(&g(p), n);
    let mut dg = vec![0.0; n * n * n]; // dg[k][i][j] = ∂_k g_ij
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                dg[(k * n + i) * n + j] = d1(&|q: &[f64]| g(q)[i * n + j], p, k);
            }
        }
    }
    let mut gam = vec![0.0; n * n * n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += gi[k * n + l] * (dg[(i * n + l) * n + j] + dg[(j * n + l) * n + i] - dg[(l * n + i) * n + j]);
                }
                gam[(k * n + i) * n + j] = 0.5 * s;
            }
        }
    }
    gam
}

/// Fully covariant coordinate Riemann tensor R_{ρσμν}, with R_{1212} of the
/// round sphere positive.
pub fn riemann_coord(g: MetricFn, p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let gm = g(p);
    let gam = christoffel(g, p);
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    let mut r = vec![0.0; n * n * n * n];
    let dd = |a: usize, b: usize, c: usize, d: usize| d2(&|q: &[f64]| g(q)[a * n + b], p, c, d);
    for rho in 0..n {
        for sig in 0..n {
            for mu in 0..n {
                for nu in 0..n {
                    let mut v = 0.5
                        * (dd(rho, nu, mu, sig) + dd(sig, mu, nu, rho) - dd(sig, nu, mu, rho) - dd(rho, mu, nu, sig));
                    for z in 0..n {
                        for e in 0..n {
                            v += gm[z * n + e]
                                * (gam[(z * n + nu) * n + rho] * gam[(e * n + mu) * n + sig]
                                    - gam[(z * n + mu) * n + rho] * gam[(e * n + nu) * n + sig]);
                        }
                    }
                    r[idx(rho, sig, mu, nu)] = v;
                }
            }
        }
    }
    r
}

/// Numeric Gram-Schmidt on the given vectors (rows), Riemannian signature.
pub fn gram_schmidt(gm: &[f64], n: usize, vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let ip = |a: &[f64], b: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += gm[i * n + j] * a[i] * b[j];
            }
        }
        s
    };
    let mut out: Vec<Vec<f64>> = Vec::new();
    for w in vectors {
        let mut v = w.clone();
        for e in &out {
            let c = ip(w, e);
            for k in 0..n {
                v[k] -= c * e[k];
            }
        }
        let norm = ip(&v, &v).sqrt();
        out.push(v.iter().map(|x| x / norm).collect());
    }
    out
}

pub fn coordinate_basis(n: usize, order: &[usize]) -> Vec<Vec<f64>> {
    order
        .iter()
        .map(|&i| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        })
        .collect()
}

/// Riemann tensor in an orthonormal frame (rows of `frame` are the e_a).
pub fn riemann_frame(g: MetricFn, p: &[f64], frame: &[Vec<f64>]) -> Vec<f64> {
    let n = p.len();
    let r = riemann_coord(g, p);
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    let mut out = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut s = 0.0;
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                for l in 0..n {
                                    s += r[idx(i, j, k, l)] * frame[a][i] * frame[b][j] * frame[c][k] * frame[d][l];
                                }
                            }
                        }
                    }
                    out[idx(a, b, c, d)] = s;
                }
            }
        }
    }
    out
}

/// Scalar curvature from the coordinate Riemann tensor.
pub fn scalar_curvature(g: MetricFn, p: &[f64]) -> f64 {
    let n = p.len();
    let gi = inverse(&g(p), n);
    let r = riemann_coord(g, p);
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    let mut s = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    s += gi[a * n + c] * gi[b * n + d] * r[idx(a, b, c, d)];
                }
            }
        }
    }
    s
}

/// Coordinate Lie derivative (L_V g)_{μν} = V^ρ∂_ρ g_{μν} + g_{ρν}∂_μV^ρ + g_{μρ}∂_νV^ρ.
pub fn lie_derivative_metric(g: MetricFn, v: &dyn Fn(&[f64]) -> Vec<f64>, p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let gm = g(p);
    let vp = v(p);
    let mut out = vec![0.0; n * n];
    for mu in 0..n {
        for nu in 0..n {
            let mut s = 0.0;
            for rho in 0..n {
                s += vp[rho] * d1(&|q: &[f64]| g(q)[mu * n + nu], p, rho);
                s += gm[rho * n + nu] * d1(&|q: &[f64]| v(q)[rho], p, mu);
                s += gm[mu * n + rho] * d1(&|q: &[f64]| v(q)[rho], p, nu);
            }
            out[mu * n + nu] = s;
        }
    }
    out
}

/// Unit vector field u = V/|V|_g.
pub fn unit(g: MetricFn, v: &dyn Fn(&[f64]) -> Vec<f64>, p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let gm = g(p);
    let vp = v(p);
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += gm[i * n + j] * vp[i] * vp[j];
        }
    }
    vp.iter().map(|x| x / s.sqrt()).collect()
}

/// dψ as an antisymmetric coordinate matrix, ψ = g(u, ·).
pub fn d_psi(g: MetricFn, v: &dyn Fn(&[f64]) -> Vec<f64>, p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let psi = |q: &[f64], k: usize| {
        let gm = g(q);
        let u = unit(g, v, q);
        (0..n).map(|j| gm[k * n + j] * u[j]).sum::<f64>()
    };
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = d1(&|q: &[f64]| psi(q, j), p, i) - d1(&|q: &[f64]| psi(q, i), p, j);
        }
    }
    out
}

pub fn two_form(m: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += m[i * n + j] * a[i] * b[j];
        }
    }
    s
}

/// Gauss curvature of a 2-metric given as a closure.
pub fn gauss_curvature(h: MetricFn, p: &[f64]) -> f64 {
    let r = riemann_coord(h, p);
    let hm = h(p);
    let det = hm[0] * hm[3] - hm[1] * hm[2];
    // R_{0101} in 2D
    r[5] / det
}
