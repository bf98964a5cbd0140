//! Small dense linear algebra on row-major `f64` matrices.

use alloc::vec::Vec;

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn det(mut a: Vec<f64>, n: usize) -> f64 {
    let mut d = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs())).unwrap_or(col);
        let pv = a[pivot * n + col];
        if pv == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            d = -d;
        }
        d *= pv;
        for r in col + 1..n {
            let f = a[r * n + col] / pv;
            if f != 0.0 {
                for k in col..n {
                    a[r * n + k] -= f * a[col * n + k];
                }
            }
        }
    }
    d
}

/// Sign of the permutation that sorts `idx` (which must be distinct).
pub(crate) fn permutation_sign(idx: &[usize]) -> f64 {
    let mut s = 1.0;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] > idx[j] {
                s = -s;
            }
        }
    }
    s
}

/// All permutations of `0..k` with their signs (k is at most the chart dimension).
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    heap(k, &mut cur, &mut out);
    out.into_iter()
        .map(|p| {
            let s = permutation_sign(&p);
            (p, s)
        })
        .collect()
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap(k - 1, a, out);
}
