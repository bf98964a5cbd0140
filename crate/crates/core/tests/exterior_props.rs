mod common;

use cartan_core::{ext_d, wedge, Expr, PForm};
use common::trees::{point, tree};
use proptest::prelude::*;

const DIM: usize = 4;

fn blades(degree: usize) -> Vec<Vec<usize>> {
    (0u32..1 << DIM)
        .filter(|m| m.count_ones() as usize == degree)
        .map(|m| (0..DIM).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

fn form(max_degree: usize) -> impl Strategy<Value = PForm> {
    (0..=max_degree).prop_flat_map(|deg| {
        let slots = blades(deg);
        let k = slots.len();
        prop::collection::vec(prop::option::weighted(0.6, tree(DIM)), k).prop_map(move |coeffs| {
            let terms: Vec<(&[usize], Expr)> =
                slots.iter().zip(coeffs).filter_map(|(b, c)| c.map(|c| (b.as_slice(), c.simplify()))).collect();
            PForm::from_terms(DIM, deg, &terms)
        })
    })
}

/// Largest coefficient of `a` at `p`, relative to the scale of the inputs.
fn residual(a: &PForm, p: &[f64], scale: f64) -> f64 {
    a.max_abs_at(p).unwrap() / scale.max(1.0)
}

fn scale(forms: &[&PForm], p: &[f64]) -> f64 {
    forms.iter().map(|f| f.max_abs_at(p).unwrap()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn d_squared_vanishes(a in form(3), p in point(DIM)) {
        let dd = ext_d(&ext_d(&a));
        prop_assert!(residual(&dd, &p, scale(&[&ext_d(&a)], &p)) < 1e-10);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(2), b in form(2), p in point(DIM)) {
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        let sign = if (a.degree() * b.degree()).is_multiple_of(2) { 1 } else { -1 };
        let r = ab.sub(&ba.scale(&Expr::int(sign))).unwrap();
        prop_assert!(residual(&r, &p, scale(&[&ab], &p)) < 1e-10);
    }

    #[test]
    fn d_obeys_leibniz(a in form(2), b in form(2), p in point(DIM)) {
        let lhs = ext_d(&wedge(&a, &b).unwrap());
        let sign = if a.degree().is_multiple_of(2) { 1 } else { -1 };
        let rhs = wedge(&ext_d(&a), &b).unwrap().add(&wedge(&a, &ext_d(&b)).unwrap().scale(&Expr::int(sign))).unwrap();
        let r = lhs.sub(&rhs).unwrap();
        prop_assert!(residual(&r, &p, scale(&[&lhs, &rhs], &p)) < 1e-10);
    }

    #[test]
    fn wedge_is_associative(a in form(1), b in form(1), c in form(2), p in point(DIM)) {
        let l = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
        let r = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
        let diff = l.sub(&r).unwrap();
        prop_assert!(residual(&diff, &p, scale(&[&l], &p)) < 1e-10);
    }
}

#[test]
fn d_of_exact_one_form_is_zero_symbolically() {
    let f = Expr::var(0) * Expr::var(1).apply(cartan_core::Func::Sin) + Expr::var(2).powi(3);
    let df = ext_d(&PForm::scalar(DIM, f));
    assert!(ext_d(&df).is_zero());
}
