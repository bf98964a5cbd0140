//! Random raw expression trees whose values stay finite on `[-1, 1]^n`.

use cartan_core::expr::Node;
use cartan_core::{Expr, Func, Number};
use proptest::prelude::*;

fn raw(node: Node) -> Expr {
    Expr::from_node(node)
}

fn leaf(vars: usize) -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0..vars).prop_map(|i| raw(Node::Var(i))),
        (-5i64..=5).prop_map(|k| raw(Node::Num(Number::int(k)))),
        (-7i64..=7, 1i64..=6).prop_map(|(p, q)| raw(Node::Num(Number::ratio(p, q)))),
        (-2.0f64..2.0).prop_map(|x| raw(Node::Num(Number::float(x)))),
    ]
}

/// `2 + b^2`, strictly positive.
fn positive(b: Expr) -> Expr {
    raw(Node::Add(vec![raw(Node::Num(Number::int(2))), raw(Node::Pow(b, raw(Node::Num(Number::int(2)))))]))
}

/// Unsimplified trees of bounded depth over `vars` coordinates.
pub fn tree(vars: usize) -> impl Strategy<Value = Expr> {
    leaf(vars).prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|xs| raw(Node::Add(xs))),
            prop::collection::vec(inner.clone(), 2..4).prop_map(|xs| raw(Node::Mul(xs))),
            inner.clone().prop_map(|a| raw(Node::Neg(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| raw(Node::Div(a, positive(b)))),
            (inner.clone(), 0i64..4).prop_map(|(a, k)| raw(Node::Pow(a, raw(Node::Num(Number::int(k)))))),
            (inner.clone(), prop_oneof![Just(Func::Sin), Just(Func::Cos), Just(Func::Tanh), Just(Func::Sinh)])
                .prop_map(|(a, f)| raw(Node::Apply(f, a))),
            inner.clone().prop_map(|a| raw(Node::Apply(Func::Exp, raw(Node::Apply(Func::Sin, a))))),
            inner.clone().prop_map(|a| raw(Node::Apply(Func::Log, positive(a)))),
            inner.clone().prop_map(|a| raw(Node::Apply(Func::Sqrt, positive(a)))),
            inner.prop_map(|a| raw(Node::Pow(positive(a), raw(Node::Num(Number::ratio(-3, 2)))))),
        ]
    })
}

pub fn point(vars: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, vars)
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
