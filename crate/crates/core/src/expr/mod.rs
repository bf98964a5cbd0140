//! Symbolic scalar expressions over the coordinates of a chart.
//!
//! An [`Expr`] is an immutable, reference-counted DAG node. Every node caches a
//! structural hash, the set of coordinates it depends on, and whether it is
//! already in canonical (simplified) form. Arithmetic through the operator
//! traits and the named constructors always yields canonical trees; the raw
//! constructors ([`Expr::from_node`]) are used by the parser and by tests that
//! need unsimplified input.

mod diff;
mod display;
mod eval;
mod number;
mod parse;
mod simplify;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::hash::{Hash, Hasher};
use core::ops;

pub use diff::Differentiator;
pub use display::Displayed;
pub use eval::{EvalError, Tape};
pub use number::{Number, Rational};
pub use parse::{parse_expr, ParseError};

/// Elementary functions understood by the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 9] =
        [Func::Sin, Func::Cos, Func::Tan, Func::Sinh, Func::Cosh, Func::Tanh, Func::Exp, Func::Log, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// One node of an expression tree.
#[derive(Clone, Debug)]
pub enum Node {
    Num(Number),
    /// Coordinate by chart index.
    Var(usize),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Div(Expr, Expr),
    Pow(Expr, Expr),
    Neg(Expr),
    Apply(Func, Expr),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    hash: u64,
    vars: u64,
    canonical: bool,
}

/// Immutable symbolic scalar expression.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

const fn mix(mut h: u64, v: u64) -> u64 {
    h ^= v.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

fn number_hash(n: &Number) -> u64 {
    match n {
        Number::Rat(r) => mix(mix(1, *r.numer() as u64), *r.denom() as u64),
        Number::Float(x) => mix(2, x.to_bits()),
    }
}

fn var_bit(i: usize) -> u64 {
    1u64 << i.min(63)
}

impl Expr {
    fn build(node: Node, canonical: bool) -> Expr {
        let (hash, vars) = match &node {
            Node::Num(n) => (mix(11, number_hash(n)), 0),
            Node::Var(i) => (mix(13, *i as u64), var_bit(*i)),
            Node::Add(xs) => xs.iter().fold((17, 0), |(h, v), x| (mix(h, x.hash()), v | x.vars())),
            Node::Mul(xs) => xs.iter().fold((19, 0), |(h, v), x| (mix(h, x.hash()), v | x.vars())),
            Node::Div(a, b) => (mix(mix(23, a.hash()), b.hash()), a.vars() | b.vars()),
            Node::Pow(a, b) => (mix(mix(29, a.hash()), b.hash()), a.vars() | b.vars()),
            Node::Neg(a) => (mix(31, a.hash()), a.vars()),
            Node::Apply(f, a) => (mix(mix(37, *f as u64), a.hash()), a.vars()),
        };
        Expr(Arc::new(Inner { node, hash, vars, canonical }))
    }

    /// Wraps a node without simplifying it.
    pub fn from_node(node: Node) -> Expr {
        let canonical = matches!(node, Node::Num(_) | Node::Var(_));
        Expr::build(node, canonical)
    }

    pub(crate) fn canonical(node: Node) -> Expr {
        Expr::build(node, true)
    }

    pub fn num(n: Number) -> Expr {
        Expr::canonical(Node::Num(n))
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(Number::int(n))
    }

    pub fn rational(numer: i64, denom: i64) -> Expr {
        Expr::num(Number::ratio(numer, denom))
    }

    pub fn float(x: f64) -> Expr {
        Expr::num(Number::float(x))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn var(i: usize) -> Expr {
        Expr::canonical(Node::Var(i))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    fn hash(&self) -> u64 {
        self.0.hash
    }

    fn vars(&self) -> u64 {
        self.0.vars
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    /// Whether the expression may depend on coordinate `i`.
    pub fn depends_on(&self, i: usize) -> bool {
        self.0.vars & var_bit(i) != 0
    }

    pub fn is_constant(&self) -> bool {
        self.0.vars == 0
    }

    pub fn as_number(&self) -> Option<Number> {
        match self.node() {
            Node::Num(n) => Some(*n),
            _ => None,
        }
    }

    /// Structurally zero. Numerically zero expressions need not be caught.
    pub fn is_zero(&self) -> bool {
        self.as_number().is_some_and(Number::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_number().is_some_and(Number::is_one)
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn sum<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        simplify::make_sum(terms.into_iter().collect())
    }

    pub fn product<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        simplify::make_product(factors.into_iter().collect())
    }

    pub fn pow(&self, exp: &Expr) -> Expr {
        simplify::make_power(self.clone(), exp.clone())
    }

    pub fn powi(&self, exp: i64) -> Expr {
        self.pow(&Expr::int(exp))
    }

    pub fn powq(&self, numer: i64, denom: i64) -> Expr {
        self.pow(&Expr::rational(numer, denom))
    }

    pub fn sqrt(&self) -> Expr {
        self.powq(1, 2)
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn apply(&self, f: Func) -> Expr {
        simplify::make_apply(f, self.clone())
    }

    pub fn scale(&self, c: Number) -> Expr {
        Expr::product([Expr::num(c), self.clone()])
    }

    /// Canonical form; see the module docs of the rule set for details.
    pub fn simplify(&self) -> Expr {
        simplify::simplify(self)
    }

    /// Symbolic partial derivative with respect to coordinate `var`.
    pub fn diff(&self, var: usize) -> Expr {
        Differentiator::new().diff(self, var)
    }

    /// Direct recursive evaluation; works on raw and canonical trees alike.
    pub fn eval(&self, point: &[f64]) -> Result<f64, EvalError> {
        eval::eval_direct(self, point)
    }

    /// Display helper that prints coordinates by name.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> Displayed<'a, S> {
        Displayed::new(self, names)
    }

    /// Number of distinct nodes reachable from this expression.
    pub fn dag_size(&self) -> usize {
        let mut seen = alloc::collections::BTreeSet::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.addr()) {
                continue;
            }
            match e.node() {
                Node::Num(_) | Node::Var(_) => {}
                Node::Add(xs) | Node::Mul(xs) => stack.extend(xs.iter().cloned()),
                Node::Div(a, b) | Node::Pow(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                Node::Neg(a) | Node::Apply(_, a) => stack.push(a.clone()),
            }
        }
        seen.len()
    }
}

fn node_rank(n: &Node) -> u8 {
    match n {
        Node::Num(_) => 0,
        Node::Var(_) => 1,
        Node::Add(_) => 2,
        Node::Mul(_) => 3,
        Node::Div(..) => 4,
        Node::Pow(..) => 5,
        Node::Neg(_) => 6,
        Node::Apply(..) => 7,
    }
}

fn structural_cmp(a: &Expr, b: &Expr) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    a.hash().cmp(&b.hash()).then_with(|| node_rank(a.node()).cmp(&node_rank(b.node()))).then_with(|| {
        match (a.node(), b.node()) {
            (Node::Num(x), Node::Num(y)) => x.cmp(y),
            (Node::Var(x), Node::Var(y)) => x.cmp(y),
            (Node::Add(x), Node::Add(y)) | (Node::Mul(x), Node::Mul(y)) => x.cmp(y),
            (Node::Div(a1, b1), Node::Div(a2, b2)) | (Node::Pow(a1, b1), Node::Pow(a2, b2)) => {
                a1.cmp(a2).then_with(|| b1.cmp(b2))
            }
            (Node::Neg(x), Node::Neg(y)) => x.cmp(y),
            (Node::Apply(f, x), Node::Apply(g, y)) => f.cmp(g).then_with(|| x.cmp(y)),
            _ => Ordering::Equal,
        }
    })
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        structural_cmp(self, other) == Ordering::Equal
    }
}

impl Eq for Expr {}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: structural hash first, then structure. Deterministic across
/// runs, but unrelated to numeric size.
impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        structural_cmp(self, other)
    }
}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl core::fmt::Debug for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(&Displayed::<&str>::new(self, &[]), f)
    }
}

impl core::fmt::Display for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(&Displayed::<&str>::new(self, &[]), f)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Number> for Expr {
    fn from(n: Number) -> Self {
        Expr::num(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl ops::$trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl ops::$trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                ops::$trait::$method(&self, &rhs)
            }
        }
        impl ops::$trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                ops::$trait::$method(&self, rhs)
            }
        }
        impl ops::$trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                ops::$trait::$method(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Expr::sum([a.clone(), b.clone()]));
binop!(Sub, sub, |a, b| Expr::sum([a.clone(), -b]));
binop!(Mul, mul, |a, b| Expr::product([a.clone(), b.clone()]));
binop!(Div, div, |a, b| Expr::product([a.clone(), b.recip()]));

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(Number::int(-1))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}
