use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::simplify::{make_apply, make_power, make_product, make_sum};
use super::{Expr, Func, Node, Number};

/// Symbolic differentiation with a reusable memo.
///
/// Derivatives of shared subtrees are computed once per coordinate; callers
/// that differentiate many related expressions (frame components, connection
/// coefficients) should keep one `Differentiator` around.
#[derive(Default)]
pub struct Differentiator {
    memo: BTreeMap<(usize, usize), (Expr, Expr)>,
}

impl Differentiator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn diff(&mut self, e: &Expr, var: usize) -> Expr {
        let e = e.simplify();
        self.go(&e, var)
    }

    fn go(&mut self, e: &Expr, var: usize) -> Expr {
        if !e.depends_on(var) {
            return Expr::zero();
        }
        let key = (e.addr(), var);
        if let Some((_, d)) = self.memo.get(&key) {
            return d.clone();
        }
        let d = self.rule(e, var);
        self.memo.insert(key, (e.clone(), d.clone()));
        d
    }

    fn rule(&mut self, e: &Expr, var: usize) -> Expr {
        match e.node() {
            Node::Num(_) => Expr::zero(),
            Node::Var(i) => {
                if *i == var {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Node::Add(xs) => make_sum(xs.iter().map(|x| self.go(x, var)).collect()),
            Node::Mul(xs) => {
                let mut terms = Vec::new();
                for (k, x) in xs.iter().enumerate() {
                    let dx = self.go(x, var);
                    if dx.is_zero() {
                        continue;
                    }
                    let mut fs: Vec<Expr> = Vec::with_capacity(xs.len());
                    fs.push(dx);
                    fs.extend(xs.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, f)| f.clone()));
                    terms.push(make_product(fs));
                }
                make_sum(terms)
            }
            Node::Pow(b, p) => {
                let db = self.go(b, var);
                if let Some(n) = p.as_number() {
                    // n·b^(n-1)·b'
                    let lowered = make_power(b.clone(), Expr::num(n + Number::int(-1)));
                    return make_product(alloc::vec![Expr::num(n), lowered, db]);
                }
                // b^p·(p'·log b + p·b'/b)
                let dp = self.go(p, var);
                let mut inner = Vec::new();
                if !dp.is_zero() {
                    inner.push(make_product(alloc::vec![dp, make_apply(Func::Log, b.clone())]));
                }
                if !db.is_zero() {
                    inner.push(make_product(alloc::vec![p.clone(), db, make_power(b.clone(), Expr::int(-1))]));
                }
                make_product(alloc::vec![e.clone(), make_sum(inner)])
            }
            Node::Apply(f, a) => {
                let da = self.go(a, var);
                let outer = match f {
                    Func::Sin => make_apply(Func::Cos, a.clone()),
                    Func::Cos => make_product(alloc::vec![Expr::int(-1), make_apply(Func::Sin, a.clone())]),
                    Func::Tan => make_sum(alloc::vec![Expr::one(), make_power(e.clone(), Expr::int(2))]),
                    Func::Sinh => make_apply(Func::Cosh, a.clone()),
                    Func::Cosh => make_apply(Func::Sinh, a.clone()),
                    Func::Tanh => make_sum(alloc::vec![
                        Expr::one(),
                        make_product(alloc::vec![Expr::int(-1), make_power(e.clone(), Expr::int(2))]),
                    ]),
                    Func::Exp => e.clone(),
                    Func::Log => make_power(a.clone(), Expr::int(-1)),
                    Func::Sqrt => {
                        make_product(alloc::vec![Expr::rational(1, 2), make_power(a.clone(), Expr::rational(-1, 2)),])
                    }
                };
                make_product(alloc::vec![outer, da])
            }
            // canonical trees have no Div/Neg; handle them anyway for safety
            Node::Div(..) | Node::Neg(_) => {
                let s = e.simplify();
                self.go(&s, var)
            }
        }
    }
}
