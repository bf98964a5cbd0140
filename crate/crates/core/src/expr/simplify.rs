//! Canonicalizing constructors.
//!
//! Canonical trees contain no `Div`, `Neg` or `sqrt` nodes: `a/b` becomes
//! `a·b^-1`, `-a` becomes `-1·a` and `sqrt(a)` becomes `a^(1/2)`. The rule set:
//!
//! * sums are flattened, constants folded, like terms collected by their
//!   non-numeric part; the constant (if any) comes first;
//! * products are flattened, constants folded, `0·x → 0`, equal bases merge
//!   their exponents and `exp(a)·exp(b) → exp(a+b)`;
//! * powers: `x^0 → 1`, `x^1 → x`, exact numeric folding (integer powers and
//!   perfect roots), `(a^m)^n → a^(mn)` for integer `n`, integer powers
//!   distribute over products, positive numeric coefficients split off
//!   fractional powers, `exp(a)^e → exp(a·e)`;
//! * functions fold at zero (`sin 0 = 0`, `cos 0 = 1`, ...), `log 1 = 0`,
//!   `log(exp a) = a`, and fold numerically on float arguments.
//!
//! There is no distribution over sums and no trigonometric identity.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Expr, Func, Node, Number};

/// Bound on the re-flattening passes a single product may trigger.
const MAX_PRODUCT_PASSES: usize = 6;

pub(crate) fn simplify(e: &Expr) -> Expr {
    if e.is_canonical() {
        return e.clone();
    }
    let mut memo = BTreeMap::new();
    simplify_memo(e, &mut memo)
}

// Keys are node addresses; the key expression is stored alongside the result
// so the address cannot be reused while the memo lives.
fn simplify_memo(e: &Expr, memo: &mut BTreeMap<usize, (Expr, Expr)>) -> Expr {
    if e.is_canonical() {
        return e.clone();
    }
    if let Some((_, hit)) = memo.get(&e.addr()) {
        return hit.clone();
    }
    let out = match e.node() {
        Node::Num(_) | Node::Var(_) => e.clone(),
        Node::Add(xs) => make_sum(xs.iter().map(|x| simplify_memo(x, memo)).collect()),
        Node::Mul(xs) => make_product(xs.iter().map(|x| simplify_memo(x, memo)).collect()),
        Node::Div(a, b) => {
            let a = simplify_memo(a, memo);
            let b = simplify_memo(b, memo);
            make_product(alloc::vec![a, make_power(b, Expr::int(-1))])
        }
        Node::Pow(a, b) => {
            let a = simplify_memo(a, memo);
            let b = simplify_memo(b, memo);
            make_power(a, b)
        }
        Node::Neg(a) => {
            let a = simplify_memo(a, memo);
            make_product(alloc::vec![Expr::int(-1), a])
        }
        Node::Apply(f, a) => {
            let a = simplify_memo(a, memo);
            make_apply(*f, a)
        }
    };
    memo.insert(e.addr(), (e.clone(), out.clone()));
    out
}

/// Splits a canonical term into numeric coefficient and the remaining factor.
fn split_coeff(term: &Expr) -> (Number, Expr) {
    if let Node::Mul(xs) = term.node() {
        if let Some(c) = xs[0].as_number() {
            let rest = &xs[1..];
            let rest = if rest.len() == 1 { rest[0].clone() } else { Expr::canonical(Node::Mul(rest.to_vec())) };
            return (c, rest);
        }
    }
    (Number::ONE, term.clone())
}

fn with_coeff(c: Number, rest: Expr) -> Expr {
    if c.is_one() {
        return rest;
    }
    let mut xs = Vec::new();
    xs.push(Expr::num(c));
    match rest.node() {
        Node::Mul(fs) => xs.extend(fs.iter().cloned()),
        _ => xs.push(rest),
    }
    Expr::canonical(Node::Mul(xs))
}

pub(crate) fn make_sum(terms: Vec<Expr>) -> Expr {
    let mut constant = Number::ZERO;
    let mut collected: BTreeMap<Expr, Number> = BTreeMap::new();
    let mut push = |t: &Expr, constant: &mut Number| {
        if let Some(c) = t.as_number() {
            *constant = *constant + c;
            return;
        }
        let (c, rest) = split_coeff(t);
        let slot = collected.entry(rest).or_insert(Number::ZERO);
        *slot = *slot + c;
    };
    for t in &terms {
        let t = if t.is_canonical() { t.clone() } else { simplify(t) };
        match t.node() {
            Node::Add(xs) => xs.iter().for_each(|x| push(x, &mut constant)),
            _ => push(&t, &mut constant),
        }
    }
    let mut out = Vec::with_capacity(collected.len() + 1);
    if !constant.is_zero() {
        out.push(Expr::num(constant));
    }
    for (rest, c) in collected {
        if !c.is_zero() {
            out.push(with_coeff(c, rest));
        }
    }
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().unwrap(),
        _ => Expr::canonical(Node::Add(out)),
    }
}

pub(crate) fn make_product(factors: Vec<Expr>) -> Expr {
    make_product_pass(factors, 0)
}

fn make_product_pass(factors: Vec<Expr>, pass: usize) -> Expr {
    let mut coeff = Number::ONE;
    let mut groups: BTreeMap<Expr, Vec<Expr>> = BTreeMap::new();
    let mut exp_args: Vec<Expr> = Vec::new();
    let mut push = |f: &Expr, coeff: &mut Number| {
        if let Some(c) = f.as_number() {
            *coeff = *coeff * c;
            return;
        }
        match f.node() {
            Node::Apply(Func::Exp, a) => exp_args.push(a.clone()),
            Node::Pow(b, e) => groups.entry(b.clone()).or_default().push(e.clone()),
            _ => groups.entry(f.clone()).or_default().push(Expr::one()),
        }
    };
    for f in &factors {
        let f = if f.is_canonical() { f.clone() } else { simplify(f) };
        match f.node() {
            Node::Mul(xs) => xs.iter().for_each(|x| push(x, &mut coeff)),
            _ => push(&f, &mut coeff),
        }
    }
    if coeff.is_zero() {
        return Expr::num(coeff);
    }
    let mut out: Vec<Expr> = Vec::new();
    let mut needs_pass = false;
    for (base, exps) in groups {
        let p = if exps.len() == 1 {
            let e = exps.into_iter().next().unwrap();
            if e.is_one() {
                base
            } else {
                make_power(base, e)
            }
        } else {
            make_power(base, make_sum(exps))
        };
        needs_pass |= matches!(p.node(), Node::Num(_) | Node::Mul(_) | Node::Apply(Func::Exp, _));
        out.push(p);
    }
    if !exp_args.is_empty() {
        let e = if exp_args.len() == 1 {
            Expr::canonical(Node::Apply(Func::Exp, exp_args.pop().unwrap()))
        } else {
            make_apply(Func::Exp, make_sum(exp_args))
        };
        needs_pass |= !matches!(e.node(), Node::Apply(Func::Exp, _));
        out.push(e);
    }
    if needs_pass && pass < MAX_PRODUCT_PASSES {
        out.push(Expr::num(coeff));
        return make_product_pass(out, pass + 1);
    }
    // a power that folded to a number or product on the last allowed pass
    // still has to be absorbed to keep the output flat
    let mut flat: Vec<Expr> = Vec::with_capacity(out.len());
    for f in out {
        match f.node() {
            Node::Num(c) => coeff = coeff * *c,
            Node::Mul(xs) => {
                for x in xs {
                    match x.as_number() {
                        Some(c) => coeff = coeff * c,
                        None => flat.push(x.clone()),
                    }
                }
            }
            _ => flat.push(f),
        }
    }
    if coeff.is_zero() {
        return Expr::num(coeff);
    }
    flat.sort();
    if flat.is_empty() {
        return Expr::num(coeff);
    }
    if coeff.is_one() && flat.len() == 1 {
        return flat.pop().unwrap();
    }
    if !coeff.is_one() {
        flat.insert(0, Expr::num(coeff));
    }
    Expr::canonical(Node::Mul(flat))
}

pub(crate) fn make_power(base: Expr, exp: Expr) -> Expr {
    let base = if base.is_canonical() { base } else { simplify(&base) };
    let exp = if exp.is_canonical() { exp } else { simplify(&exp) };
    let Some(e) = exp.as_number() else {
        if base.is_one() {
            return base;
        }
        return match base.node() {
            Node::Apply(Func::Exp, a) => make_apply(Func::Exp, make_product(alloc::vec![a.clone(), exp])),
            _ => Expr::canonical(Node::Pow(base, exp)),
        };
    };
    if e.is_zero() {
        return Expr::one();
    }
    if e.is_one() {
        return base;
    }
    let int_exp = e.as_integer();
    match base.node() {
        Node::Num(b) => {
            if let Some(v) = b.pow(e) {
                return Expr::num(v);
            }
            // fractional power of an exact rational: split off the integer part
            if let (Number::Rat(_), Number::Rat(q)) = (*b, e) {
                if !q.is_integer() && !b.is_negative() {
                    let whole = q.floor();
                    let frac = q - whole;
                    if *whole.numer() != 0 {
                        if let Some(w) = b.pow(Number::Rat(whole)) {
                            return make_product(alloc::vec![
                                Expr::num(w),
                                Expr::canonical(Node::Pow(base.clone(), Expr::num(Number::Rat(frac)))),
                            ]);
                        }
                    }
                }
            }
            Expr::canonical(Node::Pow(base, exp))
        }
        Node::Pow(a, m) => match int_exp {
            Some(_) => make_power(a.clone(), make_product(alloc::vec![m.clone(), exp])),
            None => Expr::canonical(Node::Pow(base, exp)),
        },
        Node::Mul(xs) => {
            if int_exp.is_some() {
                return make_product(xs.iter().map(|x| make_power(x.clone(), exp.clone())).collect());
            }
            match xs[0].as_number() {
                Some(c) if c.is_positive() => {
                    let rest = if xs.len() == 2 { xs[1].clone() } else { Expr::canonical(Node::Mul(xs[1..].to_vec())) };
                    make_product(alloc::vec![make_power(Expr::num(c), exp.clone()), make_power(rest, exp),])
                }
                _ => Expr::canonical(Node::Pow(base, exp)),
            }
        }
        Node::Apply(Func::Exp, a) => make_apply(Func::Exp, make_product(alloc::vec![a.clone(), exp])),
        _ => Expr::canonical(Node::Pow(base, exp)),
    }
}

fn fold_float(f: Func, x: f64) -> Option<f64> {
    let v = match f {
        Func::Sin => libm::sin(x),
        Func::Cos => libm::cos(x),
        Func::Tan => libm::tan(x),
        Func::Sinh => libm::sinh(x),
        Func::Cosh => libm::cosh(x),
        Func::Tanh => libm::tanh(x),
        Func::Exp => libm::exp(x),
        Func::Log if x > 0.0 => libm::log(x),
        Func::Sqrt if x >= 0.0 => libm::sqrt(x),
        _ => return None,
    };
    v.is_finite().then_some(v)
}

pub(crate) fn make_apply(f: Func, arg: Expr) -> Expr {
    let arg = if arg.is_canonical() { arg } else { simplify(&arg) };
    if f == Func::Sqrt {
        return make_power(arg, Expr::rational(1, 2));
    }
    if let Some(n) = arg.as_number() {
        if n.is_zero() {
            match f {
                Func::Sin | Func::Tan | Func::Sinh | Func::Tanh => return Expr::zero(),
                Func::Cos | Func::Cosh | Func::Exp => return Expr::one(),
                _ => {}
            }
        }
        if f == Func::Log && n.is_one() {
            return Expr::zero();
        }
        if let Number::Float(x) = n {
            if let Some(v) = fold_float(f, x) {
                return Expr::float(v);
            }
        }
    }
    if f == Func::Log {
        if let Node::Apply(Func::Exp, inner) = arg.node() {
            return inner.clone();
        }
    }
    Expr::canonical(Node::Apply(f, arg))
}
