use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Expr, Func, Node, Number};

/// Domain errors raised by numeric evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("logarithm of a non-positive number")]
    LogNonPositive,
    #[error("square root of a negative number")]
    SqrtNegative,
    #[error("division by zero")]
    DivisionByZero,
    #[error("fractional power of a negative number")]
    PowDomain,
    #[error("non-finite result")]
    NonFinite,
    #[error("coordinate {0} is not bound")]
    UnboundCoordinate(usize),
}

fn finite(v: f64) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite)
    }
}

fn apply(f: Func, x: f64) -> Result<f64, EvalError> {
    let v = match f {
        Func::Sin => libm::sin(x),
        Func::Cos => libm::cos(x),
        Func::Tan => libm::tan(x),
        Func::Sinh => libm::sinh(x),
        Func::Cosh => libm::cosh(x),
        Func::Tanh => libm::tanh(x),
        Func::Exp => libm::exp(x),
        Func::Log => {
            if x <= 0.0 {
                return Err(EvalError::LogNonPositive);
            }
            libm::log(x)
        }
        Func::Sqrt => {
            if x < 0.0 {
                return Err(EvalError::SqrtNegative);
            }
            libm::sqrt(x)
        }
    };
    finite(v)
}

fn powi(b: f64, n: i64) -> Result<f64, EvalError> {
    if n < 0 && b == 0.0 {
        return Err(EvalError::DivisionByZero);
    }
    let v = match n {
        2 => b * b,
        -1 => 1.0 / b,
        _ if n.unsigned_abs() <= i32::MAX as u64 => {
            // exponentiation by squaring for exact small integer powers
            let mut acc = 1.0;
            let mut base = b;
            let mut k = n.unsigned_abs();
            while k > 0 {
                if k & 1 == 1 {
                    acc *= base;
                }
                base *= base;
                k >>= 1;
            }
            if n < 0 {
                1.0 / acc
            } else {
                acc
            }
        }
        _ => libm::pow(b, n as f64),
    };
    finite(v)
}

fn pow_const(b: f64, e: Number) -> Result<f64, EvalError> {
    if let Some(n) = e.as_integer() {
        return powi(b, n);
    }
    let ef = e.to_f64();
    if b < 0.0 {
        let half = matches!(e, Number::Rat(r) if *r.denom() == 2);
        return Err(if half { EvalError::SqrtNegative } else { EvalError::PowDomain });
    }
    if b == 0.0 && ef < 0.0 {
        return Err(EvalError::DivisionByZero);
    }
    if ef == 0.5 {
        return finite(libm::sqrt(b));
    }
    if ef == -0.5 {
        return finite(1.0 / libm::sqrt(b));
    }
    finite(libm::pow(b, ef))
}

fn pow_dyn(b: f64, e: f64) -> Result<f64, EvalError> {
    if libm::trunc(e) == e && e.abs() < 9.0e15 {
        return powi(b, e as i64);
    }
    if b < 0.0 {
        return Err(EvalError::PowDomain);
    }
    if b == 0.0 && e < 0.0 {
        return Err(EvalError::DivisionByZero);
    }
    finite(libm::pow(b, e))
}

pub(crate) fn eval_direct(e: &Expr, point: &[f64]) -> Result<f64, EvalError> {
    match e.node() {
        Node::Num(n) => Ok(n.to_f64()),
        Node::Var(i) => point.get(*i).copied().ok_or(EvalError::UnboundCoordinate(*i)),
        Node::Add(xs) => {
            let mut acc = 0.0;
            for x in xs {
                acc += eval_direct(x, point)?;
            }
            finite(acc)
        }
        Node::Mul(xs) => {
            let mut acc = 1.0;
            for x in xs {
                acc *= eval_direct(x, point)?;
            }
            finite(acc)
        }
        Node::Div(a, b) => {
            let a = eval_direct(a, point)?;
            let b = eval_direct(b, point)?;
            if b == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            finite(a / b)
        }
        Node::Pow(b, p) => {
            let bv = eval_direct(b, point)?;
            match p.as_number() {
                Some(n) => pow_const(bv, n),
                None => pow_dyn(bv, eval_direct(p, point)?),
            }
        }
        Node::Neg(a) => Ok(-eval_direct(a, point)?),
        Node::Apply(f, a) => apply(*f, eval_direct(a, point)?),
    }
}

#[derive(Clone, Debug)]
enum Op {
    Const(f64),
    Var(usize),
    Add(u32, u32),
    Mul(u32, u32),
    Div(u32, u32),
    Neg(u32),
    PowConst(u32, Number),
    Pow(u32, u32),
    Apply(Func, u32),
}

/// A batch of expressions compiled to straight-line code.
///
/// Common subexpressions (shared pointers and structurally equal subtrees)
/// are evaluated once per point.
#[derive(Clone, Debug)]
pub struct Tape {
    ops: Vec<Op>,
    args: Vec<u32>,
    outputs: Vec<u32>,
    arity: usize,
}

struct Compiler {
    ops: Vec<Op>,
    args: Vec<u32>,
    slots: BTreeMap<Expr, u32>,
    // address lookup first; every node stays alive through the borrowed roots
    by_addr: BTreeMap<usize, u32>,
    arity: usize,
}

impl Compiler {
    fn emit(&mut self, e: &Expr) -> u32 {
        if let Some(&s) = self.by_addr.get(&e.addr()) {
            return s;
        }
        if let Some(&s) = self.slots.get(e) {
            self.by_addr.insert(e.addr(), s);
            return s;
        }
        let op = match e.node() {
            Node::Num(n) => Op::Const(n.to_f64()),
            Node::Var(i) => {
                self.arity = self.arity.max(i + 1);
                Op::Var(*i)
            }
            Node::Add(xs) | Node::Mul(xs) => {
                let children: Vec<u32> = xs.iter().map(|x| self.emit(x)).collect();
                let start = self.args.len() as u32;
                self.args.extend(children);
                let len = xs.len() as u32;
                if matches!(e.node(), Node::Add(_)) {
                    Op::Add(start, len)
                } else {
                    Op::Mul(start, len)
                }
            }
            Node::Div(a, b) => {
                let a = self.emit(a);
                let b = self.emit(b);
                Op::Div(a, b)
            }
            Node::Neg(a) => Op::Neg(self.emit(a)),
            Node::Pow(b, p) => {
                let b = self.emit(b);
                match p.as_number() {
                    Some(n) => Op::PowConst(b, n),
                    None => {
                        let p = self.emit(p);
                        Op::Pow(b, p)
                    }
                }
            }
            Node::Apply(f, a) => {
                let a = self.emit(a);
                Op::Apply(*f, a)
            }
        };
        let slot = self.ops.len() as u32;
        self.ops.push(op);
        self.slots.insert(e.clone(), slot);
        self.by_addr.insert(e.addr(), slot);
        slot
    }
}

impl Tape {
    pub fn compile(exprs: &[Expr]) -> Tape {
        let mut c =
            Compiler { ops: Vec::new(), args: Vec::new(), slots: BTreeMap::new(), by_addr: BTreeMap::new(), arity: 0 };
        let outputs = exprs.iter().map(|e| c.emit(e)).collect();
        Tape { ops: c.ops, args: c.args, outputs, arity: c.arity }
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    /// Number of straight-line instructions.
    pub fn op_count(&self) -> usize {
        self.ops.len()
    }

    /// Evaluates every compiled expression at `point`.
    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, EvalError> {
        let mut scratch = Vec::new();
        let mut out = alloc::vec![0.0; self.outputs.len()];
        self.eval_into(point, &mut scratch, &mut out)?;
        Ok(out)
    }

    /// Evaluates at every point; on failure returns the index of the offending point.
    pub fn eval_points(&self, points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, (usize, EvalError)> {
        let mut scratch = Vec::new();
        let mut all = Vec::with_capacity(points.len());
        for (k, p) in points.iter().enumerate() {
            let mut out = alloc::vec![0.0; self.outputs.len()];
            self.eval_into(p, &mut scratch, &mut out).map_err(|e| (k, e))?;
            all.push(out);
        }
        Ok(all)
    }

    /// Like [`Tape::eval`] but reuses caller-provided buffers.
    pub fn eval_into(&self, point: &[f64], scratch: &mut Vec<f64>, out: &mut [f64]) -> Result<(), EvalError> {
        if point.len() < self.arity {
            return Err(EvalError::UnboundCoordinate(point.len()));
        }
        scratch.clear();
        scratch.reserve(self.ops.len());
        for op in &self.ops {
            let v = match op {
                Op::Const(c) => *c,
                Op::Var(i) => point[*i],
                Op::Add(s, n) => {
                    let mut acc = 0.0;
                    for a in &self.args[*s as usize..(*s + *n) as usize] {
                        acc += scratch[*a as usize];
                    }
                    finite(acc)?
                }
                Op::Mul(s, n) => {
                    let mut acc = 1.0;
                    for a in &self.args[*s as usize..(*s + *n) as usize] {
                        acc *= scratch[*a as usize];
                    }
                    finite(acc)?
                }
                Op::Div(a, b) => {
                    let b = scratch[*b as usize];
                    if b == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    finite(scratch[*a as usize] / b)?
                }
                Op::Neg(a) => -scratch[*a as usize],
                Op::PowConst(b, n) => pow_const(scratch[*b as usize], *n)?,
                Op::Pow(b, p) => pow_dyn(scratch[*b as usize], scratch[*p as usize])?,
                Op::Apply(f, a) => apply(*f, scratch[*a as usize])?,
            };
            scratch.push(v);
        }
        for (o, s) in out.iter_mut().zip(&self.outputs) {
            *o = scratch[*s as usize];
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_examples() {
        let x = Expr::var(0);
        let y = Expr::var(1);
        assert_eq!(x.apply(Func::Sin).eval(&[0.0]), Ok(0.0));
        assert_eq!(x.sqrt().eval(&[-1.0]), Err(EvalError::SqrtNegative));
        assert_eq!((x.powi(2) + y).eval(&[2.0, 1.0]), Ok(5.0));
        assert_eq!(x.apply(Func::Log).eval(&[0.0]), Err(EvalError::LogNonPositive));
        assert_eq!(x.recip().eval(&[0.0]), Err(EvalError::DivisionByZero));
        assert_eq!(x.eval(&[]), Err(EvalError::UnboundCoordinate(0)));
    }

    #[test]
    fn tape_matches_direct_evaluation() {
        let x = Expr::var(0);
        let y = Expr::var(1);
        let s = (x.powi(2) + y.powi(2)).sqrt();
        let exprs = [s.clone(), s.recip() * x.apply(Func::Cos), (x * y).apply(Func::Exp)];
        let tape = Tape::compile(&exprs);
        let p = [0.7, -1.3];
        let got = tape.eval(&p).unwrap();
        for (g, e) in got.iter().zip(&exprs) {
            assert!((g - e.eval(&p).unwrap()).abs() < 1e-15);
        }
        // the shared root is compiled once
        let single = Tape::compile(core::slice::from_ref(&s));
        assert!(tape.op_count() < single.op_count() * 3);
    }
}
