use core::fmt::{self, Write};

use super::{Expr, Node, Number};

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

/// Precedence-aware printer whose output parses back to an equal value.
pub struct Displayed<'a, S> {
    expr: &'a Expr,
    names: &'a [S],
}

impl<'a, S: AsRef<str>> Displayed<'a, S> {
    pub(crate) fn new(expr: &'a Expr, names: &'a [S]) -> Self {
        Displayed { expr, names }
    }

    fn var(&self, f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
        match self.names.get(i) {
            Some(n) => f.write_str(n.as_ref()),
            None => write!(f, "x{}", i),
        }
    }

    fn go(&self, f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
        let p = prec(e);
        if p < min {
            f.write_char('(')?;
            self.bare(f, e)?;
            f.write_char(')')
        } else {
            self.bare(f, e)
        }
    }

    fn bare(&self, f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
        match e.node() {
            Node::Num(n) => write_number(f, *n),
            Node::Var(i) => self.var(f, *i),
            Node::Add(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    match (k, negated(x)) {
                        (0, _) => self.go(f, x, PREC_ADD)?,
                        (_, Some(pos)) => {
                            f.write_str(" - ")?;
                            self.go(f, &pos, PREC_MUL)?;
                        }
                        (_, None) => {
                            f.write_str(" + ")?;
                            self.go(f, x, PREC_MUL)?;
                        }
                    }
                }
                Ok(())
            }
            Node::Mul(xs) => {
                let mut rest = &xs[..];
                if let Some(c) = xs[0].as_number() {
                    if c == Number::int(-1) && xs.len() > 1 {
                        f.write_char('-')?;
                        rest = &xs[1..];
                        if rest.len() == 1 {
                            return self.go(f, &rest[0], PREC_NEG);
                        }
                        f.write_char('(')?;
                        self.product(f, rest)?;
                        return f.write_char(')');
                    }
                }
                self.product(f, rest)
            }
            Node::Div(a, b) => {
                self.go(f, a, PREC_MUL)?;
                f.write_str(" / ")?;
                self.go(f, b, PREC_NEG)
            }
            Node::Pow(b, x) => {
                self.go(f, b, PREC_ATOM)?;
                f.write_char('^')?;
                self.go(f, x, PREC_ATOM)
            }
            Node::Neg(a) => {
                f.write_char('-')?;
                self.go(f, a, PREC_NEG)
            }
            Node::Apply(func, a) => {
                f.write_str(func.name())?;
                f.write_char('(')?;
                self.go(f, a, PREC_ADD)?;
                f.write_char(')')
            }
        }
    }

    fn product(&self, f: &mut fmt::Formatter<'_>, xs: &[Expr]) -> fmt::Result {
        for (k, x) in xs.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            self.go(f, x, PREC_NEG)?;
        }
        Ok(())
    }
}

/// For a term with a negative leading coefficient, its absolute value.
fn negated(e: &Expr) -> Option<Expr> {
    match e.node() {
        Node::Num(n) if n.is_negative() => Some(Expr::num(-*n)),
        Node::Mul(xs) => match xs[0].as_number() {
            Some(c) if c.is_negative() => Some(e.scale(Number::int(-1))),
            _ => None,
        },
        Node::Neg(a) => Some(a.clone()),
        _ => None,
    }
}

fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Num(n) => match n {
            _ if n.is_negative() => PREC_NEG,
            Number::Rat(r) if !r.is_integer() => PREC_MUL,
            _ => PREC_ATOM,
        },
        Node::Var(_) | Node::Apply(..) => PREC_ATOM,
        Node::Add(_) => PREC_ADD,
        Node::Mul(xs) => {
            if xs[0].as_number() == Some(Number::int(-1)) {
                PREC_NEG
            } else {
                PREC_MUL
            }
        }
        Node::Div(..) => PREC_MUL,
        Node::Pow(..) => PREC_POW,
        Node::Neg(_) => PREC_NEG,
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, n: Number) -> fmt::Result {
    match n {
        // shortest round-trip representation, always re-parseable
        Number::Float(x) => write!(f, "{:e}", x),
        _ => write!(f, "{}", n),
    }
}

impl<S: AsRef<str>> fmt::Display for Displayed<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.go(f, self.expr, 0)
    }
}
