//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | ident | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2` is
//! `-(x^2)` and `2^-1` is `0.5`. There is no implicit multiplication. Decimal
//! literals become exact rationals. The identifier `pi` denotes π unless a
//! coordinate of that name is declared.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Expr, Func, Node, Number, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("undeclared symbol `{name}` at offset {offset}")]
    UndeclaredSymbol { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::Syntax { offset, .. } | ParseError::UndeclaredSymbol { offset, .. } => Some(*offset),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Number),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || (c == '.' && rest[1..].starts_with(|d: char| d.is_ascii_digit())) {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest.find(|d: char| !(d.is_ascii_alphanumeric() || d == '_')).unwrap_or(rest.len());
            self.pos += len;
            return Ok((Tok::Ident(rest[..len].to_string()), start));
        }
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok((Tok::Op(c), start));
        }
        Err(ParseError::Syntax { offset: start, message: alloc::format!("unexpected character `{}`", c) })
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize), ParseError> {
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - s
        };
        let int_len = digits(&mut i);
        let int_part = &self.src[start..start + int_len];
        let mut frac_part = "";
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            let fs = i;
            digits(&mut i);
            frac_part = &self.src[fs..i];
        }
        let mut exponent: i64 = 0;
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            let neg = j < bytes.len() && bytes[j] == b'-';
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            let es = j;
            if digits(&mut j) == 0 {
                return Err(ParseError::Syntax { offset: j, message: "malformed exponent".to_string() });
            }
            let mag: i64 = self.src[es..j]
                .parse()
                .map_err(|_| ParseError::Syntax { offset: es, message: "exponent out of range".to_string() })?;
            exponent = if neg { -mag } else { mag };
            i = j;
        }
        self.pos = i;
        let text = &self.src[start..i];
        Ok((Tok::Num(literal(int_part, frac_part, exponent, text)), start))
    }
}

/// Exact value of a decimal literal, or the nearest float when it does not fit.
fn literal(int_part: &str, frac_part: &str, exponent: i64, text: &str) -> Number {
    let exact = (|| {
        let mut mantissa: i64 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            mantissa = mantissa.checked_mul(10)?.checked_add((b - b'0') as i64)?;
        }
        let shift = exponent.checked_sub(frac_part.len() as i64)?;
        let pow = 10i64.checked_pow(shift.unsigned_abs().try_into().ok()?)?;
        Some(if shift >= 0 { Rational::from_integer(mantissa.checked_mul(pow)?) } else { Rational::new(mantissa, pow) })
    })();
    match exact {
        Some(r) => Number::Rat(r),
        None => Number::float(text.parse::<f64>().unwrap_or(f64::NAN)),
    }
}

struct Parser<'a, S> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    names: &'a [S],
}

impl<'a, S: AsRef<str>> Parser<'a, S> {
    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn error<T>(&self, message: &str) -> Result<T, ParseError> {
        let found = match &self.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num(n) => alloc::format!("number {}", n),
            Tok::Ident(s) => alloc::format!("`{}`", s),
            Tok::Op(c) => alloc::format!("`{}`", c),
        };
        Err(ParseError::Syntax { offset: self.at, message: alloc::format!("{}, found {}", message, found) })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = alloc::vec![self.term()?];
        loop {
            match self.tok {
                Tok::Op('+') => {
                    self.bump()?;
                    terms.push(self.term()?);
                }
                Tok::Op('-') => {
                    self.bump()?;
                    let t = self.term()?;
                    terms.push(Expr::from_node(Node::Neg(t)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::from_node(Node::Add(terms)) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        let mut factors: Vec<Expr> = Vec::new();
        loop {
            match self.tok {
                Tok::Op('*') => {
                    self.bump()?;
                    factors.push(core::mem::replace(&mut acc, self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump()?;
                    let rhs = self.unary()?;
                    factors.push(acc);
                    let lhs = if factors.len() == 1 {
                        factors.pop().unwrap()
                    } else {
                        Expr::from_node(Node::Mul(core::mem::take(&mut factors)))
                    };
                    acc = Expr::from_node(Node::Div(lhs, rhs));
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            Ok(acc)
        } else {
            factors.push(acc);
            Ok(Expr::from_node(Node::Mul(factors)))
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            let inner = self.unary()?;
            return Ok(Expr::from_node(Node::Neg(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exp = self.unary()?;
            return Ok(Expr::from_node(Node::Pow(base, exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.tok.clone() {
            Tok::Num(n) => {
                self.bump()?;
                Ok(Expr::num(n))
            }
            Tok::Op('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect_close()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                if let Some(i) = self.names.iter().position(|n| n.as_ref() == name) {
                    return Ok(Expr::var(i));
                }
                if let Some(f) = Func::from_name(&name) {
                    if self.tok != Tok::Op('(') {
                        return self.error(&alloc::format!("expected `(` after `{}`", name));
                    }
                    self.bump()?;
                    let arg = self.expr()?;
                    self.expect_close()?;
                    return Ok(Expr::from_node(Node::Apply(f, arg)));
                }
                if name == "pi" {
                    return Ok(Expr::float(core::f64::consts::PI));
                }
                Err(ParseError::UndeclaredSymbol { name, offset: at })
            }
            _ => self.error("expected a number, coordinate, function or `(`"),
        }
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        if self.tok != Tok::Op(')') {
            return self.error("expected `)`");
        }
        self.bump()
    }
}

/// Parses `text` over the coordinates `names` (index = position in the slice).
///
/// The result is the raw syntax tree; call [`Expr::simplify`] for the
/// canonical form.
pub fn parse_expr<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Expr, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { lexer: Lexer { src: text, pos: 0 }, tok: Tok::End, at: 0, names };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.error("expected an operator or end of input");
    }
    Ok(e)
}
