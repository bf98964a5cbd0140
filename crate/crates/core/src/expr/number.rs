use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i64>;

/// Numeric literal carried by an expression.
///
/// Literal arithmetic stays exact while it fits in `i64` ratios and falls back
/// to `f64` on overflow.
#[derive(Clone, Copy, Debug)]
pub enum Number {
    Rat(Rational),
    Float(f64),
}

impl Number {
    pub const ZERO: Number = Number::Rat(Ratio::new_raw(0, 1));
    pub const ONE: Number = Number::Rat(Ratio::new_raw(1, 1));

    pub fn int(n: i64) -> Number {
        Number::Rat(Rational::from_integer(n))
    }

    pub fn ratio(numer: i64, denom: i64) -> Number {
        Number::Rat(Rational::new(numer, denom))
    }

    pub fn float(x: f64) -> Number {
        // -0.0 and 0.0 must hash identically
        Number::Float(if x == 0.0 { 0.0 } else { x })
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Number::Rat(r) => r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN),
            Number::Float(x) => x,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Number::Rat(r) => r.is_zero(),
            Number::Float(x) => x == 0.0,
        }
    }

    pub fn is_one(self) -> bool {
        match self {
            Number::Rat(r) => *r.numer() == 1 && *r.denom() == 1,
            Number::Float(x) => x == 1.0,
        }
    }

    pub fn is_negative(self) -> bool {
        match self {
            Number::Rat(r) => r.is_negative(),
            Number::Float(x) => x < 0.0,
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            Number::Rat(r) => r.is_positive(),
            Number::Float(x) => x > 0.0,
        }
    }

    /// The value as an integer, when it is one exactly.
    pub fn as_integer(self) -> Option<i64> {
        match self {
            Number::Rat(r) if r.is_integer() => Some(*r.numer()),
            Number::Float(x) if libm::trunc(x) == x && x.abs() < 9.0e15 => Some(x as i64),
            _ => None,
        }
    }

    fn sum(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rat(a), Number::Rat(b)) => match a.checked_add(&b) {
                Some(r) => Number::Rat(r),
                None => Number::float(self.to_f64() + other.to_f64()),
            },
            _ => Number::float(self.to_f64() + other.to_f64()),
        }
    }

    fn product(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rat(a), Number::Rat(b)) => match a.checked_mul(&b) {
                Some(r) => Number::Rat(r),
                None => Number::float(self.to_f64() * other.to_f64()),
            },
            _ => Number::float(self.to_f64() * other.to_f64()),
        }
    }

    fn negated(self) -> Number {
        match self {
            Number::Rat(r) => match r.numer().checked_neg() {
                Some(n) => Number::Rat(Rational::new_raw(n, *r.denom())),
                None => Number::float(-self.to_f64()),
            },
            Number::Float(x) => Number::float(-x),
        }
    }

    /// `self^exp` when it can be folded without leaving the reals; `None` when
    /// the power must stay symbolic (irrational root, division by zero, ...).
    pub fn pow(self, exp: Number) -> Option<Number> {
        if exp.is_zero() {
            return Some(Number::ONE);
        }
        match (self, exp) {
            (Number::Rat(base), Number::Rat(e)) => {
                if e.is_integer() {
                    rat_powi(base, *e.numer()).map(Number::Rat)
                } else {
                    if base.is_negative() {
                        return None;
                    }
                    let root = *e.denom();
                    let n = int_root(*base.numer(), root)?;
                    let d = int_root(*base.denom(), root)?;
                    rat_powi(Rational::new(n, d), *e.numer()).map(Number::Rat)
                }
            }
            _ => {
                let (b, e) = (self.to_f64(), exp.to_f64());
                if b == 0.0 && e < 0.0 {
                    return None;
                }
                if b < 0.0 && exp.as_integer().is_none() {
                    return None;
                }
                let v = libm::pow(b, e);
                v.is_finite().then(|| Number::float(v))
            }
        }
    }

    fn rank(self) -> u8 {
        match self {
            Number::Rat(_) => 0,
            Number::Float(_) => 1,
        }
    }
}

fn rat_powi(base: Rational, exp: i64) -> Option<Rational> {
    if base.is_zero() {
        return if exp > 0 { Some(base) } else { None };
    }
    let mut acc = Rational::from_integer(1);
    let mut b = base;
    let mut k = exp.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.checked_mul(&b)?;
        }
        k >>= 1;
        if k > 0 {
            b = b.checked_mul(&b)?;
        }
    }
    if exp < 0 {
        Some(acc.recip())
    } else {
        Some(acc)
    }
}

/// Exact integer `k`-th root of a non-negative integer.
fn int_root(n: i64, k: i64) -> Option<i64> {
    if n < 0 || k <= 0 || k > 62 {
        return None;
    }
    if n < 2 {
        return Some(n);
    }
    let guess = libm::round(libm::pow(n as f64, 1.0 / k as f64)) as i64;
    for cand in [guess - 1, guess, guess + 1] {
        if cand < 0 {
            continue;
        }
        let mut acc: i64 = 1;
        let mut ok = true;
        for _ in 0..k {
            match acc.checked_mul(cand) {
                Some(v) => acc = v,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && acc == n {
            return Some(cand);
        }
    }
    None
}

impl Add for Number {
    type Output = Number;
    fn add(self, other: Number) -> Number {
        self.sum(other)
    }
}

impl Mul for Number {
    type Output = Number;
    fn mul(self, other: Number) -> Number {
        self.product(other)
    }
}

impl Neg for Number {
    type Output = Number;
    fn neg(self) -> Number {
        self.negated()
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Number {}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Number {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Number::Rat(a), Number::Rat(b)) => a.cmp(b),
            (Number::Float(a), Number::Float(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::int(n)
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Number::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Number::Float(x) => write!(f, "{:e}", x),
        }
    }
}
