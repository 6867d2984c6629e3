use std::fmt;

use rug::{Integer, Rational};

use super::PhiError;
use crate::numeric::Ball;

/// Expression tree in the single variable `t`.
///
/// Constants are exact rationals; the parser only produces decimal ones, the
/// simplifier may fold them into arbitrary rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var,
    Pi,
    Neg(Box<Expr>),
    Log(Box<Expr>),
    Exp(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

use Expr::*;

impl Expr {
    pub fn int(n: i64) -> Expr {
        Const(Rational::from(n))
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self {
            Const(q) => Some(q),
            _ => None,
        }
    }

    /// Integer value of a constant node, if it is one that fits an `i64`.
    pub fn as_int(&self) -> Option<i64> {
        self.as_const()
            .filter(|q| *q.denom() == 1)
            .and_then(|q| q.numer().to_i64())
    }

    fn is_const_value(&self, v: i64) -> bool {
        self.as_const().is_some_and(|q| *q == v)
    }

    /// True when `t` does not occur.
    pub fn is_constant(&self) -> bool {
        match self {
            Const(_) | Pi => true,
            Var => false,
            Neg(a) | Log(a) | Exp(a) => a.is_constant(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Const(_) | Var | Pi => 1,
            Neg(a) | Log(a) | Exp(a) => 1 + a.node_count(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    /// Ball enclosure of the expression at `t`.
    pub fn eval(&self, t: &Ball) -> Result<Ball, PhiError> {
        let prec = t.prec();
        let fail = |op: &'static str, arg: &Ball| PhiError::Eval {
            op,
            detail: format!("argument {arg} is outside the domain at t = {t}"),
        };
        Ok(match self {
            Const(q) => Ball::from_rational(q, prec),
            Var => t.clone(),
            Pi => Ball::pi_prec(prec),
            Neg(a) => -a.eval(t)?,
            Log(a) => {
                let x = a.eval(t)?;
                x.ln().map_err(|_| fail("log", &x))?
            }
            Exp(a) => a.eval(t)?.exp(),
            Add(a, b) => &a.eval(t)? + &b.eval(t)?,
            Sub(a, b) => &a.eval(t)? - &b.eval(t)?,
            Mul(a, b) => &a.eval(t)? * &b.eval(t)?,
            Div(a, b) => {
                let d = b.eval(t)?;
                a.eval(t)?.checked_div(&d).map_err(|_| fail("division", &d))?
            }
            Pow(a, b) => {
                let x = a.eval(t)?;
                match b.as_int() {
                    Some(n) => x.powi(n).map_err(|_| fail("power", &x))?,
                    None => x.pow(&b.eval(t)?).map_err(|_| fail("power", &x))?,
                }
            }
        })
    }

    /// Plain floating-point evaluation, for steering and diagnostics only.
    pub fn eval_f64(&self, t: f64) -> f64 {
        match self {
            Const(q) => q.to_f64(),
            Var => t,
            Pi => std::f64::consts::PI,
            Neg(a) => -a.eval_f64(t),
            Log(a) => a.eval_f64(t).ln(),
            Exp(a) => a.eval_f64(t).exp(),
            Add(a, b) => a.eval_f64(t) + b.eval_f64(t),
            Sub(a, b) => a.eval_f64(t) - b.eval_f64(t),
            Mul(a, b) => a.eval_f64(t) * b.eval_f64(t),
            Div(a, b) => a.eval_f64(t) / b.eval_f64(t),
            Pow(a, b) => match b.as_int().and_then(|n| i32::try_from(n).ok()) {
                Some(n) => a.eval_f64(t).powi(n),
                None => a.eval_f64(t).powf(b.eval_f64(t)),
            },
        }
    }
}

// Smart constructors. They fold literal arithmetic and apply a handful of
// algebraic identities so that derivative trees stay readable; none of them
// changes the value of the expression where it is defined.

fn boxed(a: Expr, b: Expr) -> (Box<Expr>, Box<Expr>) {
    (Box::new(a), Box::new(b))
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Const(q) => Const(-q),
        Neg(x) => *x,
        Div(n, d) if n.as_const().is_some() => Div(Box::new(neg(*n)), d),
        Mul(c, x) if c.as_const().is_some() => Mul(Box::new(neg(*c)), x),
        a => Neg(Box::new(a)),
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Const(x), Const(y)) => Const(x + y),
        (a, b) if a.is_const_value(0) => b,
        (a, b) if b.is_const_value(0) => a,
        (a, Neg(b)) => sub(a, *b),
        (a, Const(y)) if y < 0 => sub(a, Const(-y)),
        (a, b) => {
            let (a, b) = boxed(a, b);
            Add(a, b)
        }
    }
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Const(x), Const(y)) => Const(x - y),
        (a, b) if b.is_const_value(0) => a,
        (a, b) if a.is_const_value(0) => neg(b),
        (a, b) if a == b => Expr::int(0),
        (a, Neg(b)) => add(a, *b),
        (a, b) => {
            let (a, b) = boxed(a, b);
            Sub(a, b)
        }
    }
}

/// Splits `u^k` (or bare `u`) into base and integer exponent.
fn int_power(e: &Expr) -> (&Expr, i64) {
    match e {
        Pow(u, k) => match k.as_int() {
            Some(k) => (u, k),
            None => (e, 1),
        },
        _ => (e, 1),
    }
}

fn power_of(base: Expr, k: i64) -> Expr {
    if k >= 0 {
        pow(base, Expr::int(k))
    } else {
        div(Expr::int(1), pow(base, Expr::int(-k)))
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Const(x), Const(y)) => Const(x * y),
        (a, b) if a.is_const_value(0) || b.is_const_value(0) => Expr::int(0),
        (a, b) if a.is_const_value(1) => b,
        (a, b) if b.is_const_value(1) => a,
        (a, b) if a.is_const_value(-1) => neg(b),
        (a, b) if b.is_const_value(-1) => neg(a),
        // Constants to the front, and merged with a leading constant factor.
        (a, Const(y)) => mul(Const(y), a),
        (Const(x), Mul(c, rest)) if c.as_const().is_some() => {
            let c = c.as_const().cloned().unwrap_or_default();
            mul(Const(x * c), *rest)
        }
        (Const(x), Neg(rest)) => mul(Const(-x), *rest),
        (Neg(a), b) => neg(mul(*a, b)),
        (a, Neg(b)) => neg(mul(a, *b)),
        (Const(x), Div(n, d)) if n.as_const().is_some() => {
            let n = n.as_const().cloned().unwrap_or_default();
            div(Const(x * n), *d)
        }
        (a, Div(n, d)) if n.is_const_value(1) => div(a, *d),
        (Div(n, d), b) if n.is_const_value(1) => div(b, *d),
        (a, b) => {
            let (ua, ka) = int_power(&a);
            let (ub, kb) = int_power(&b);
            if ua == ub {
                return power_of(ua.clone(), ka + kb);
            }
            let (a, b) = boxed(a, b);
            Mul(a, b)
        }
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Const(x), Const(y)) if y != 0 => Const(x / y),
        (a, _) if a.is_const_value(0) => a,
        (a, b) if b.is_const_value(1) => a,
        (a, b) if a == b => Expr::int(1),
        (Neg(a), b) => neg(div(*a, b)),
        (Const(x), b) if x < 0 => neg(div(Const(-x), b)),
        (Mul(c, rest), b) if c.as_const().is_some() => {
            let c = c.as_const().cloned().unwrap_or_default();
            mul(Const(c), div(*rest, b))
        }
        // (x/c)/(y/c) = x/y
        (Div(x, c1), Div(y, c2)) if c1 == c2 => div(*x, *y),
        (a, b) => {
            let (ua, ka) = int_power(&a);
            let (ub, kb) = int_power(&b);
            if ua == ub && !a.is_constant() {
                return power_of(ua.clone(), ka - kb);
            }
            let (a, b) = boxed(a, b);
            Div(a, b)
        }
    }
}

pub fn pow(a: Expr, b: Expr) -> Expr {
    if b.is_const_value(1) {
        return a;
    }
    if b.is_const_value(0) {
        return Expr::int(1);
    }
    if let (Const(x), Some(n)) = (&a, b.as_int()) {
        if n.abs() <= 64 && !(n < 0 && *x == 0) {
            let mut r = Rational::from(1);
            for _ in 0..n.abs() {
                r *= x;
            }
            return Const(if n < 0 { r.recip() } else { r });
        }
    }
    match (a, b) {
        (Pow(u, k), b) if k.as_int().is_some() && b.as_int().is_some() => {
            let k = k.as_int().unwrap_or(1);
            let n = b.as_int().unwrap_or(1);
            pow(*u, Expr::int(k * n))
        }
        (a, b) => {
            let (a, b) = boxed(a, b);
            Pow(a, b)
        }
    }
}

pub fn log(a: Expr) -> Expr {
    match a {
        Exp(x) => *x,
        a if a.is_const_value(1) => Expr::int(0),
        a => Log(Box::new(a)),
    }
}

pub fn exp(a: Expr) -> Expr {
    match a {
        a if a.is_const_value(0) => Expr::int(1),
        a => Exp(Box::new(a)),
    }
}

// Printing. Precedence levels: 1 sum, 2 product, 3 unary minus, 4 power,
// 5 atom. A child is parenthesized when its level is below the slot's.

fn level(e: &Expr) -> u8 {
    match e {
        Add(..) | Sub(..) => 1,
        Mul(..) | Div(..) => 2,
        Neg(_) => 3,
        Const(q) if *q < 0 => 3,
        Const(q) if !is_decimal(q) => 2,
        Pow(..) => 4,
        _ => 5,
    }
}

fn is_decimal(q: &Rational) -> bool {
    let mut d = q.denom().clone();
    for p in [2u32, 5] {
        while d.is_divisible_u(p) {
            d /= p;
        }
    }
    d == 1
}

/// Exact decimal text of a rational with a terminating expansion.
fn decimal_text(q: &Rational) -> String {
    let mut digits = 0usize;
    let mut scaled = q.clone().abs();
    while *scaled.denom() != 1 {
        scaled *= 10;
        digits += 1;
    }
    let int: Integer = scaled.numer().clone();
    let mut s = int.to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{s}", "0".repeat(digits + 1 - s.len()));
        }
        s.insert(s.len() - digits, '.');
    }
    if *q < 0 {
        s.insert(0, '-');
    }
    s
}

fn write_slot(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const(q) if is_decimal(q) => f.write_str(&decimal_text(q)),
            Const(q) => {
                let n = Const(Rational::from(q.numer().clone()));
                let d = Const(Rational::from(q.denom().clone()));
                write!(f, "{n}/{d}")
            }
            Var => f.write_str("t"),
            Pi => f.write_str("pi"),
            Neg(a) => {
                f.write_str("-")?;
                write_slot(f, a, 3)
            }
            Log(a) => write!(f, "log({a})"),
            Exp(a) => write!(f, "exp({a})"),
            Add(a, b) => {
                write_slot(f, a, 1)?;
                f.write_str(" + ")?;
                write_slot(f, b, 2)
            }
            Sub(a, b) => {
                write_slot(f, a, 1)?;
                f.write_str(" - ")?;
                write_slot(f, b, 2)
            }
            Mul(a, b) => {
                write_slot(f, a, 2)?;
                f.write_str("*")?;
                write_slot(f, b, 3)
            }
            Div(a, b) => {
                write_slot(f, a, 2)?;
                f.write_str("/")?;
                write_slot(f, b, 3)
            }
            Pow(a, b) => {
                write_slot(f, a, 5)?;
                f.write_str("^")?;
                write_slot(f, b, 3)
            }
        }
    }
}
