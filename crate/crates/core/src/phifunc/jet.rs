//! Truncated Taylor series ("jets") of expressions in ball arithmetic.
//!
//! Evaluated at a ball `I`, coefficient `k` encloses `f⁽ᵏ⁾(ξ)/k!` for every
//! `ξ ∈ I`, which is what the quadrature remainder bounds need.

use super::expr::Expr;
use super::PhiError;
use crate::numeric::Ball;

type Series = Vec<Ball>;

fn constant(c: Ball, n: usize) -> Series {
    let prec = c.prec();
    let mut s = vec![Ball::from_i64_prec(0, prec); n];
    s[0] = c;
    s
}

fn mul(a: &Series, b: &Series) -> Series {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut acc = &a[0] * &b[k];
            for j in 1..=k {
                acc = &acc + &(&a[j] * &b[k - j]);
            }
            acc
        })
        .collect()
}

fn div(a: &Series, b: &Series) -> Result<Series, PhiError> {
    let n = a.len();
    let b0 = &b[0];
    let mut q: Series = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a[k].clone();
        for j in 1..=k {
            acc = &acc - &(&b[j] * &q[k - j]);
        }
        q.push(acc.checked_div(b0).map_err(|_| domain("division", b0))?);
    }
    Ok(q)
}

fn exp(a: &Series) -> Series {
    let n = a.len();
    let mut e: Series = Vec::with_capacity(n);
    e.push(a[0].exp());
    for k in 1..n {
        let mut acc = &a[1] * &e[k - 1];
        for j in 2..=k {
            acc = &acc + &(&(&a[j] * &e[k - j]) * j as i64);
        }
        e.push(&acc / &Ball::from_i64_prec(k as i64, acc.prec()));
    }
    e
}

fn log(a: &Series) -> Result<Series, PhiError> {
    let n = a.len();
    let a0 = &a[0];
    let mut l: Series = Vec::with_capacity(n);
    l.push(a0.ln().map_err(|_| domain("log", a0))?);
    for k in 1..n {
        let mut acc = &a[k] * k as i64;
        for j in 1..k {
            acc = &acc - &(&(&l[j] * &a[k - j]) * j as i64);
        }
        let denom = a0 * k as i64;
        l.push(acc.checked_div(&denom).map_err(|_| domain("log", a0))?);
    }
    Ok(l)
}

fn powi(a: &Series, n: i64) -> Result<Series, PhiError> {
    if n < 0 {
        let one = constant(Ball::from_i64_prec(1, a[0].prec()), a.len());
        return div(&one, &powi(a, -n)?);
    }
    let mut base = a.clone();
    let mut acc = constant(Ball::from_i64_prec(1, a[0].prec()), a.len());
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    Ok(acc)
}

fn domain(op: &'static str, arg: &Ball) -> PhiError {
    PhiError::Eval {
        op,
        detail: format!("Taylor coefficient argument {arg} is outside the domain"),
    }
}

fn zip(a: Series, b: Series, f: impl Fn(&Ball, &Ball) -> Ball) -> Series {
    a.iter().zip(&b).map(|(x, y)| f(x, y)).collect()
}

impl Expr {
    /// Taylor coefficients `c_0 … c_{order}` at `t`.
    pub fn jet(&self, t: &Ball, order: usize) -> Result<Vec<Ball>, PhiError> {
        let n = order + 1;
        let prec = t.prec();
        Ok(match self {
            Expr::Const(q) => constant(Ball::from_rational(q, prec), n),
            Expr::Pi => constant(Ball::pi_prec(prec), n),
            Expr::Var => {
                let mut s = constant(t.clone(), n);
                if n > 1 {
                    s[1] = Ball::from_i64_prec(1, prec);
                }
                s
            }
            Expr::Neg(a) => a.jet(t, order)?.into_iter().map(|x| -x).collect(),
            Expr::Log(a) => log(&a.jet(t, order)?)?,
            Expr::Exp(a) => exp(&a.jet(t, order)?),
            Expr::Add(a, b) => zip(a.jet(t, order)?, b.jet(t, order)?, |x, y| x + y),
            Expr::Sub(a, b) => zip(a.jet(t, order)?, b.jet(t, order)?, |x, y| x - y),
            Expr::Mul(a, b) => {
                if a.is_constant() {
                    let c = a.eval(t)?;
                    b.jet(t, order)?.iter().map(|x| &c * x).collect()
                } else if b.is_constant() {
                    let c = b.eval(t)?;
                    a.jet(t, order)?.iter().map(|x| x * &c).collect()
                } else {
                    mul(&a.jet(t, order)?, &b.jet(t, order)?)
                }
            }
            Expr::Div(a, b) => {
                if b.is_constant() {
                    let c = b.eval(t)?;
                    let mut out = Vec::with_capacity(n);
                    for x in a.jet(t, order)? {
                        out.push(x.checked_div(&c).map_err(|_| domain("division", &c))?);
                    }
                    out
                } else {
                    div(&a.jet(t, order)?, &b.jet(t, order)?)?
                }
            }
            Expr::Pow(a, b) => match b.as_int() {
                Some(k) => powi(&a.jet(t, order)?, k)?,
                None => {
                    let l = log(&a.jet(t, order)?)?;
                    exp(&mul(&b.jet(t, order)?, &l))
                }
            },
        })
    }
}
