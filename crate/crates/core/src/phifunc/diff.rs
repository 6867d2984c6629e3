use super::expr::{add, div, exp, log, mul, neg, pow, sub, Expr};

/// Symbolic `d/dt`, simplified through the folding constructors.
///
/// Integer-literal powers use the power rule; any other exponent goes through
/// `u^v = exp(v log u)`, i.e. `(u^v)' = u^v (v' log u + v u'/u)`.
pub fn differentiate(e: &Expr) -> Expr {
    if e.is_constant() {
        return Expr::int(0);
    }
    match e {
        Expr::Const(_) | Expr::Pi => Expr::int(0),
        Expr::Var => Expr::int(1),
        Expr::Neg(a) => neg(differentiate(a)),
        Expr::Log(a) => div(differentiate(a), (**a).clone()),
        Expr::Exp(a) => mul(differentiate(a), exp((**a).clone())),
        Expr::Add(a, b) => add(differentiate(a), differentiate(b)),
        Expr::Sub(a, b) => sub(differentiate(a), differentiate(b)),
        Expr::Mul(a, b) => {
            let (a, b) = (&**a, &**b);
            if a.is_constant() {
                return mul(a.clone(), differentiate(b));
            }
            if b.is_constant() {
                return mul(b.clone(), differentiate(a));
            }
            add(mul(differentiate(a), b.clone()), mul(a.clone(), differentiate(b)))
        }
        Expr::Div(a, b) => {
            let (a, b) = (&**a, &**b);
            if b.is_constant() {
                return div(differentiate(a), b.clone());
            }
            let denom = pow(b.clone(), Expr::int(2));
            if a.is_constant() {
                return div(mul(neg(a.clone()), differentiate(b)), denom);
            }
            div(
                sub(mul(differentiate(a), b.clone()), mul(a.clone(), differentiate(b))),
                denom,
            )
        }
        Expr::Pow(u, v) => {
            let (u, v) = (&**u, &**v);
            if let Some(n) = v.as_int() {
                return mul(
                    mul(Expr::int(n), pow(u.clone(), Expr::int(n - 1))),
                    differentiate(u),
                );
            }
            let du = differentiate(u);
            let dv = differentiate(v);
            let inner = add(mul(dv, log(u.clone())), div(mul(v.clone(), du), u.clone()));
            mul(e.clone(), inner)
        }
    }
}
