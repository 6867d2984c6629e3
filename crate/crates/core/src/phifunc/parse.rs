//! Recursive-descent parser for the weight-function language.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := '-' factor | base ('^' factor)?
//! base     := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func     := 'log' | 'exp'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-t^2` is
//! `-(t^2)` and `t^-2` is `t^(-2)`. Numeric literals are exact decimals; a
//! minus applied directly to a literal folds into the constant.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::expr::Expr;
use super::PhiError;

pub fn parse_phi(text: &str) -> Result<Expr, PhiError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {:?}", p.peek_char())));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: String) -> PhiError {
        PhiError::Syntax { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PhiError> {
        if self.eat(c) {
            Ok(())
        } else if self.pos >= self.src.len() {
            Err(self.error(format!("expected '{}' before end of input", c as char)))
        } else {
            Err(self.error(format!("expected '{}', found {:?}", c as char, self.peek_char())))
        }
    }

    fn expr(&mut self) -> Result<Expr, PhiError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, PhiError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, PhiError> {
        if self.eat(b'-') {
            return Ok(match self.factor()? {
                Expr::Const(q) => Expr::Const(-q),
                e => Expr::Neg(Box::new(e)),
            });
        }
        let base = self.base()?;
        if self.eat(b'^') {
            let exponent = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, PhiError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input".into())),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                match name {
                    "t" => Ok(Expr::Var),
                    "pi" => Ok(Expr::Pi),
                    "log" | "exp" => {
                        self.expect(b'(')?;
                        let arg = Box::new(self.expr()?);
                        self.expect(b')')?;
                        Ok(if name == "log" { Expr::Log(arg) } else { Expr::Exp(arg) })
                    }
                    _ => Err(PhiError::UnknownIdentifier {
                        pos: start,
                        name: name.to_string(),
                    }),
                }
            }
            Some(_) => Err(self.error(format!("unexpected {:?}", self.peek_char()))),
        }
    }

    fn number(&mut self) -> Result<Expr, PhiError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            p.pos - s
        };
        let int_digits = digits(self);
        let mut frac_digits = 0;
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_digits = digits(self);
        }
        if int_digits + frac_digits == 0 {
            self.pos = start;
            return Err(self.error("malformed number".into()));
        }
        let mantissa_end = self.pos;
        let mut exponent = 0i64;
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            let negative = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let es = self.pos;
            if digits(self) == 0 {
                self.pos = save;
                return Err(self.error("malformed exponent".into()));
            }
            let text = std::str::from_utf8(&self.src[es..self.pos]).unwrap_or("0");
            exponent = text
                .parse::<i64>()
                .ok()
                .filter(|e| *e <= 4000)
                .ok_or_else(|| self.error("exponent out of range".into()))?;
            if negative {
                exponent = -exponent;
            }
        }
        let mantissa: String = std::str::from_utf8(&self.src[start..mantissa_end])
            .unwrap_or("0")
            .chars()
            .filter(|c| *c != '.')
            .collect();
        let numer = Integer::from_str_radix(&mantissa, 10).map_err(|_| self.error("malformed number".into()))?;
        let scale = exponent - frac_digits as i64;
        let ten = Integer::from(10u32);
        let value = if scale >= 0 {
            Rational::from(numer * Pow::pow(ten, scale as u32))
        } else {
            Rational::from((numer, Pow::pow(ten, (-scale) as u32)))
        };
        Ok(Expr::Const(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Expr::*;

    fn c(n: i64) -> Box<Expr> {
        Box::new(Expr::int(n))
    }

    #[test]
    fn shapes() {
        assert_eq!(
            parse_phi("1/t^2").unwrap(),
            Div(c(1), Box::new(Pow(Box::new(Var), c(2))))
        );
        assert_eq!(
            parse_phi("2^3^2").unwrap(),
            Pow(c(2), Box::new(Pow(c(3), c(2))))
        );
        assert_eq!(parse_phi("-t^2").unwrap(), Neg(Box::new(Pow(Box::new(Var), c(2)))));
        assert_eq!(parse_phi("t^-2").unwrap(), Pow(Box::new(Var), c(-2)));
        assert_eq!(parse_phi(" 1.5e-1 ").unwrap(), Const(Rational::from((3, 20))));
    }

    #[test]
    fn example_weight() {
        let e = parse_phi("1/(log(t/(2*pi)))^2").unwrap();
        let two_pi = Mul(c(2), Box::new(Pi));
        let inner = Log(Box::new(Div(Box::new(Var), Box::new(two_pi))));
        assert_eq!(e, Div(c(1), Box::new(Pow(Box::new(inner), c(2)))));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_phi("1/t^^2"), Err(PhiError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_phi("sin(t)"), Err(PhiError::UnknownIdentifier { pos: 0, .. })));
        assert!(matches!(parse_phi("(t"), Err(PhiError::Syntax { .. })));
        assert!(matches!(parse_phi(""), Err(PhiError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_phi("t t"), Err(PhiError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn print_round_trip() {
        for s in [
            "1/t^2",
            "1/(log(t/(2*pi)))^2",
            "1/(t^2 + 0.25)",
            "exp(-t/100)*t^-1.5",
            "-(t - 3)^2/t^5",
            "2^3^2",
            "(2^3)^2",
            "t/(t*t)",
            "1 - (2 - t)",
            "-2/t^3",
        ] {
            let e = parse_phi(s).unwrap();
            let again = parse_phi(&e.to_string()).unwrap();
            assert_eq!(e, again, "{s} -> {e}");
        }
    }
}
