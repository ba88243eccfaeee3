use std::fmt;

use thiserror::Error;

use crate::numeric::{sin_enclosure_interval, sin_enclosure_wide, Interval, Rat};

/// Expression tree over the single variable `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var,
    Const(Rat),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sin(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// A denominator evaluated to exactly zero.
    #[error("division by zero")]
    Pole,
    /// A denominator enclosure straddles zero, so no sign can be certified.
    #[error("denominator enclosure contains zero")]
    Indeterminate,
    #[error("expression contains sin; exact evaluation unavailable")]
    NotRational,
}

/// Result of evaluating an expression: exact when no `sin` was involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(Rat),
    Enclosed(Interval),
}

impl Value {
    pub fn to_interval(&self) -> Interval {
        match self {
            Value::Exact(r) => Interval::point(r.clone()),
            Value::Enclosed(iv) => iv.clone(),
        }
    }

    fn normalise(iv: Interval) -> Value {
        if iv.is_point() {
            Value::Exact(iv.lo().clone())
        } else {
            Value::Enclosed(iv)
        }
    }

    fn lift2(
        a: Value,
        b: Value,
        exact: impl FnOnce(Rat, Rat) -> Rat,
        enclosed: impl FnOnce(&Interval, &Interval) -> Interval,
    ) -> Value {
        match (a, b) {
            (Value::Exact(x), Value::Exact(y)) => Value::Exact(exact(x, y)),
            (a, b) => Value::normalise(enclosed(&a.to_interval(), &b.to_interval())),
        }
    }

    /// `|self - target|`
    pub fn distance_to(&self, target: &Rat) -> Value {
        match self {
            Value::Exact(r) => Value::Exact((r - target).abs()),
            Value::Enclosed(iv) => {
                Value::normalise(iv.sub(&Interval::point(target.clone())).abs())
            }
        }
    }

    /// `true` unless the two values are certainly different.
    pub fn may_equal(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            (a, b) => a.to_interval().overlaps(&b.to_interval()),
        }
    }
}

impl Expr {
    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn constant(c: Rat) -> Expr {
        Expr::Const(c)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Rat::integer(n))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, n: u32) -> Expr {
        Expr::Pow(Box::new(a), n)
    }

    pub fn sin(a: Expr) -> Expr {
        Expr::Sin(Box::new(a))
    }

    pub fn contains_sin(&self) -> bool {
        match self {
            Expr::Var | Expr::Const(_) => false,
            Expr::Sin(_) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_sin() || b.contains_sin()
            }
            Expr::Pow(a, _) => a.contains_sin(),
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Const(_) => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_var() || b.contains_var()
            }
            Expr::Pow(a, _) | Expr::Sin(a) => a.contains_var(),
        }
    }

    /// Replace every occurrence of the variable by `replacement`.
    pub fn substitute(&self, replacement: &Expr) -> Expr {
        match self {
            Expr::Var => replacement.clone(),
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::Add(a, b) => Expr::add(a.substitute(replacement), b.substitute(replacement)),
            Expr::Sub(a, b) => Expr::sub(a.substitute(replacement), b.substitute(replacement)),
            Expr::Mul(a, b) => Expr::mul(a.substitute(replacement), b.substitute(replacement)),
            Expr::Div(a, b) => Expr::div(a.substitute(replacement), b.substitute(replacement)),
            Expr::Pow(a, n) => Expr::pow(a.substitute(replacement), *n),
            Expr::Sin(a) => Expr::sin(a.substitute(replacement)),
        }
    }

    /// Exact value at `x`; fails on `sin` nodes and zero denominators.
    pub fn eval_exact(&self, x: &Rat) -> Result<Rat, EvalError> {
        Ok(match self {
            Expr::Var => x.clone(),
            Expr::Const(c) => c.clone(),
            Expr::Add(a, b) => a.eval_exact(x)? + b.eval_exact(x)?,
            Expr::Sub(a, b) => a.eval_exact(x)? - b.eval_exact(x)?,
            Expr::Mul(a, b) => a.eval_exact(x)? * b.eval_exact(x)?,
            Expr::Div(a, b) => {
                let num = a.eval_exact(x)?;
                let den = b.eval_exact(x)?;
                num.checked_div(&den).map_err(|_| EvalError::Pole)?
            }
            Expr::Pow(a, n) => a.eval_exact(x)?.pow(*n),
            Expr::Sin(_) => return Err(EvalError::NotRational),
        })
    }

    /// Value at `x`, exact where possible and a rigorous enclosure otherwise.
    /// `sin_degree` sets the Taylor degree of every `sin` enclosure.
    pub fn eval(&self, x: &Rat, sin_degree: u32) -> Result<Value, EvalError> {
        Ok(match self {
            Expr::Var => Value::Exact(x.clone()),
            Expr::Const(c) => Value::Exact(c.clone()),
            Expr::Add(a, b) => Value::lift2(
                a.eval(x, sin_degree)?,
                b.eval(x, sin_degree)?,
                |p, q| p + q,
                Interval::add,
            ),
            Expr::Sub(a, b) => Value::lift2(
                a.eval(x, sin_degree)?,
                b.eval(x, sin_degree)?,
                |p, q| p - q,
                Interval::sub,
            ),
            Expr::Mul(a, b) => Value::lift2(
                a.eval(x, sin_degree)?,
                b.eval(x, sin_degree)?,
                |p, q| p * q,
                Interval::mul,
            ),
            Expr::Div(a, b) => {
                let num = a.eval(x, sin_degree)?;
                match b.eval(x, sin_degree)? {
                    Value::Exact(d) if d.is_zero() => return Err(EvalError::Pole),
                    Value::Exact(d) => match num {
                        Value::Exact(n) => Value::Exact(n / d),
                        Value::Enclosed(iv) => Value::normalise(iv.scale(&d.recip().expect("nonzero"))),
                    },
                    Value::Enclosed(iv) => {
                        let q = num
                            .to_interval()
                            .div(&iv)
                            .map_err(|_| EvalError::Indeterminate)?;
                        Value::normalise(q)
                    }
                }
            }
            Expr::Pow(a, n) => match a.eval(x, sin_degree)? {
                Value::Exact(r) => Value::Exact(r.pow(*n)),
                Value::Enclosed(iv) => Value::normalise(iv.pow(*n)),
            },
            Expr::Sin(a) => match a.eval(x, sin_degree)? {
                Value::Exact(r) => Value::normalise(sin_enclosure_wide(&r, sin_degree)),
                Value::Enclosed(iv) => Value::normalise(sin_enclosure_interval(&iv, sin_degree)),
            },
        })
    }

    /// Printer for the expression grammar accepted by [`crate::syntax::parse_expression`].
    pub fn source(&self) -> String {
        let mut out = String::new();
        write_expr(&mut out, self, &Style::Source, Prec::Sum);
        out
    }

    /// Human-readable rendering with the variable written as `var`.
    pub fn display_with(&self, var: &str) -> String {
        let mut out = String::new();
        write_expr(&mut out, self, &Style::Text(var.to_string()), Prec::Sum);
        out
    }

    /// LaTeX rendering with the variable written as `var`.
    pub fn latex_with(&self, var: &str) -> String {
        let mut out = String::new();
        write_expr(&mut out, self, &Style::Latex(var.to_string()), Prec::Sum);
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({})", self.source())
    }
}

enum Style {
    Source,
    Text(String),
    Latex(String),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum,
    Product,
    Power,
    Atom,
}

fn own_prec(e: &Expr) -> Prec {
    match e {
        Expr::Add(..) | Expr::Sub(..) => Prec::Sum,
        Expr::Mul(..) | Expr::Div(..) => Prec::Product,
        Expr::Pow(..) => Prec::Power,
        Expr::Const(c) if c.is_negative() => Prec::Sum,
        Expr::Const(c) if !c.is_integer() => Prec::Product,
        Expr::Var | Expr::Const(_) | Expr::Sin(_) => Prec::Atom,
    }
}

fn write_const(out: &mut String, c: &Rat, style: &Style) {
    match style {
        Style::Latex(_) if !c.is_integer() => {
            let sign = if c.is_negative() { "-" } else { "" };
            out.push_str(&format!(
                "{sign}\\frac{{{}}}{{{}}}",
                c.numer().magnitude(),
                c.denom()
            ));
        }
        _ => out.push_str(&c.to_string()),
    }
}

/// Writes `e`, parenthesised when its precedence is below `min`.
///
/// Right operands of binary operators are written at one level above the
/// operator so the printed form re-parses to the same left-associated tree.
fn write_expr(out: &mut String, e: &Expr, style: &Style, min: Prec) {
    let paren = own_prec(e) < min;
    let (open, close) = match style {
        Style::Latex(_) => ("\\left(", "\\right)"),
        _ => ("(", ")"),
    };
    if paren {
        out.push_str(open);
    }
    let spaced = !matches!(style, Style::Source);
    let binop = |out: &mut String, a: &Expr, op: &str, b: &Expr, lhs: Prec, rhs: Prec| {
        write_expr(out, a, style, lhs);
        out.push_str(op);
        write_expr(out, b, style, rhs);
    };
    match e {
        Expr::Var => match style {
            Style::Source => out.push('x'),
            Style::Text(v) | Style::Latex(v) => out.push_str(v),
        },
        Expr::Const(c) => write_const(out, c, style),
        Expr::Add(a, b) => binop(out, a, if spaced { " + " } else { "+" }, b, Prec::Sum, Prec::Product),
        Expr::Sub(a, b) => binop(out, a, if spaced { " - " } else { "-" }, b, Prec::Sum, Prec::Product),
        Expr::Mul(a, b) => {
            let op = match style {
                Style::Latex(_) => " \\cdot ",
                _ => "*",
            };
            binop(out, a, op, b, Prec::Product, Prec::Power)
        }
        Expr::Div(a, b) => match style {
            Style::Latex(_) => {
                out.push_str("\\frac{");
                write_expr(out, a, style, Prec::Sum);
                out.push_str("}{");
                write_expr(out, b, style, Prec::Sum);
                out.push('}');
            }
            _ => {
                // an integer over an integer literal would re-parse as one rational constant
                let rhs_literal = matches!(**b, Expr::Const(ref c) if c.is_integer() && !c.is_negative())
                    && matches!(**a, Expr::Const(ref c) if c.is_integer() && !c.is_negative());
                write_expr(out, a, style, Prec::Product);
                out.push('/');
                if rhs_literal {
                    out.push('(');
                    write_expr(out, b, style, Prec::Sum);
                    out.push(')');
                } else {
                    write_expr(out, b, style, Prec::Power);
                }
            }
        },
        Expr::Pow(a, n) => {
            write_expr(out, a, style, Prec::Atom);
            match style {
                Style::Latex(_) => out.push_str(&format!("^{{{n}}}")),
                _ => out.push_str(&format!("^{n}")),
            }
        }
        Expr::Sin(a) => {
            match style {
                Style::Latex(_) => out.push_str("\\sin\\left("),
                _ => out.push_str("sin("),
            }
            write_expr(out, a, style, Prec::Sum);
            out.push_str(close);
        }
    }
    if paren {
        out.push_str(close);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Expr {
        Expr::Var
    }

    #[test]
    fn exact_eval() {
        let e = Expr::add(Expr::pow(x(), 2), Expr::mul(Expr::int(3), x()));
        assert_eq!(e.eval_exact(&Rat::one()).unwrap(), Rat::integer(4));
        let pole = Expr::div(Expr::int(1), Expr::sub(x(), Expr::int(2)));
        assert_eq!(pole.eval_exact(&Rat::integer(2)), Err(EvalError::Pole));
        assert_eq!(Expr::sin(x()).eval_exact(&Rat::one()), Err(EvalError::NotRational));
    }

    #[test]
    fn enclosed_eval() {
        let e = Expr::sub(Expr::sin(x()), Expr::sin(Expr::int(1)));
        match e.eval(&Rat::one(), 13).unwrap() {
            Value::Exact(_) => panic!("expected an enclosure"),
            Value::Enclosed(iv) => {
                assert!(iv.contains_zero());
                assert!(iv.width() < Rat::new(1, 1_000_000_000));
            }
        }
        assert_eq!(
            Expr::sin(x()).eval(&Rat::zero(), 13).unwrap(),
            Value::Exact(Rat::zero())
        );
    }

    #[test]
    fn printing() {
        let e = Expr::add(Expr::pow(x(), 2), Expr::mul(Expr::int(3), x()));
        assert_eq!(e.source(), "x^2+3*x");
        assert_eq!(e.display_with("(1 + t)"), "(1 + t)^2 + 3*(1 + t)");
        let e = Expr::div(
            Expr::add(x(), Expr::int(1)),
            Expr::mul(
                Expr::sub(x(), Expr::int(1)),
                Expr::add(Expr::pow(x(), 2), Expr::int(1)),
            ),
        );
        assert_eq!(e.source(), "(x+1)/((x-1)*(x^2+1))");
        assert_eq!(Expr::mul(Expr::int(2), Expr::Const(Rat::new(-1, 3))).source(), "2*(-1/3)");
        assert_eq!(Expr::div(Expr::int(2), Expr::int(3)).source(), "2/(3)");
        assert_eq!(Expr::sub(x(), Expr::sub(x(), x())).source(), "x-(x-x)");
        assert_eq!(
            Expr::sin(Expr::div(x(), Expr::int(2))).latex_with("t"),
            "\\sin\\left(\\frac{t}{2}\\right)"
        );
    }
}
