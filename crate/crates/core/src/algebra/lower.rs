use super::{AlgebraError, Expr, Poly, RatFunc};

/// Sum/product tree whose leaves are rational functions and `sin` of a
/// rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SinPattern {
    Rational(RatFunc),
    Sin(RatFunc),
    Add(Box<SinPattern>, Box<SinPattern>),
    Sub(Box<SinPattern>, Box<SinPattern>),
    Mul(Box<SinPattern>, Box<SinPattern>),
    Div(Box<SinPattern>, Box<SinPattern>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lowered {
    Poly(Poly),
    RatFunc(RatFunc),
    SinPattern(SinPattern),
}

/// Classify an expression as a polynomial, a rational function, or a
/// sin-pattern; nested `sin` is rejected.
pub fn lower_expr(e: &Expr) -> Result<Lowered, AlgebraError> {
    if !e.contains_sin() {
        let f = to_ratfunc(e)?;
        return Ok(match f.as_poly() {
            Some(p) => Lowered::Poly(p),
            None => Lowered::RatFunc(f),
        });
    }
    Ok(Lowered::SinPattern(to_pattern(e)?))
}

/// Exact rational function of a `sin`-free expression.
pub fn to_ratfunc(e: &Expr) -> Result<RatFunc, AlgebraError> {
    Ok(match e {
        Expr::Var => RatFunc::from_poly(Poly::x()),
        Expr::Const(c) => RatFunc::from_poly(Poly::constant(c.clone())),
        Expr::Add(a, b) => to_ratfunc(a)?.add(&to_ratfunc(b)?),
        Expr::Sub(a, b) => to_ratfunc(a)?.sub(&to_ratfunc(b)?),
        Expr::Mul(a, b) => to_ratfunc(a)?.mul(&to_ratfunc(b)?),
        Expr::Div(a, b) => to_ratfunc(a)?.div(&to_ratfunc(b)?)?,
        Expr::Pow(a, n) => to_ratfunc(a)?.pow(*n),
        Expr::Sin(_) => {
            return Err(AlgebraError::Unsupported(format!(
                "{} is not a rational function",
                e.source()
            )))
        }
    })
}

fn to_pattern(e: &Expr) -> Result<SinPattern, AlgebraError> {
    if !e.contains_sin() {
        return Ok(SinPattern::Rational(to_ratfunc(e)?));
    }
    let pair = |a: &Expr, b: &Expr| -> Result<(Box<SinPattern>, Box<SinPattern>), AlgebraError> {
        Ok((Box::new(to_pattern(a)?), Box::new(to_pattern(b)?)))
    };
    Ok(match e {
        Expr::Sin(arg) => {
            if arg.contains_sin() {
                return Err(AlgebraError::Unsupported(format!(
                    "nested sin in {}",
                    e.source()
                )));
            }
            SinPattern::Sin(to_ratfunc(arg)?)
        }
        Expr::Add(a, b) => {
            let (a, b) = pair(a, b)?;
            SinPattern::Add(a, b)
        }
        Expr::Sub(a, b) => {
            let (a, b) = pair(a, b)?;
            SinPattern::Sub(a, b)
        }
        Expr::Mul(a, b) => {
            let (a, b) = pair(a, b)?;
            SinPattern::Mul(a, b)
        }
        Expr::Div(a, b) => {
            let (a, b) = pair(a, b)?;
            SinPattern::Div(a, b)
        }
        Expr::Pow(a, n) => {
            let base = to_pattern(a)?;
            if *n == 0 {
                return Ok(SinPattern::Rational(RatFunc::from_poly(Poly::constant(
                    crate::numeric::Rat::one(),
                ))));
            }
            let mut acc = base.clone();
            for _ in 1..*n {
                acc = SinPattern::Mul(Box::new(acc), Box::new(base.clone()));
            }
            acc
        }
        Expr::Var | Expr::Const(_) => unreachable!("sin-free leaves handled above"),
    })
}
