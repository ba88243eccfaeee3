use super::build::{
    w_arg_scale, w_general_difference, w_general_product, w_general_quotient, w_general_sum,
    w_infinity_expr, w_poly_expr, w_poly_tail, w_ratfunc_expr, w_recenter, w_sin0, w_sin_at,
};
use super::{Center, Witness, WitnessError};
use crate::algebra::{lower_expr, to_ratfunc, Expr, Lowered, Poly, RatFunc};
use crate::numeric::Rat;
use crate::witness::Strategy;

/// The limit a claim states, or a request to compute it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitSpec {
    Auto,
    Value(Rat),
}

impl std::str::FromStr for LimitSpec {
    type Err = crate::numeric::NumericError;
    fn from_str(s: &str) -> Result<LimitSpec, Self::Err> {
        match s.trim() {
            "auto" => Ok(LimitSpec::Auto),
            other => Ok(LimitSpec::Value(other.parse()?)),
        }
    }
}

fn check_limit(w: Witness, limit: &LimitSpec) -> Result<Witness, WitnessError> {
    match limit {
        LimitSpec::Value(stated) if *stated != w.claim.limit => Err(WitnessError::LimitMismatch {
            stated: stated.clone(),
            computed: w.claim.limit.clone(),
        }),
        _ => Ok(w),
    }
}

/// Build a witness for `lim e` at `center`, dispatching on the shape of `e`.
///
/// Polynomials use the direct Taylor recipe, rational functions the
/// positivity-guarded recipe (through `x = 1/t` at infinity), and expressions
/// with `sin` are assembled from the general combinators over the expression
/// tree.
pub fn w_auto(e: &Expr, center: &Center, limit: &LimitSpec, strategy: Strategy) -> Result<Witness, WitnessError> {
    let lowered = lower_expr(e)?;
    let w = match (lowered, center) {
        (Lowered::Poly(p), Center::Finite(c)) => w_poly_expr(e, &p, c, strategy),
        (Lowered::Poly(p), Center::Infinity) => w_infinity_expr(e, &RatFunc::from_poly(p))?,
        (Lowered::RatFunc(f), Center::Finite(c)) => w_ratfunc_expr(e, f.numer(), f.denom(), c)?,
        (Lowered::RatFunc(f), Center::Infinity) => w_infinity_expr(e, &f)?,
        (Lowered::SinPattern(_), Center::Infinity) => {
            return Err(WitnessError::Unsupported("sin at infinity has no limit witness".into()))
        }
        (Lowered::SinPattern(_), Center::Finite(c)) => {
            if *e == Expr::sin(Expr::Var) && !c.is_zero() {
                return match limit {
                    LimitSpec::Auto => Ok(w_sin_at(c)),
                    LimitSpec::Value(_) => Err(WitnessError::IrrationalLimit(format!("sin({c})"))),
                };
            }
            sin_tree(e, c, strategy)?
        }
    };
    check_limit(w, limit)
}

/// Witness for a `sin`-containing expression whose limit at `c` is rational.
fn sin_tree(e: &Expr, c: &Rat, strategy: Strategy) -> Result<Witness, WitnessError> {
    if !e.contains_sin() {
        return rational_leaf(e, c, strategy);
    }
    match e {
        Expr::Sin(u) => sin_leaf(e, u, c),
        Expr::Add(a, b) => w_general_sum(&sin_tree(a, c, strategy)?, &sin_tree(b, c, strategy)?),
        Expr::Sub(a, b) => w_general_difference(&sin_tree(a, c, strategy)?, &sin_tree(b, c, strategy)?),
        Expr::Mul(a, b) => w_general_product(&sin_tree(a, c, strategy)?, &sin_tree(b, c, strategy)?),
        Expr::Div(a, b) => w_general_quotient(&sin_tree(a, c, strategy)?, &sin_tree(b, c, strategy)?),
        Expr::Pow(a, n) => {
            if *n == 0 {
                return constant_leaf(e, c, &Rat::one());
            }
            let base = sin_tree(a, c, strategy)?;
            let mut acc = base.clone();
            for _ in 1..*n {
                acc = w_general_product(&acc, &base)?;
            }
            // the product chain denotes a^n exactly
            acc.claim.function = e.clone();
            Ok(acc)
        }
        Expr::Var | Expr::Const(_) => unreachable!("sin-free leaves handled above"),
    }
}

fn rational_leaf(e: &Expr, c: &Rat, strategy: Strategy) -> Result<Witness, WitnessError> {
    let f = to_ratfunc(e)?;
    match f.as_poly() {
        Some(p) => Ok(w_poly_expr(e, &p, c, strategy)),
        None => w_ratfunc_expr(e, f.numer(), f.denom(), c),
    }
}

fn constant_leaf(e: &Expr, c: &Rat, value: &Rat) -> Result<Witness, WitnessError> {
    w_recenter(&w_poly_tail(&Poly::zero(), Strategy::II), Center::Finite(c.clone()), value, e)
}

/// `sin(u)` with `u` affine and `u(c) = 0`, so `sin(u(c + t)) = sin(a t)`.
fn sin_leaf(e: &Expr, u: &Expr, c: &Rat) -> Result<Witness, WitnessError> {
    if u.contains_sin() {
        return Err(WitnessError::Unsupported(format!("nested sin in {}", e.source())));
    }
    let ru = to_ratfunc(u)?;
    let at_c = ru.eval(c).map_err(|_| WitnessError::ZeroAtCenter(c.clone()))?;
    if !at_c.is_zero() {
        return Err(WitnessError::IrrationalLimit(format!("sin({at_c})")));
    }
    let Some(p) = ru.as_poly().filter(|p| p.degree().unwrap_or(0) <= 1) else {
        return Err(WitnessError::Unsupported(format!(
            "sin of a non-affine argument in {}",
            e.source()
        )));
    };
    let a = p.coeff(1);
    if a.is_zero() {
        return constant_leaf(e, c, &Rat::zero());
    }
    let scaled = w_arg_scale(&a, &w_sin0())?;
    w_recenter(&scaled, Center::Finite(c.clone()), &Rat::zero(), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expression;

    fn auto(src: &str, center: Center, limit: LimitSpec) -> Result<Witness, WitnessError> {
        w_auto(&parse_expression(src).unwrap(), &center, &limit, Strategy::II)
    }

    #[test]
    fn worked_polynomial() {
        let w = auto("x^2+3*x", Center::Finite(Rat::one()), LimitSpec::Auto).unwrap();
        assert_eq!(w.claim.limit, Rat::integer(4));
        assert_eq!(w.delta.to_string(), "min{1, eps/6}");
    }

    #[test]
    fn identity_limit_is_centre() {
        let c = Rat::new(-7, 4);
        let w = auto("x", Center::Finite(c.clone()), LimitSpec::Auto).unwrap();
        assert_eq!(w.claim.limit, c);
    }

    #[test]
    fn infinity_limit() {
        let w = auto("(2*x+1)/(3*x-4)", Center::Infinity, LimitSpec::Auto).unwrap();
        assert_eq!(w.claim.limit, Rat::new(2, 3));
    }

    #[test]
    fn wrong_limit_rejected() {
        let err = auto("x^2+3*x", Center::Finite(Rat::one()), LimitSpec::Value(Rat::integer(5)));
        assert!(matches!(err, Err(WitnessError::LimitMismatch { .. })));
        let pole = auto("1/(x-1)", Center::Finite(Rat::one()), LimitSpec::Auto);
        assert!(matches!(pole, Err(WitnessError::ZeroAtCenter(_))));
    }

    #[test]
    fn sin_patterns() {
        let w = auto("sin(x)", Center::Finite(Rat::one()), LimitSpec::Auto).unwrap();
        assert!(matches!(w.derivation.rule, crate::witness::Rule::SinAt { .. }));
        let w = auto("x*sin(2*x-2) + 3", Center::Finite(Rat::one()), LimitSpec::Auto).unwrap();
        assert_eq!(w.claim.limit, Rat::integer(3));
        let w = auto("sin(x)^2/(1+x)", Center::zero(), LimitSpec::Auto).unwrap();
        assert_eq!(w.claim.limit, Rat::zero());
        assert!(matches!(
            auto("sin(x)+x", Center::Finite(Rat::one()), LimitSpec::Auto),
            Err(WitnessError::IrrationalLimit(_))
        ));
        assert!(matches!(
            auto("sin(x^2)", Center::zero(), LimitSpec::Auto),
            Err(WitnessError::Unsupported(_))
        ));
        assert!(matches!(
            auto("sin(sin(x))", Center::zero(), LimitSpec::Auto),
            Err(WitnessError::Algebra(_))
        ));
        let w = auto("sin(0*x)+1", Center::zero(), LimitSpec::Auto).unwrap();
        assert_eq!(w.claim.limit, Rat::one());
        assert!(w.delta.eval(&Rat::one(), 64).is_positive());
    }
}
