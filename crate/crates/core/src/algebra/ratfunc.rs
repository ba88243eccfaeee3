use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Expr, Poly};
use crate::numeric::Rat;

/// Quotient of two polynomials, stored exactly as constructed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatFuncRepr", into = "RatFuncRepr")]
pub struct RatFunc {
    numer: Poly,
    denom: Poly,
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    numer: Poly,
    denom: Poly,
}

impl TryFrom<RatFuncRepr> for RatFunc {
    type Error = AlgebraError;
    fn try_from(r: RatFuncRepr) -> Result<RatFunc, AlgebraError> {
        RatFunc::new(r.numer, r.denom)
    }
}

impl From<RatFunc> for RatFuncRepr {
    fn from(f: RatFunc) -> RatFuncRepr {
        RatFuncRepr {
            numer: f.numer,
            denom: f.denom,
        }
    }
}

impl RatFunc {
    pub fn new(numer: Poly, denom: Poly) -> Result<RatFunc, AlgebraError> {
        if denom.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RatFunc { numer, denom })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            numer: p,
            denom: Poly::constant(Rat::one()),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    /// The polynomial this quotient reduces to when the denominator is constant.
    pub fn as_poly(&self) -> Option<Poly> {
        let d = self.denom.as_constant()?;
        Some(self.numer.scale(&d.recip().ok()?))
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, AlgebraError> {
        let d = self.denom.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero(x.clone()));
        }
        Ok(self.numer.eval(x) / d)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.denom == other.denom {
            return RatFunc {
                numer: self.numer.add(&other.numer),
                denom: self.denom.clone(),
            };
        }
        RatFunc {
            numer: self.numer.mul(&other.denom).add(&other.numer.mul(&self.denom)),
            denom: self.denom.mul(&other.denom),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            numer: self.numer.neg(),
            denom: self.denom.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc {
            numer: self.numer.mul(&other.numer),
            denom: self.denom.mul(&other.denom),
        }
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        if other.numer.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RatFunc {
            numer: self.numer.mul(&other.denom),
            denom: self.denom.mul(&other.numer),
        })
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        RatFunc {
            numer: self.numer.pow(n),
            denom: self.denom.pow(n),
        }
    }

    /// `f(c + t) - limit` as a quotient in `t`.
    ///
    /// Numerator and denominator are Taylor-shifted separately; the
    /// denominator of `limit` is cleared into both, so for `limit = a/b` the
    /// result is `(b p(c+t) - a q(c+t)) / (b q(c+t))`.
    pub fn centered_difference(&self, c: &Rat, limit: &Rat) -> Result<RatFunc, AlgebraError> {
        if self.denom.eval(c).is_zero() {
            return Err(AlgebraError::DivisionByZero(c.clone()));
        }
        let p = self.numer.taylor_shift(c);
        let q = self.denom.taylor_shift(c);
        let a = Rat::from_bigint(limit.numer().clone());
        let b = Rat::from_bigint(limit.denom().clone());
        Ok(RatFunc {
            numer: p.scale(&b).sub(&q.scale(&a)),
            denom: q.scale(&b),
        })
    }

    /// `f(1/t)` with the common power of `t` cleared from both polynomials.
    pub fn infinity_substitute(&self) -> RatFunc {
        let n = self.numer.coeffs().len().max(self.denom.coeffs().len());
        RatFunc {
            numer: self.numer.reversed_to(n),
            denom: self.denom.reversed_to(n),
        }
    }

    pub fn to_expr(&self) -> Expr {
        let num = poly_to_expr(&self.numer);
        match self.denom.as_constant() {
            Some(d) if d.is_one() => num,
            _ => Expr::div(num, poly_to_expr(&self.denom)),
        }
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> RatFuncDisplay<'a> {
        RatFuncDisplay { f: self, var }
    }
}

/// Ascending-power sum `a_0 + a_1*x + ...` without zero terms.
pub fn poly_to_expr(p: &Poly) -> Expr {
    let mut terms: Vec<(bool, Expr)> = Vec::new();
    for (k, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mono = match k {
            0 => None,
            1 => Some(Expr::Var),
            _ => Some(Expr::pow(Expr::Var, k as u32)),
        };
        let mag = a.abs();
        let term = match mono {
            None => Expr::Const(mag),
            Some(m) if mag.is_one() => m,
            Some(m) => Expr::mul(Expr::Const(mag), m),
        };
        terms.push((a.is_negative(), term));
    }
    let mut iter = terms.into_iter();
    let Some((neg, first)) = iter.next() else {
        return Expr::int(0);
    };
    let mut acc = if neg {
        match first {
            Expr::Const(c) => Expr::Const(-c),
            other => Expr::mul(Expr::int(-1), other),
        }
    } else {
        first
    };
    for (neg, term) in iter {
        acc = if neg { Expr::sub(acc, term) } else { Expr::add(acc, term) };
    }
    acc
}

pub struct RatFuncDisplay<'a> {
    f: &'a RatFunc,
    var: &'a str,
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.numer.display_in(self.var).to_string();
        if self.f.denom.as_constant().is_some_and(|d| d.is_one()) {
            return f.write_str(&num);
        }
        let den = self.f.denom.display_in(self.var).to_string();
        let wrap = |s: String, p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{} / {}", wrap(num, &self.f.numer), wrap(den, &self.f.denom))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.display_in("x"))
    }
}
