//! Limit claims paired with symbolic thresholds and the derivation that
//! justifies them.
//!
//! Every witness carries the guarantee: for each `eps > 0` and each admissible
//! `t` with `0 < |t| < delta(eps)` the recentred error `|g(t)|` is below
//! `eps`, where `g(t) = f(c + t) - L` for a finite centre and
//! `g(t) = f(1/t) - L` (with `t > 0`) at infinity.

mod auto;
mod build;
mod delta;
mod derivation;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, EvalError, Expr, Value};
use crate::numeric::Rat;

pub use auto::{w_auto, LimitSpec};
pub use build::*;
pub use delta::DeltaExpr;
pub use derivation::{Derivation, Fact, Rule, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Center {
    Finite(Rat),
    Infinity,
}

impl Center {
    pub fn zero() -> Center {
        Center::Finite(Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Center::Finite(c) if c.is_zero())
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Finite(c) => write!(f, "{c}"),
            Center::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Center {
    type Err = crate::numeric::NumericError;

    fn from_str(s: &str) -> Result<Center, Self::Err> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(Center::Infinity),
            other => Ok(Center::Finite(other.parse()?)),
        }
    }
}

impl Serialize for Center {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Center {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Center, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    TwoSided,
    RightOnly,
}

/// `lim f = limit` as `x` approaches `center` (from the right when `RightOnly`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Claim {
    pub function: Expr,
    pub center: Center,
    pub limit: Rat,
    pub side: Side,
}

impl Claim {
    pub fn new(function: Expr, center: Center, limit: Rat, side: Side) -> Claim {
        let side = if center == Center::Infinity { Side::RightOnly } else { side };
        Claim {
            function,
            center,
            limit,
            side,
        }
    }

    /// `f -> 0` as `t -> 0`.
    pub fn centered(function: Expr, side: Side) -> Claim {
        Claim::new(function, Center::zero(), Rat::zero(), side)
    }

    pub fn is_centered(&self) -> bool {
        self.center.is_zero() && self.limit.is_zero()
    }

    /// The point `x` at which `f` is evaluated for offset `t`.
    pub fn point(&self, t: &Rat) -> Result<Rat, EvalError> {
        match &self.center {
            Center::Finite(c) => Ok(c + t),
            Center::Infinity => t.recip().map_err(|_| EvalError::Pole),
        }
    }

    /// `|f(point(t)) - L|`, exact or enclosed.
    pub fn error_at(&self, t: &Rat, sin_degree: u32) -> Result<Value, EvalError> {
        let x = self.point(t)?;
        Ok(self.function.eval(&x, sin_degree)?.distance_to(&self.limit))
    }

    /// Whether `t` lies in the punctured neighbourhood `0 < |t| < delta`.
    pub fn admissible(&self, t: &Rat, delta: &Rat) -> bool {
        !t.is_zero()
            && &t.abs() < delta
            && (self.side == Side::TwoSided || t.is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub claim: Claim,
    pub delta: DeltaExpr,
    pub derivation: Derivation,
}

impl Witness {
    pub fn new(claim: Claim, delta: DeltaExpr, derivation: Derivation) -> Witness {
        Witness {
            claim,
            delta,
            derivation,
        }
    }

    /// Hypotheses the guarantee is conditional on (sampled, not proven).
    pub fn assumptions(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.derivation.collect_assumptions(&mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("mismatched claims: {0}")]
    MismatchedClaims(String),
    #[error("wrong claim shape: {0}")]
    WrongClaimShape(String),
    #[error("ordering hypothesis violated at t = {t}: {detail}")]
    OrderingViolation { t: Rat, detail: String },
    #[error("recentred function disagrees with the child witness at t = {t}")]
    SamplingMismatch { t: Rat },
    #[error("denominator vanishes at the centre {0}")]
    ZeroAtCenter(Rat),
    #[error("no finite limit at infinity: {0}")]
    NoFiniteLimit(String),
    #[error("stated limit {stated} differs from the computed limit {computed}")]
    LimitMismatch { stated: Rat, computed: Rat },
    #[error("limit of the denominator is zero")]
    ZeroLimitDenominator,
    #[error("limit is not rational: {0}")]
    IrrationalLimit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl WitnessError {
    /// Errors that say the claim itself is mathematically impossible or
    /// ill-posed, as opposed to outside the supported fragment.
    pub fn is_precondition_failure(&self) -> bool {
        !matches!(self, WitnessError::Unsupported(_) | WitnessError::Algebra(AlgebraError::Unsupported(_)))
    }
}
