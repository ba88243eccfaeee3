use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Center, DeltaExpr};
use crate::algebra::{Expr, Poly, RatFunc};
use crate::numeric::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// One root threshold per nonzero Taylor coefficient.
    #[serde(rename = "i")]
    I,
    /// `min{1, eps/B}` with `B` the tail coefficient sum.
    #[serde(rename = "ii")]
    II,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::I => "i",
            Strategy::II => "ii",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "i" | "I" | "1" => Ok(Strategy::I),
            "ii" | "II" | "2" => Ok(Strategy::II),
            other => Err(format!("unknown strategy {other:?}, expected i or ii")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    Identity,
    Sum,
    Scalar { k: Rat },
    Product,
    Reciprocal,
    Squeeze { locality: Rat },
    Recenter { center: Center, limit: Rat },
    PolyDirect { strategy: Strategy },
    Positivity { r: Rat },
    RationalDirect,
    InfinityTransform,
    Derivative,
    Sin0,
    SinAt { c: Rat },
    ArgScale { a: Rat },
    GeneralSum,
    GeneralScalar { k: Rat },
    GeneralDifference,
    GeneralProduct,
    GeneralQuotient,
}

/// Intermediate quantity recorded for proof rendering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Fact {
    Rat(Rat),
    Poly(Poly),
    RatFunc(RatFunc),
    Expr(Expr),
    Delta(DeltaExpr),
    Text(String),
}

/// One node per combinator or constructor call, children in call order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Derivation {
    #[serde(flatten)]
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, Fact>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Derivation>,
}

impl Derivation {
    pub fn new(rule: Rule) -> Derivation {
        Derivation {
            rule,
            facts: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    pub fn fact(mut self, key: &str, value: Fact) -> Derivation {
        self.facts.insert(key.to_string(), value);
        self
    }

    pub fn child(mut self, d: Derivation) -> Derivation {
        self.children.push(d);
        self
    }

    pub fn rat(&self, key: &str) -> Option<&Rat> {
        match self.facts.get(key) {
            Some(Fact::Rat(r)) => Some(r),
            _ => None,
        }
    }

    pub fn poly(&self, key: &str) -> Option<&Poly> {
        match self.facts.get(key) {
            Some(Fact::Poly(p)) => Some(p),
            _ => None,
        }
    }

    pub fn ratfunc(&self, key: &str) -> Option<&RatFunc> {
        match self.facts.get(key) {
            Some(Fact::RatFunc(f)) => Some(f),
            _ => None,
        }
    }

    pub fn expr(&self, key: &str) -> Option<&Expr> {
        match self.facts.get(key) {
            Some(Fact::Expr(e)) => Some(e),
            _ => None,
        }
    }

    pub fn delta(&self, key: &str) -> Option<&DeltaExpr> {
        match self.facts.get(key) {
            Some(Fact::Delta(d)) => Some(d),
            _ => None,
        }
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.facts.get(key) {
            Some(Fact::Text(s)) => Some(s),
            _ => None,
        }
    }

    /// Pre-order walk.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Derivation)) {
        visit(self);
        for c in &self.children {
            c.walk(visit);
        }
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    pub(super) fn collect_assumptions(&self, out: &mut Vec<String>) {
        self.walk(&mut |d| {
            if let Rule::Squeeze { locality } = &d.rule {
                let g = d.expr("g").map(|e| e.display_with("t")).unwrap_or_else(|| "g(t)".into());
                let line = format!(
                    "squeeze ordering f(t) <= {g} <= h(t) for 0 < |t| < {locality} was checked by sampling, not proven"
                );
                if !out.contains(&line) {
                    out.push(line);
                }
            }
        });
    }
}
