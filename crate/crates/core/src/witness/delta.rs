use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numeric::{positive_root_lower_bound, Rat};

/// Symbolic threshold `eps -> delta(eps)`.
///
/// Built only from positive constants, `eps`, positive scalings, `j`-th roots
/// with `j >= 2` and `min`, so every value is positive and nondecreasing in
/// `eps`. Use the smart constructors; they keep the tree in the normal form
/// the printer and parser agree on.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DeltaNode", into = "DeltaNode")]
pub enum DeltaExpr {
    Const(Rat),
    Eps,
    Scale(Rat, Box<DeltaExpr>),
    Root(Box<DeltaExpr>, u32),
    Min(Vec<DeltaExpr>),
}

impl DeltaExpr {
    pub fn constant(c: Rat) -> DeltaExpr {
        assert!(c.is_positive(), "threshold constant must be positive");
        DeltaExpr::Const(c)
    }

    pub fn eps() -> DeltaExpr {
        DeltaExpr::Eps
    }

    /// `q * d` for `q > 0`; scalings merge and fold into constants.
    pub fn scale(q: Rat, d: DeltaExpr) -> DeltaExpr {
        assert!(q.is_positive(), "threshold scale must be positive");
        if q.is_one() {
            return d;
        }
        match d {
            DeltaExpr::Const(c) => DeltaExpr::Const(q * c),
            DeltaExpr::Scale(r, inner) => DeltaExpr::scale(q * r, *inner),
            other => DeltaExpr::Scale(q, Box::new(other)),
        }
    }

    /// `d^(1/j)` for `j >= 2`.
    pub fn root(d: DeltaExpr, j: u32) -> DeltaExpr {
        assert!(j >= 2, "root index must be at least 2");
        DeltaExpr::Root(Box::new(d), j)
    }

    /// `min` of the children; nested mins are flattened and constant children
    /// folded into the first constant position.
    pub fn min(children: Vec<DeltaExpr>) -> DeltaExpr {
        let mut flat: Vec<DeltaExpr> = Vec::new();
        let mut const_slot: Option<usize> = None;
        let mut push = |d: DeltaExpr, flat: &mut Vec<DeltaExpr>| match d {
            DeltaExpr::Const(c) => match const_slot {
                Some(i) => {
                    if let DeltaExpr::Const(old) = &flat[i] {
                        if c < *old {
                            flat[i] = DeltaExpr::Const(c);
                        }
                    }
                }
                None => {
                    const_slot = Some(flat.len());
                    flat.push(DeltaExpr::Const(c));
                }
            },
            other => flat.push(other),
        };
        for child in children {
            match child {
                DeltaExpr::Min(grand) => {
                    for g in grand {
                        push(g, &mut flat);
                    }
                }
                other => push(other, &mut flat),
            }
        }
        assert!(!flat.is_empty(), "min of no thresholds");
        if flat.len() == 1 {
            flat.pop().expect("one child")
        } else {
            DeltaExpr::Min(flat)
        }
    }

    /// Replace every `eps` leaf by `replacement`.
    pub fn subst_eps(&self, replacement: &DeltaExpr) -> DeltaExpr {
        match self {
            DeltaExpr::Const(c) => DeltaExpr::Const(c.clone()),
            DeltaExpr::Eps => replacement.clone(),
            DeltaExpr::Scale(q, d) => DeltaExpr::scale(q.clone(), d.subst_eps(replacement)),
            DeltaExpr::Root(d, j) => DeltaExpr::root(d.subst_eps(replacement), *j),
            DeltaExpr::Min(ds) => DeltaExpr::min(ds.iter().map(|d| d.subst_eps(replacement)).collect()),
        }
    }

    /// `delta(q * eps)`.
    pub fn at_scaled_eps(&self, q: Rat) -> DeltaExpr {
        self.subst_eps(&DeltaExpr::scale(q, DeltaExpr::Eps))
    }

    pub fn mentions_eps(&self) -> bool {
        match self {
            DeltaExpr::Const(_) => false,
            DeltaExpr::Eps => true,
            DeltaExpr::Scale(_, d) | DeltaExpr::Root(d, _) => d.mentions_eps(),
            DeltaExpr::Min(ds) => ds.iter().any(DeltaExpr::mentions_eps),
        }
    }

    /// Positive rational lower bound of `delta(eps)`; roots are rounded down
    /// at `bits` of precision (raised only as far as needed to stay positive).
    pub fn eval(&self, eps: &Rat, bits: u32) -> Rat {
        match self {
            DeltaExpr::Const(c) => c.clone(),
            DeltaExpr::Eps => eps.clone(),
            DeltaExpr::Scale(q, d) => q * d.eval(eps, bits),
            DeltaExpr::Root(d, j) => positive_root_lower_bound(&d.eval(eps, bits), *j, bits),
            DeltaExpr::Min(ds) => ds
                .iter()
                .map(|d| d.eval(eps, bits))
                .min()
                .expect("min has children"),
        }
    }

    pub fn latex(&self) -> String {
        let mut out = String::new();
        write_latex(&mut out, self);
        out
    }
}

fn write_scale_text(f: &mut fmt::Formatter<'_>, q: &Rat, d: &DeltaExpr) -> fmt::Result {
    if q.numer() == &1.into() {
        write!(f, "{d}/{}", q.denom())
    } else if q.is_integer() {
        write!(f, "{q}*{d}")
    } else {
        write!(f, "({q})*{d}")
    }
}

impl fmt::Display for DeltaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaExpr::Const(c) => write!(f, "{c}"),
            DeltaExpr::Eps => f.write_str("eps"),
            DeltaExpr::Scale(q, d) => write_scale_text(f, q, d),
            DeltaExpr::Root(d, j) => write!(f, "({d})^(1/{j})"),
            DeltaExpr::Min(ds) => {
                f.write_str("min{")?;
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{d}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for DeltaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Delta({self})")
    }
}

fn latex_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn write_latex(out: &mut String, d: &DeltaExpr) {
    match d {
        DeltaExpr::Const(c) => out.push_str(&latex_rat(c)),
        DeltaExpr::Eps => out.push_str("\\varepsilon"),
        DeltaExpr::Scale(q, inner) => {
            let mut body = String::new();
            write_latex(&mut body, inner);
            let body = match **inner {
                DeltaExpr::Eps | DeltaExpr::Min(_) => body,
                _ => format!("\\left({body}\\right)"),
            };
            if q.is_integer() {
                out.push_str(&format!("{q}{body}"));
            } else if q.numer() == &1.into() {
                out.push_str(&format!("\\frac{{{body}}}{{{}}}", q.denom()));
            } else {
                out.push_str(&format!("\\frac{{{}{body}}}{{{}}}", q.numer(), q.denom()));
            }
        }
        DeltaExpr::Root(inner, j) => {
            let mut body = String::new();
            write_latex(&mut body, inner);
            out.push_str(&format!("\\left({body}\\right)^{{1/{j}}}"));
        }
        DeltaExpr::Min(ds) => {
            out.push_str("\\min\\left\\{");
            for (i, c) in ds.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_latex(out, c);
            }
            out.push_str("\\right\\}");
        }
    }
}

/// Serialized form with explicit node tags.
#[derive(Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
enum DeltaNode {
    Const { value: Rat },
    Eps,
    Scale { factor: Rat, child: Box<DeltaNode> },
    Root { index: u32, child: Box<DeltaNode> },
    Min { children: Vec<DeltaNode> },
}

impl From<DeltaExpr> for DeltaNode {
    fn from(d: DeltaExpr) -> DeltaNode {
        match d {
            DeltaExpr::Const(value) => DeltaNode::Const { value },
            DeltaExpr::Eps => DeltaNode::Eps,
            DeltaExpr::Scale(factor, child) => DeltaNode::Scale {
                factor,
                child: Box::new((*child).into()),
            },
            DeltaExpr::Root(child, index) => DeltaNode::Root {
                index,
                child: Box::new((*child).into()),
            },
            DeltaExpr::Min(children) => DeltaNode::Min {
                children: children.into_iter().map(Into::into).collect(),
            },
        }
    }
}

impl TryFrom<DeltaNode> for DeltaExpr {
    type Error = String;

    fn try_from(n: DeltaNode) -> Result<DeltaExpr, String> {
        Ok(match n {
            DeltaNode::Const { value } if value.is_positive() => DeltaExpr::Const(value),
            DeltaNode::Const { value } => return Err(format!("nonpositive threshold constant {value}")),
            DeltaNode::Eps => DeltaExpr::Eps,
            DeltaNode::Scale { factor, child } if factor.is_positive() => {
                DeltaExpr::Scale(factor, Box::new((*child).try_into()?))
            }
            DeltaNode::Scale { factor, .. } => return Err(format!("nonpositive threshold scale {factor}")),
            DeltaNode::Root { index, child } if index >= 2 => {
                DeltaExpr::Root(Box::new((*child).try_into()?), index)
            }
            DeltaNode::Root { index, .. } => return Err(format!("root index {index} below 2")),
            DeltaNode::Min { children } if children.len() >= 2 => DeltaExpr::Min(
                children
                    .into_iter()
                    .map(DeltaExpr::try_from)
                    .collect::<Result<_, _>>()?,
            ),
            DeltaNode::Min { .. } => return Err("min needs at least two children".into()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sixth() -> DeltaExpr {
        DeltaExpr::min(vec![
            DeltaExpr::Const(Rat::one()),
            DeltaExpr::scale(Rat::new(1, 6), DeltaExpr::Eps),
        ])
    }

    #[test]
    fn printing() {
        assert_eq!(sixth().to_string(), "min{1, eps/6}");
        let r = DeltaExpr::root(DeltaExpr::scale(Rat::new(1, 2), DeltaExpr::Eps), 2);
        assert_eq!(r.to_string(), "(eps/2)^(1/2)");
        assert_eq!(DeltaExpr::scale(Rat::new(9, 14), DeltaExpr::Eps).to_string(), "(9/14)*eps");
        assert_eq!(DeltaExpr::scale(Rat::integer(2), sixth()).to_string(), "2*min{1, eps/6}");
    }

    #[test]
    fn smart_constructors() {
        assert_eq!(DeltaExpr::scale(Rat::one(), DeltaExpr::Eps), DeltaExpr::Eps);
        assert_eq!(
            DeltaExpr::scale(Rat::new(1, 2), DeltaExpr::Const(Rat::new(1, 3))),
            DeltaExpr::Const(Rat::new(1, 6))
        );
        assert_eq!(
            DeltaExpr::min(vec![DeltaExpr::Const(Rat::integer(2)), DeltaExpr::Const(Rat::new(1, 2))]),
            DeltaExpr::Const(Rat::new(1, 2))
        );
    }

    #[test]
    fn halved_substitution() {
        // min{1, eps/6} and eps, both at eps/2
        let d = DeltaExpr::min(vec![
            sixth().at_scaled_eps(Rat::new(1, 2)),
            DeltaExpr::Eps.at_scaled_eps(Rat::new(1, 2)),
        ]);
        assert_eq!(d.to_string(), "min{1, eps/12, eps/2}");
    }

    #[test]
    fn evaluation_is_a_lower_bound() {
        let d = DeltaExpr::root(DeltaExpr::Eps, 2);
        assert_eq!(d.eval(&Rat::new(1, 4), 64), Rat::new(1, 2));
        let low = d.eval(&Rat::new(1, 10), 16);
        let high = d.eval(&Rat::new(1, 10), 64);
        assert!(low <= high);
        assert!(high.pow(2) <= Rat::new(1, 10));
    }

    #[test]
    fn monotone_on_grid() {
        let d = DeltaExpr::min(vec![
            DeltaExpr::Const(Rat::new(1, 2)),
            DeltaExpr::root(DeltaExpr::scale(Rat::new(1, 3), DeltaExpr::Eps), 3),
            DeltaExpr::scale(Rat::integer(4), DeltaExpr::Eps),
        ]);
        let grid: Vec<Rat> = (-6..=2).map(|k| if k < 0 { Rat::new(1, 10i64.pow(-k as u32)) } else { Rat::integer(10i64.pow(k as u32)) }).collect();
        let values: Vec<Rat> = grid.iter().map(|e| d.eval(e, 64)).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        assert!(values.iter().all(Rat::is_positive));
    }

    #[test]
    fn serde_tags() {
        let json = serde_json::to_value(sixth()).unwrap();
        assert_eq!(json["node"], "min");
        assert_eq!(json["children"][0]["node"], "const");
        assert_eq!(json["children"][1]["node"], "scale");
        assert_eq!(json["children"][1]["factor"], "1/6");
        let back: DeltaExpr = serde_json::from_value(json).unwrap();
        assert_eq!(back, sixth());
        let bad = serde_json::json!({"node": "const", "value": "-1"});
        assert!(serde_json::from_value::<DeltaExpr>(bad).is_err());
    }
}
