//! Parsers for the expression grammar and the threshold (`delta`) grammar.
//!
//! Expressions:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" nonneg-integer)?
//! atom   := "x" | rational | "sin" "(" expr ")" | "(" expr ")"
//! rational := integer ("/" positive-integer)?
//! ```
//!
//! A rational literal `p/q` is only recognised as the first factor of a term
//! and only when not followed by `^`; elsewhere `/` is division. Both readings
//! have the same value, the rule just keeps printing and parsing inverse.
//!
//! Thresholds:
//!
//! ```text
//! delta  := dfactor (("*" | "/") dfactor)*
//! dfactor := datom ("^" "(" "1" "/" integer ")")?
//! datom  := "eps" | rational | "min" "{" delta ("," delta)* "}" | "(" delta ")"
//! ```
//!
//! A product may mention at most one non-constant factor and may only divide
//! by constants.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::Expr;
use crate::numeric::Rat;
use crate::witness::DeltaExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unsupported function {name:?} at byte {offset}")]
    UnsupportedFunction { offset: usize, name: String },
    #[error("threshold constants must be positive, got {0}")]
    NonpositiveConstant(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer;

impl Lexer {
    fn tokens(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
        let bytes = src.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            if b.is_ascii_whitespace() {
                i += 1;
            } else if b.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            } else if b.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            } else if b"+-*/^(){},".contains(&b) {
                out.push((i, Tok::Sym(b as char)));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::Syntax {
                    offset: i,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            toks: Lexer::tokens(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(format!("expected {c:?}"))
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.pos < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        if let Some(Tok::Int(n)) = self.peek() {
            let n = n.clone();
            self.pos += 1;
            Some(n)
        } else {
            None
        }
    }

    /// `int "/" int` not followed by `^`, consumed as one literal.
    fn try_rational_literal(&mut self) -> Option<Rat> {
        let (Some(Tok::Int(p)), Some(Tok::Sym('/')), Some(Tok::Int(q))) =
            (self.peek(), self.peek_at(1), self.peek_at(2))
        else {
            return None;
        };
        if self.peek_at(3) == Some(&Tok::Sym('^')) || q == &BigInt::from(0) {
            return None;
        }
        let r = Rat::from_bigints(p.clone(), q.clone()).ok()?;
        self.pos += 3;
        Some(r)
    }

    // ---- expressions ----

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = Expr::add(acc, self.term()?);
            } else if self.eat_sym('-') {
                acc = Expr::sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.unary(true)?;
        loop {
            if self.eat_sym('*') {
                acc = Expr::mul(acc, self.unary(false)?);
            } else if self.eat_sym('/') {
                acc = Expr::div(acc, self.unary(false)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, leading: bool) -> Result<Expr, SyntaxError> {
        if self.eat_sym('-') {
            return Ok(match self.unary(leading)? {
                Expr::Const(c) => Expr::Const(-c),
                other => Expr::mul(Expr::int(-1), other),
            });
        }
        self.factor(leading)
    }

    fn factor(&mut self, leading: bool) -> Result<Expr, SyntaxError> {
        if leading {
            if let Some(r) = self.try_rational_literal() {
                return Ok(Expr::Const(r));
            }
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let Some(n) = self.int() else {
                return self.error("exponent must be a nonnegative integer");
            };
            let Ok(n) = u32::try_from(n) else {
                return self.error("exponent too large");
            };
            return Ok(Expr::pow(base, n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Const(Rat::from_bigint(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "x" => Ok(Expr::Var),
                    "sin" => {
                        self.expect_sym('(')?;
                        let arg = self.expr()?;
                        self.expect_sym(')')?;
                        Ok(Expr::sin(arg))
                    }
                    _ if self.peek() == Some(&Tok::Sym('(')) => {
                        Err(SyntaxError::UnsupportedFunction { offset, name })
                    }
                    _ => Err(SyntaxError::Syntax {
                        offset,
                        message: format!("unknown identifier {name:?}"),
                    }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(_) => self.error("expected an operand"),
            None => self.error("unexpected end of input"),
        }
    }

    // ---- thresholds ----

    fn delta(&mut self) -> Result<DeltaExpr, SyntaxError> {
        let start = self.offset();
        let mut scale = Rat::one();
        let mut core: Option<DeltaExpr> = None;
        let mut absorb = |d: DeltaExpr, divide: bool, p: &Parser| -> Result<(), SyntaxError> {
            match d {
                DeltaExpr::Const(c) => {
                    scale = if divide { &scale / &c } else { &scale * &c };
                    Ok(())
                }
                other if divide => p.error(format!("cannot divide by {}", other)),
                other if core.is_some() => {
                    p.error(format!("product of two non-constant thresholds near {}", other))
                }
                other => {
                    core = Some(other);
                    Ok(())
                }
            }
        };
        let first = self.dfactor()?;
        absorb(first, false, self)?;
        loop {
            if self.eat_sym('*') {
                let d = self.dfactor()?;
                absorb(d, false, self)?;
            } else if self.eat_sym('/') {
                let d = self.dfactor()?;
                absorb(d, true, self)?;
            } else if matches!(self.peek(), Some(Tok::Sym('+')) | Some(Tok::Sym('-'))) {
                return self.error("only products, quotients, roots and min are allowed in a threshold");
            } else {
                break;
            }
        }
        let _ = start;
        Ok(match core {
            None => DeltaExpr::Const(scale),
            Some(d) => DeltaExpr::scale(scale, d),
        })
    }

    fn dfactor(&mut self) -> Result<DeltaExpr, SyntaxError> {
        let base = self.datom()?;
        if self.eat_sym('^') {
            self.expect_sym('(')?;
            match self.int() {
                Some(one) if one == BigInt::from(1) => {}
                _ => return self.error("root exponent must have the form (1/j)"),
            }
            self.expect_sym('/')?;
            let Some(j) = self.int().and_then(|j| u32::try_from(j).ok()) else {
                return self.error("root index must be an integer");
            };
            if j < 2 {
                return self.error("root index must be at least 2");
            }
            self.expect_sym(')')?;
            return Ok(DeltaExpr::root(base, j));
        }
        Ok(base)
    }

    fn datom(&mut self) -> Result<DeltaExpr, SyntaxError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let r = match self.try_rational_literal() {
                    Some(r) => r,
                    None => Rat::from_bigint(self.int().expect("peeked")),
                };
                if !r.is_positive() {
                    return Err(SyntaxError::NonpositiveConstant(r));
                }
                Ok(DeltaExpr::Const(r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "eps" => Ok(DeltaExpr::Eps),
                    "min" => {
                        self.expect_sym('{')?;
                        let mut children = vec![self.delta()?];
                        while self.eat_sym(',') {
                            children.push(self.delta()?);
                        }
                        self.expect_sym('}')?;
                        Ok(DeltaExpr::min(children))
                    }
                    _ => Err(SyntaxError::Syntax {
                        offset,
                        message: format!("unknown identifier {name:?}"),
                    }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let d = self.delta()?;
                self.expect_sym(')')?;
                Ok(d)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                let d = self.datom()?;
                match d {
                    DeltaExpr::Const(c) => Err(SyntaxError::NonpositiveConstant(-c)),
                    _ => Err(SyntaxError::Syntax {
                        offset,
                        message: "negation is not allowed in a threshold".into(),
                    }),
                }
            }
            Some(_) => self.error("expected a threshold term"),
            None => self.error("unexpected end of input"),
        }
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.source())
    }
}

impl<'de> serde::Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Expr, D::Error> {
        let s = String::deserialize(d)?;
        parse_expression(&s).map_err(serde::de::Error::custom)
    }
}

/// Parse an expression in `x`.
pub fn parse_expression(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse a threshold formula in `eps`, e.g. `min{1, eps/6}`.
pub fn parse_delta(src: &str) -> Result<DeltaExpr, SyntaxError> {
    let mut p = Parser::new(src)?;
    let d = p.delta()?;
    p.finish()?;
    if let DeltaExpr::Const(c) = &d {
        if !c.is_positive() {
            return Err(SyntaxError::NonpositiveConstant(c.clone()));
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Expr {
        Expr::Var
    }

    #[test]
    fn polynomial_expression() {
        assert_eq!(
            parse_expression("x^2+3*x").unwrap(),
            Expr::add(Expr::pow(x(), 2), Expr::mul(Expr::int(3), x()))
        );
    }

    #[test]
    fn rational_expression() {
        let e = parse_expression("(x+1)/((x-1)*(x^2+1))").unwrap();
        let expected = Expr::div(
            Expr::add(x(), Expr::int(1)),
            Expr::mul(
                Expr::sub(x(), Expr::int(1)),
                Expr::add(Expr::pow(x(), 2), Expr::int(1)),
            ),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn negative_exponent_is_syntax_error() {
        match parse_expression("x^-1") {
            Err(SyntaxError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_errors() {
        assert!(matches!(
            parse_expression("cos(x)"),
            Err(SyntaxError::UnsupportedFunction { offset: 0, .. })
        ));
        assert!(matches!(parse_expression("x +"), Err(SyntaxError::Syntax { offset: 3, .. })));
        assert!(matches!(parse_expression("(x"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse_expression("x $ 2"), Err(SyntaxError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expression("y"), Err(SyntaxError::Syntax { .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expression("1 - x - x").unwrap();
        assert_eq!(e, Expr::sub(Expr::sub(Expr::int(1), x()), x()));
        let e = parse_expression("2*x^3").unwrap();
        assert_eq!(e, Expr::mul(Expr::int(2), Expr::pow(x(), 3)));
        let e = parse_expression("x/2/3").unwrap();
        assert_eq!(e, Expr::div(Expr::div(x(), Expr::int(2)), Expr::int(3)));
        // a leading literal p/q is one constant; with ^ it is a division
        assert_eq!(parse_expression("2/3*x").unwrap(), Expr::mul(Expr::Const(Rat::new(2, 3)), x()));
        assert_eq!(
            parse_expression("2/3^2").unwrap(),
            Expr::div(Expr::int(2), Expr::pow(Expr::int(3), 2))
        );
        assert_eq!(parse_expression("-1/4").unwrap(), Expr::Const(Rat::new(-1, 4)));
        assert_eq!(parse_expression("-x").unwrap(), Expr::mul(Expr::int(-1), x()));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            parse_delta("min{1, eps/6}").unwrap(),
            DeltaExpr::min(vec![
                DeltaExpr::Const(Rat::one()),
                DeltaExpr::scale(Rat::new(1, 6), DeltaExpr::Eps)
            ])
        );
        assert_eq!(
            parse_delta("min{3/8, 9*eps/14}").unwrap(),
            DeltaExpr::min(vec![
                DeltaExpr::Const(Rat::new(3, 8)),
                DeltaExpr::scale(Rat::new(9, 14), DeltaExpr::Eps)
            ])
        );
        assert_eq!(
            parse_delta("min{(eps/2)^(1/2), (eps/10)^(1/2)}").unwrap(),
            DeltaExpr::min(vec![
                DeltaExpr::root(DeltaExpr::scale(Rat::new(1, 2), DeltaExpr::Eps), 2),
                DeltaExpr::root(DeltaExpr::scale(Rat::new(1, 10), DeltaExpr::Eps), 2),
            ])
        );
    }

    #[test]
    fn delta_errors() {
        assert!(matches!(parse_delta("eps - 1"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse_delta("min{0, eps}"), Err(SyntaxError::NonpositiveConstant(_))));
        assert!(matches!(parse_delta("-2*eps"), Err(SyntaxError::NonpositiveConstant(_))));
        assert!(matches!(parse_delta("eps*eps"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse_delta("1/eps"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse_delta("(eps)^(1/1)"), Err(SyntaxError::Syntax { .. })));
        assert!(matches!(parse_delta("(eps)^(2/3)"), Err(SyntaxError::Syntax { .. })));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![Just(Expr::Var), arb_rat().prop_map(Expr::Const)];
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::div(a, b)),
                (inner.clone(), 0u32..4).prop_map(|(a, n)| Expr::pow(a, n)),
                inner.prop_map(Expr::sin),
            ]
        })
    }

    fn arb_delta() -> impl Strategy<Value = DeltaExpr> {
        let pos = (1i64..=20, 1i64..=9).prop_map(|(n, d)| Rat::new(n, d));
        let leaf = prop_oneof![Just(DeltaExpr::Eps), pos.clone().prop_map(DeltaExpr::Const)];
        leaf.prop_recursive(4, 24, 3, move |inner| {
            prop_oneof![
                (pos.clone(), inner.clone()).prop_map(|(q, d)| DeltaExpr::scale(q, d)),
                (inner.clone(), 2u32..5).prop_map(|(d, j)| DeltaExpr::root(d, j)),
                proptest::collection::vec(inner, 2..4).prop_map(DeltaExpr::min),
            ]
        })
    }

    proptest! {
        #[test]
        fn expression_print_parse_identity(e in arb_expr()) {
            let printed = e.source();
            let back = parse_expression(&printed).unwrap();
            prop_assert_eq!(back, e, "printed as {}", printed);
        }

        #[test]
        fn delta_print_parse_identity(d in arb_delta()) {
            let printed = d.to_string();
            let back = parse_delta(&printed).unwrap();
            prop_assert_eq!(back, d, "printed as {}", printed);
        }
    }
}
