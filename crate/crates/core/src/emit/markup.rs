//! Format-neutral proof lines: prose interleaved with formulas that carry
//! both an ASCII and a LaTeX rendering.

use super::ProofFormat;
use crate::algebra::{Expr, Poly, RatFunc};
use crate::numeric::Rat;
use crate::witness::DeltaExpr;

/// A formula in both renderings.
#[derive(Debug, Clone, Default)]
pub(super) struct F {
    text: String,
    latex: String,
}

impl F {
    pub fn new() -> F {
        F::default()
    }

    /// Literal ASCII math, translated to LaTeX token by token.
    pub fn s(mut self, ascii: &str) -> F {
        self.text.push_str(ascii);
        self.latex.push_str(&ascii_to_latex(ascii));
        self
    }

    /// Literal text with a hand-written LaTeX counterpart.
    pub fn raw(mut self, text: &str, latex: &str) -> F {
        self.text.push_str(text);
        self.latex.push_str(latex);
        self
    }

    pub fn f(mut self, other: F) -> F {
        self.text.push_str(&other.text);
        self.latex.push_str(&other.latex);
        self
    }

    pub fn rat(self, r: &Rat) -> F {
        self.f(rat(r))
    }

    /// `r`, parenthesised when it is a fraction or negative.
    pub fn ratp(self, r: &Rat) -> F {
        if r.is_integer() && !r.is_negative() {
            self.rat(r)
        } else {
            self.raw("(", "\\left(").rat(r).raw(")", "\\right)")
        }
    }

    pub fn delta(self, d: &DeltaExpr) -> F {
        self.f(delta(d))
    }

    pub fn poly(self, p: &Poly, var: &str) -> F {
        self.f(poly(p, var))
    }

    pub fn ratfunc(self, r: &RatFunc, var: &str) -> F {
        self.f(ratfunc(r, var))
    }

    pub fn expr(self, e: &Expr, var: &str) -> F {
        self.f(expr(e, var))
    }

    /// `e` without operand parentheses, for a standalone side of an equation.
    pub fn bare(mut self, e: &Expr, var: &str) -> F {
        self.text.push_str(&e.display_with(var));
        self.latex.push_str(&e.latex_with(var));
        self
    }
}

pub(super) fn rat(r: &Rat) -> F {
    F {
        text: r.to_string(),
        latex: rat_latex(r),
    }
}

pub(super) fn delta(d: &DeltaExpr) -> F {
    F {
        text: d.to_string(),
        latex: d.latex(),
    }
}

pub(super) fn poly(p: &Poly, var: &str) -> F {
    F {
        text: p.display_in(var).to_string(),
        latex: poly_latex(p, var),
    }
}

pub(super) fn ratfunc(r: &RatFunc, var: &str) -> F {
    let text = r.display_in(var).to_string();
    let latex = match r.denom().as_constant() {
        Some(d) if d.is_one() => poly_latex(r.numer(), var),
        _ => format!("\\frac{{{}}}{{{}}}", poly_latex(r.numer(), var), poly_latex(r.denom(), var)),
    };
    F { text, latex }
}

/// `e`, parenthesised as an operand when it is a sum.
pub(super) fn expr(e: &Expr, var: &str) -> F {
    let wrap = matches!(e, Expr::Add(..) | Expr::Sub(..));
    let (text, latex) = (e.display_with(var), e.latex_with(var));
    if wrap {
        F {
            text: format!("({text})"),
            latex: format!("\\left({latex}\\right)"),
        }
    } else {
        F { text, latex }
    }
}

fn rat_latex(r: &Rat) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
}

/// Descending powers, matching [`Poly::display_in`].
pub(super) fn poly_latex(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (j, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mag = c.abs();
        if j == 0 {
            out.push_str(&rat_latex(&mag));
            continue;
        }
        if !mag.is_one() {
            out.push_str(&rat_latex(&mag));
        }
        out.push_str(var);
        if j > 1 {
            out.push_str(&format!("^{{{j}}}"));
        }
    }
    out
}

/// Translates the ASCII math used in proof templates: words such as `eps`
/// and `sin`, the relations `<=`, `>=`, `->`, `*`, and `^(..)` exponents.
fn ascii_to_latex(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let mapped = match word.as_str() {
                "eps" => "\\varepsilon",
                "delta" => "\\delta",
                "sin" => "\\sin",
                "cos" => "\\cos",
                "min" => "\\min",
                "lim" => "\\lim",
                "inf" => "\\infty",
                other => other,
            };
            out.push_str(mapped);
            let next_alnum = chars.get(i).is_some_and(|n| n.is_ascii_alphanumeric());
            if mapped.starts_with('\\') && next_alnum {
                out.push(' ');
            }
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        match two.as_str() {
            "<=" => {
                out.push_str("\\le");
                i += 2;
                if chars.get(i).is_some_and(|n| *n != ' ') {
                    out.push(' ');
                }
                continue;
            }
            ">=" => {
                out.push_str("\\ge");
                i += 2;
                if chars.get(i).is_some_and(|n| *n != ' ') {
                    out.push(' ');
                }
                continue;
            }
            "->" => {
                out.push_str("\\to");
                i += 2;
                if chars.get(i).is_some_and(|n| *n != ' ') {
                    out.push(' ');
                }
                continue;
            }
            "^(" => {
                let mut depth = 0;
                let mut j = i + 1;
                while j < chars.len() {
                    match chars[j] {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    j += 1;
                }
                let inner: String = chars[i + 2..j.min(chars.len())].iter().collect();
                out.push_str(&format!("^{{{}}}", ascii_to_latex(&inner)));
                i = j + 1;
                continue;
            }
            _ => {}
        }
        match c {
            '*' => out.push_str(" \\cdot "),
            '{' => out.push_str("\\{"),
            '}' => out.push_str("\\}"),
            other => out.push(other),
        }
        i += 1;
    }
    out
}

#[derive(Debug, Clone)]
enum Piece {
    Prose(String),
    Math(F),
}

/// A sentence of prose and formulas.
#[derive(Debug, Clone, Default)]
pub(super) struct Line(Vec<Piece>);

impl Line {
    pub fn new() -> Line {
        Line::default()
    }

    pub fn t(mut self, prose: &str) -> Line {
        self.0.push(Piece::Prose(prose.to_string()));
        self
    }

    pub fn m(mut self, f: F) -> Line {
        self.0.push(Piece::Math(f));
        self
    }

    /// Shorthand for a literal ASCII formula.
    pub fn ms(self, ascii: &str) -> Line {
        self.m(F::new().s(ascii))
    }

    pub fn render(&self, format: ProofFormat) -> String {
        let mut out = String::new();
        for p in &self.0 {
            match (p, format) {
                (Piece::Prose(s), ProofFormat::Text) => out.push_str(s),
                (Piece::Prose(s), ProofFormat::Latex) => out.push_str(&escape_prose(s)),
                (Piece::Math(f), ProofFormat::Text) => out.push_str(&f.text),
                (Piece::Math(f), ProofFormat::Latex) => {
                    out.push('$');
                    out.push_str(&f.latex);
                    out.push('$');
                }
            }
        }
        out
    }
}

fn escape_prose(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '%' | '&' | '#' | '_' | '$' => {
                out.push('\\');
                out.push(c);
            }
            other => out.push(other),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_translation() {
        assert_eq!(ascii_to_latex("|t| < eps/6"), "|t| < \\varepsilon/6");
        assert_eq!(ascii_to_latex("eps^(1/2) <= 1"), "\\varepsilon^{1/2} \\le 1");
        assert_eq!(ascii_to_latex("sin(t) -> 0"), "\\sin(t) \\to 0");
        assert_eq!(ascii_to_latex("min{1, eps}"), "\\min\\{1, \\varepsilon\\}");
        assert_eq!(ascii_to_latex("k*f"), "k \\cdot f");
    }

    #[test]
    fn poly_latex_matches_text_shape() {
        let p = Poly::new(vec![Rat::zero(), Rat::integer(5), Rat::one()]);
        assert_eq!(poly_latex(&p, "t"), "t^{2} + 5t");
        let q = Poly::new(vec![Rat::new(-1, 2), Rat::zero(), Rat::new(-3, 4)]);
        assert_eq!(poly_latex(&q, "t"), "-\\frac{3}{4}t^{2} - \\frac{1}{2}");
    }

    #[test]
    fn line_renders_both_formats() {
        let l = Line::new().t("Fix ").ms("eps > 0").t(".");
        assert_eq!(l.render(ProofFormat::Text), "Fix eps > 0.");
        assert_eq!(l.render(ProofFormat::Latex), "Fix $\\varepsilon > 0$.");
    }
}
