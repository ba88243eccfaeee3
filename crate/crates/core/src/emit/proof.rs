use super::markup::{Line, F};
use super::{EmitError, ProofDocument, ProofFormat, Section, SectionKind};
use crate::algebra::{Expr, Poly, RatFunc};
use crate::numeric::Rat;
use crate::witness::{recentred_expr, Center, Claim, DeltaExpr, Derivation, Rule, Side, Strategy, Witness};

/// Corrections to commonly misstated constants, noted where a step uses one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Erratum {
    ReciprocalBound,
    TermwiseLinear,
    PositivityVariable,
    DenominatorBound,
}

impl Erratum {
    fn note(self) -> Line {
        match self {
            Erratum::ReciprocalBound => Line::new()
                .t("From ")
                .ms("|f(t) - 1| < 1/2")
                .t(" one gets ")
                .ms("f(t) > 1/2")
                .t(" and hence ")
                .ms("1/|f(t)| < 2")
                .t("; the bound is 2, not 1/2. The second threshold is therefore taken at ")
                .ms("eps/2")
                .t(", and a threshold at ")
                .ms("2*eps")
                .t(" is not sound."),
            Erratum::TermwiseLinear => Line::new()
                .t("For ")
                .ms("j = 1")
                .t(" the termwise threshold is ")
                .ms("eps/(n|b_1|)")
                .t(" with no root. Its square root exceeds it whenever ")
                .ms("eps < n|b_1|")
                .t(", so taking the square root there is not sound."),
            Erratum::PositivityVariable => Line::new()
                .t("Positivity is a statement about ")
                .ms("x -> c")
                .t("; in the recentred variable it reads ")
                .ms("t -> 0")
                .t(" with ")
                .ms("x = c + t")
                .t("."),
            Erratum::DenominatorBound => Line::new()
                .t("Positivity gives ")
                .ms("|q(c + t)| > r")
                .t(", by the reverse triangle inequality, hence ")
                .ms("1/|q(c + t)| < 1/r")
                .t("; the reciprocal of the denominator is bounded above, not below."),
        }
    }
}

struct Notes {
    enabled: bool,
    used: Vec<Erratum>,
}

impl Notes {
    /// Marker ` [n]` for `e`, or nothing when notes are disabled.
    fn mark(&mut self, e: Erratum) -> String {
        if !self.enabled {
            return String::new();
        }
        let n = match self.used.iter().position(|u| *u == e) {
            Some(i) => i + 1,
            None => {
                self.used.push(e);
                self.used.len()
            }
        };
        format!(" [{n}]")
    }
}

fn rule_name(rule: &Rule) -> &'static str {
    match rule {
        Rule::Identity => "identity",
        Rule::Sum => "sum",
        Rule::Scalar { .. } => "scalar",
        Rule::Product => "product",
        Rule::Reciprocal => "reciprocal",
        Rule::Squeeze { .. } => "squeeze",
        Rule::Recenter { .. } => "recenter",
        Rule::PolyDirect { .. } => "poly_direct",
        Rule::Positivity { .. } => "positivity",
        Rule::RationalDirect => "rational_direct",
        Rule::InfinityTransform => "infinity_transform",
        Rule::Derivative => "derivative",
        Rule::Sin0 => "sin0",
        Rule::SinAt { .. } => "sin_at",
        Rule::ArgScale { .. } => "arg_scale",
        Rule::GeneralSum => "general_sum",
        Rule::GeneralScalar { .. } => "general_scalar",
        Rule::GeneralDifference => "general_difference",
        Rule::GeneralProduct => "general_product",
        Rule::GeneralQuotient => "general_quotient",
    }
}

fn missing(d: &Derivation, key: &'static str) -> EmitError {
    EmitError::InconsistentDerivation {
        rule: rule_name(&d.rule),
        key,
    }
}

fn need_delta<'a>(d: &'a Derivation, key: &'static str) -> Result<&'a DeltaExpr, EmitError> {
    d.delta(key).ok_or_else(|| missing(d, key))
}

fn need_rat<'a>(d: &'a Derivation, key: &'static str) -> Result<&'a Rat, EmitError> {
    d.rat(key).ok_or_else(|| missing(d, key))
}

fn need_poly<'a>(d: &'a Derivation, key: &'static str) -> Result<&'a Poly, EmitError> {
    d.poly(key).ok_or_else(|| missing(d, key))
}

fn need_ratfunc<'a>(d: &'a Derivation, key: &'static str) -> Result<&'a RatFunc, EmitError> {
    d.ratfunc(key).ok_or_else(|| missing(d, key))
}

fn need_expr<'a>(d: &'a Derivation, key: &'static str) -> Result<&'a Expr, EmitError> {
    d.expr(key).ok_or_else(|| missing(d, key))
}

fn center_formula(center: &Center, var: &str, side: Side) -> F {
    match center {
        Center::Infinity => F::new().raw(&format!("{var} -> inf"), &format!("{var} \\to \\infty")),
        Center::Finite(c) => {
            let plus = side == Side::RightOnly;
            F::new()
                .raw(&format!("{var} -> "), &format!("{var} \\to "))
                .rat(c)
                .raw(if plus { "+" } else { "" }, if plus { "^{+}" } else { "" })
        }
    }
}

/// `lim_{var -> c} f = L`.
fn limit_formula(approach: F, f: F, limit: &Rat) -> F {
    F::new()
        .raw("lim_{", "\\lim_{")
        .f(approach)
        .raw("} ", "} ")
        .f(f)
        .s(" = ")
        .rat(limit)
}

/// `f(c + t) - L` or `f(1/t) - L` as an expression in `t`.
fn recentred_difference(claim: &Claim) -> Expr {
    let shifted = recentred_expr(&claim.function, &claim.center);
    if claim.limit.is_zero() {
        shifted
    } else {
        Expr::sub(shifted, Expr::Const(claim.limit.clone()))
    }
}

/// Renders the proof that `w.delta` works for `w.claim`, following the
/// derivation step by step. With `errata`, steps that use a commonly
/// misstated constant carry a numbered note.
pub fn render_proof(w: &Witness, format: ProofFormat, errata: bool) -> Result<ProofDocument, EmitError> {
    let claim = &w.claim;
    let mut notes = Notes {
        enabled: errata,
        used: Vec::new(),
    };
    let var = if claim.center.is_zero() { "t" } else { "x" };
    let mut sections: Vec<(SectionKind, Vec<Line>)> = Vec::new();

    let statement = limit_formula(
        center_formula(&claim.center, var, claim.side),
        F::new().expr(&claim.function, var),
        &claim.limit,
    );
    sections.push((SectionKind::Claim, vec![Line::new().t("We prove that ").m(statement).t(".")]));

    if !claim.is_centered() {
        let g = recentred_difference(claim);
        let approach = center_formula(&Center::zero(), "t", claim.side);
        let target = limit_formula(approach, F::new().expr(&g, "t"), &Rat::zero());
        let lead = match &claim.center {
            Center::Finite(c) if c.is_zero() => Line::new().t("Equivalently, we prove that "),
            Center::Finite(c) => Line::new()
                .t("Writing ")
                .m(F::new().s("x = ").rat(c).s(" + t"))
                .t(", we equivalently prove that "),
            Center::Infinity => Line::new()
                .t("Writing ")
                .ms("x = 1/t")
                .t(" with ")
                .ms("t > 0")
                .t(", we equivalently prove that "),
        };
        sections.push((SectionKind::Recentering, vec![lead.m(target).t(".")]));
        let algebra = algebra_lines(&w.derivation, &g)?;
        if !algebra.is_empty() {
            sections.push((SectionKind::Algebra, algebra));
        }
    }

    sections.push((SectionKind::FixEps, vec![Line::new().t("Fix ").ms("eps > 0").t(".")]));
    sections.push((
        SectionKind::DeltaChoice,
        vec![Line::new().t("Choose ").m(F::new().s("delta = ").delta(&w.delta)).t(".")],
    ));

    let mut chain = Vec::new();
    let mut first_error = None;
    w.derivation.walk(&mut |d| {
        if first_error.is_some() {
            return;
        }
        match step(d, &mut notes) {
            Ok(line) => chain.push(line),
            Err(e) => first_error = Some(e),
        }
    });
    if let Some(e) = first_error {
        return Err(e);
    }
    sections.push((SectionKind::BoundChain, chain));
    sections.push((SectionKind::Conclusion, vec![conclusion(claim, var)]));

    Ok(ProofDocument {
        format,
        sections: sections
            .into_iter()
            .map(|(kind, lines)| Section {
                kind,
                lines: lines.iter().map(|l| l.render(format)).collect(),
            })
            .collect(),
        erratum_footnotes: notes.used.iter().map(|e| e.note().render(format)).collect(),
    })
}

/// The centred-difference algebra recorded at the root of the derivation.
fn algebra_lines(root: &Derivation, g: &Expr) -> Result<Vec<Line>, EmitError> {
    let lhs = || F::new().bare(g, "t");
    let lines = match &root.rule {
        Rule::Recenter { .. } => {
            let rhs = match root.children.first() {
                Some(child) if matches!(child.rule, Rule::PolyDirect { .. }) => {
                    F::new().poly(need_poly(child, "tail")?, "t")
                }
                _ => F::new().expr(need_expr(root, "difference")?, "t"),
            };
            vec![Line::new().m(lhs().s(" = ").f(rhs)).t(".")]
        }
        Rule::RationalDirect => vec![Line::new()
            .m(lhs().s(" = ").ratfunc(need_ratfunc(root, "difference")?, "t"))
            .t(".")],
        Rule::InfinityTransform => {
            let g_sub = need_ratfunc(root, "substituted")?;
            let mut lines = vec![Line::new()
                .t("Substituting gives ")
                .m(F::new().s("g(t) = ").ratfunc(g_sub, "t"))
                .t(", defined at ")
                .ms("t = 0")
                .t(".")];
            if let Some(diff) = root.children.first().and_then(|c| c.ratfunc("difference")) {
                lines.push(Line::new().m(lhs().s(" = ").ratfunc(diff, "t")).t("."));
            }
            lines
        }
        Rule::Derivative => {
            let shifted = need_poly(root, "shifted")?;
            let mut lines = vec![Line::new().m(F::new().s("p(c + t) = ").poly(shifted, "t")).t(".")];
            if let Some(tail) = root.children.first().and_then(|c| c.poly("tail")) {
                lines.push(Line::new().m(lhs().s(" = ").poly(tail, "t")).t("."));
            }
            lines
        }
        Rule::SinAt { c } => vec![Line::new()
            .m(lhs()
                .s(" = -sin(")
                .rat(c)
                .s(")*2*sin(t/2)^2 + cos(")
                .rat(c)
                .s(")*sin(t)"))
            .t(".")],
        _ => Vec::new(),
    };
    Ok(lines)
}

fn conclusion(claim: &Claim, var: &str) -> Line {
    let error = F::new()
        .s("|")
        .expr(&claim.function, var)
        .s(" - ")
        .rat(&claim.limit)
        .s("| < eps");
    let error = if claim.limit.is_zero() {
        F::new().s("|").expr(&claim.function, var).s("| < eps")
    } else {
        error
    };
    let premise = match &claim.center {
        Center::Infinity => F::new().s("x > 1/delta"),
        Center::Finite(c) => {
            let offset = if c.is_zero() {
                F::new().s(var)
            } else {
                F::new().s(var).s(" - ").rat(c)
            };
            match claim.side {
                Side::TwoSided => F::new().s("0 < |").f(offset).s("| < delta"),
                Side::RightOnly => F::new().s("0 < ").f(offset).s(" < delta"),
            }
        }
    };
    Line::new()
        .t("Hence for every ")
        .ms("eps > 0")
        .t(", ")
        .m(premise)
        .t(" implies ")
        .m(error)
        .t(", which proves the claim.")
}

/// One rendered step per derivation node.
fn step(d: &Derivation, notes: &mut Notes) -> Result<Line, EmitError> {
    let line = match &d.rule {
        Rule::Identity => Line::new()
            .t("Identity: for ")
            .ms("0 < |t| < delta = eps")
            .t(" we have ")
            .ms("|t| < eps")
            .t("."),
        Rule::Sum => Line::new()
            .t("Sum: ")
            .ms("|f(t) + g(t)| <= |f(t)| + |g(t)| < eps/2 + eps/2 = eps")
            .t(" once ")
            .m(F::new().s("|t| < ").delta(need_delta(d, "left")?))
            .t(" and ")
            .m(F::new().s("|t| < ").delta(need_delta(d, "right")?))
            .t(", the summand thresholds taken at ")
            .ms("eps/2")
            .t("."),
        Rule::Scalar { k } if k.is_zero() => Line::new()
            .t("Scalar multiple by 0: the function vanishes identically, so ")
            .ms("delta = 1")
            .t(" serves."),
        Rule::Scalar { k } => Line::new()
            .t("Scalar multiple by ")
            .m(F::new().rat(k))
            .t(": ")
            .m(F::new().s("|").ratp(k).s("*f(t)| < eps"))
            .t(" once ")
            .m(F::new().s("|f(t)| < eps/").ratp(&k.abs()))
            .t(", which holds for ")
            .m(F::new().s("|t| < ").delta(need_delta(d, "threshold")?))
            .t("."),
        Rule::Product => Line::new()
            .t("Product: ")
            .ms("|f(t) g(t)| < eps^(1/2)*eps^(1/2) = eps")
            .t(" once ")
            .m(F::new().s("|t| < ").delta(need_delta(d, "left")?))
            .t(" and ")
            .m(F::new().s("|t| < ").delta(need_delta(d, "right")?))
            .t(", the factor thresholds taken at ")
            .ms("eps^(1/2)")
            .t("."),
        Rule::Reciprocal => {
            let mark = notes.mark(Erratum::ReciprocalBound);
            Line::new()
                .t("Reciprocal: for ")
                .m(F::new().s("|t| < ").delta(need_delta(d, "guard")?))
                .t(" we have ")
                .ms("|f(t) - 1| < 1/2")
                .t(", so ")
                .ms("f(t) > 1/2")
                .t(" and ")
                .ms("1/|f(t)| < 2")
                .t(". Then ")
                .ms("|1/f(t) - 1| = |f(t) - 1|/|f(t)| < 2|f(t) - 1| < eps")
                .t(" once ")
                .m(F::new().s("|t| < ").delta(need_delta(d, "threshold")?))
                .t(", the threshold taken at ")
                .ms("eps/2")
                .t(".")
                .t(&mark)
        }
        Rule::Squeeze { locality } => Line::new()
            .t("Squeeze: for ")
            .m(F::new().s("0 < |t| < ").rat(locality))
            .t(" the ordering ")
            .m(F::new().s("f(t) <= ").expr(need_expr(d, "g")?, "t").s(" <= h(t)"))
            .t(" holds (checked by sampling), so ")
            .ms("|f(t)| < eps")
            .t(" and ")
            .ms("|h(t)| < eps")
            .t(" give ")
            .ms("-eps < f(t) <= g(t) <= h(t) < eps")
            .t("."),
        Rule::Recenter { center, limit } => {
            let sub = match center {
                Center::Finite(c) if c.is_zero() => F::new().s("x = t"),
                Center::Finite(c) => F::new().s("x = ").rat(c).s(" + t"),
                Center::Infinity => F::new().s("x = 1/t"),
            };
            let difference = match d.children.first() {
                Some(child) if matches!(child.rule, Rule::PolyDirect { .. }) => {
                    F::new().poly(need_poly(child, "tail")?, "t")
                }
                _ => F::new().bare(need_expr(d, "difference")?, "t"),
            };
            Line::new()
                .t("Recentering: with ")
                .m(sub)
                .t(" the error ")
                .m(F::new().s("|f(x) - ").rat(limit).s("|"))
                .t(" equals ")
                .m(F::new().s("|g(t)| for g(t) = ").f(difference))
                .t(", so a threshold for ")
                .ms("g")
                .t(" at 0 serves unchanged.")
        }
        Rule::PolyDirect { strategy } => poly_step(d, *strategy, notes)?,
        Rule::Positivity { r } => {
            let mark = notes.mark(Erratum::PositivityVariable);
            Line::new()
                .t("Positivity: ")
                .m(F::new().s("q(c) = ").rat(need_rat(d, "value")?))
                .t(", so ")
                .m(F::new().s("r = |q(c)|/2 = ").rat(r))
                .t(". With ")
                .m(F::new().s("q(c + t) = ").poly(need_poly(d, "shifted")?, "t"))
                .t(", the tail bound gives ")
                .ms("|q(c + t) - q(c)| < r")
                .t(" for ")
                .m(F::new().s("0 < |t| < ").rat(need_rat(d, "guard")?))
                .t(", hence ")
                .ms("|q(c + t)| >= |q(c)| - |q(c + t) - q(c)| > r")
                .t(".")
                .t(&mark)
        }
        Rule::RationalDirect => {
            let mark = notes.mark(Erratum::DenominatorBound);
            let numer_scale = need_rat(d, "numer_scale")?;
            let head = Line::new()
                .t("Rational function: with ")
                .ms("L = p(c)/q(c)")
                .t(", ")
                .ms("|p(c + t)/q(c + t) - L| <= |p(c + t) - p(c)|/|q(c + t)| + |p(c)| |q(c + t) - q(c)|/(|q(c)| |q(c + t)|)")
                .t(" and ")
                .ms("1/|q(c + t)| < 1/r")
                .t(". ");
            let body = match d.rat("denom_scale") {
                Some(denom_scale) => head
                    .t("The first term is below ")
                    .ms("eps/2")
                    .t(" when ")
                    .m(F::new().s("|p(c + t) - p(c)| < (").rat(numer_scale).s(")*eps"))
                    .t(", the second when ")
                    .m(F::new().s("|q(c + t) - q(c)| < (").rat(denom_scale).s(")*eps"))
                    .t("."),
                None => head
                    .t("Since ")
                    .ms("p(c) = 0")
                    .t(" only the first term remains, below ")
                    .ms("eps")
                    .t(" when ")
                    .m(F::new().s("|p(c + t)| < (").rat(numer_scale).s(")*eps"))
                    .t("."),
            };
            body.t(&mark)
        }
        Rule::InfinityTransform => Line::new()
            .t("Limit at infinity: ")
            .ms("x = 1/t")
            .t(" maps ")
            .ms("x > 1/delta")
            .t(" onto ")
            .ms("0 < t < delta")
            .t(", and ")
            .m(F::new().s("f(1/t) = ").ratfunc(need_ratfunc(d, "substituted")?, "t"))
            .t(" is continuous at ")
            .ms("t = 0")
            .t(", so a one-sided threshold at ")
            .ms("0")
            .t(" gives ")
            .ms("M = 1/delta")
            .t("."),
        Rule::Derivative => Line::new()
            .t("Derivative: for ")
            .m(F::new().s("p(x) = ").poly(need_poly(d, "polynomial")?, "x"))
            .t(" at ")
            .m(F::new().s("c = ").rat(need_rat(d, "center")?))
            .t(", the difference quotient ")
            .ms("(p(c + t) - p(c))/t")
            .t(" minus ")
            .m(F::new().s("p'(c) = ").rat(need_rat(d, "slope")?))
            .t(" is the polynomial bounded next."),
        Rule::Sin0 => Line::new()
            .t("Sine at 0: ")
            .ms("|sin(t)| <= |t|")
            .t(" for every real ")
            .ms("t")
            .t(", so ")
            .ms("|sin(t)| < eps")
            .t(" once ")
            .ms("|t| < min{1, eps}")
            .t("."),
        Rule::SinAt { c } => Line::new()
            .t("Sine at ")
            .m(F::new().rat(c))
            .t(": ")
            .m(F::new().s("sin(").rat(c).s(" + t) - sin(").rat(c).s(") = -sin(").rat(c).s(")*2*sin(t/2)^2 + cos(").rat(c).s(")*sin(t)"))
            .t(" with both coefficients at most 1 in absolute value, so ")
            .ms("2*sin(t/2)^2 + |sin(t)|")
            .t(" bounds the error, and the sum below makes it less than ")
            .ms("eps")
            .t("."),
        Rule::ArgScale { a } => Line::new()
            .t("Argument scaling by ")
            .m(F::new().rat(a))
            .t(": ")
            .m(F::new().s("f(").ratp(a).s("*t)"))
            .t(" is within ")
            .ms("eps")
            .t(" of 0 once ")
            .m(F::new().s("|").ratp(a).s("*t| < delta_f"))
            .t(", that is ")
            .m(F::new().s("|t| < delta_f/").ratp(&a.abs()))
            .t("."),
        Rule::GeneralSum => Line::new()
            .t("Sum of limits: ")
            .ms("|(f + g) - (L + M)| <= |f - L| + |g - M| < eps/2 + eps/2")
            .t(" once ")
            .m(F::new().s("|t| < ").delta(need_delta(d, "left")?))
            .t(" and ")
            .m(F::new().s("|t| < ").delta(need_delta(d, "right")?))
            .t("."),
        Rule::GeneralScalar { k } if k.is_zero() => Line::new()
            .t("Scalar multiple of a limit by 0: the function vanishes identically, so ")
            .ms("delta = 1")
            .t(" serves."),
        Rule::GeneralScalar { k } => Line::new()
            .t("Scalar multiple of a limit by ")
            .m(F::new().rat(k))
            .t(": ")
            .m(F::new().s("|k*f - k*L| = ").ratp(&k.abs()).s("*|f - L|"))
            .t(", so the threshold is taken at ")
            .m(F::new().s("eps/").ratp(&k.abs()))
            .t("."),
        Rule::GeneralDifference => Line::new()
            .t("Difference of limits: ")
            .ms("f - g = f + (-1)*g")
            .t("."),
        Rule::GeneralProduct => {
            let m = need_rat(d, "parts")?;
            let share = m.recip().map_err(|_| missing(d, "parts"))?;
            let cross = DeltaExpr::root(DeltaExpr::scale(share.clone(), DeltaExpr::Eps), 2);
            let head = Line::new()
                .t("Product of limits: ")
                .ms("f*g - L*M = (f - L)*(g - M) + M*(f - L) + L*(g - M)")
                .t(". ");
            if m.is_one() {
                head.t("With ")
                    .ms("L = M = 0")
                    .t(" only the cross term remains, kept below ")
                    .ms("eps")
                    .t(" through factor thresholds at ")
                    .m(F::new().delta(&cross))
                    .t(".")
            } else {
                head.t("Each of the ")
                    .m(F::new().rat(m))
                    .t(" terms that do not vanish is kept below ")
                    .m(F::new().delta(&DeltaExpr::scale(share, DeltaExpr::Eps)))
                    .t(": the cross term through factor thresholds at ")
                    .m(F::new().delta(&cross))
                    .t(", a term with a nonzero coefficient ")
                    .ms("M")
                    .t(" or ")
                    .ms("L")
                    .t(" through a threshold at ")
                    .m(F::new().s("eps/(").rat(m).s("|M|)"))
                    .t(" or ")
                    .m(F::new().s("eps/(").rat(m).s("|L|)"))
                    .t(".")
            }
        }
        Rule::GeneralQuotient => Line::new()
            .t("Quotient of limits: ")
            .ms("f/g = f*(1/M)*(1/(g/M))")
            .t(" with ")
            .ms("g/M -> 1")
            .t(", so the reciprocal rule applies, followed by the scalar and product rules."),
    };
    Ok(line)
}

fn poly_step(d: &Derivation, strategy: Strategy, notes: &mut Notes) -> Result<Line, EmitError> {
    let tail = need_poly(d, "tail")?;
    if tail.is_zero() {
        return Ok(Line::new()
            .t("Constant: the recentred function vanishes identically, so ")
            .ms("delta = 1")
            .t(" serves."));
    }
    let line = match strategy {
        Strategy::II => {
            let bound = need_rat(d, "bound")?;
            let nonzero: Vec<&Rat> = tail.coeffs().iter().skip(1).rev().filter(|c| !c.is_zero()).collect();
            let scaled = |f: F| if bound.is_one() { f.s("|t|") } else { f.rat(bound).s("|t|") };
            let mut chain = F::new().s("|").poly(tail, "t").s("| <= ");
            if nonzero.len() > 1 {
                chain = chain.s("(");
                for (i, c) in nonzero.iter().enumerate() {
                    if i > 0 {
                        chain = chain.s(" + ");
                    }
                    chain = chain.rat(&c.abs());
                }
                chain = scaled(chain.s(")|t| = "));
            } else {
                chain = scaled(chain);
            }
            let threshold = DeltaExpr::scale(bound.recip().map_err(|_| missing(d, "bound"))?, DeltaExpr::Eps);
            Line::new()
                .t("Polynomial bound: for ")
                .ms("0 < |t| < 1")
                .t(" every power satisfies ")
                .ms("|t|^j <= |t|")
                .t(", so ")
                .m(chain)
                .t(", which is below ")
                .ms("eps")
                .t(" once ")
                .m(F::new().s("|t| < ").delta(&threshold))
                .t(".")
        }
        Strategy::I => {
            let n = need_rat(d, "degree")?;
            let line = Line::new()
                .t("Polynomial bound, termwise: with ")
                .m(F::new().s("n = ").rat(n))
                .t(", each term satisfies ")
                .ms("|b_j t^j| < eps/n")
                .t(" once ")
                .ms("|t| < (eps/(n|b_j|))^(1/j)")
                .t(", so the at most ")
                .ms("n")
                .t(" nonzero terms of ")
                .m(F::new().poly(tail, "t"))
                .t(" sum to less than ")
                .ms("eps")
                .t(".");
            if tail.coeff(1).is_zero() {
                line
            } else {
                let mark = notes.mark(Erratum::TermwiseLinear);
                line.t(" For ")
                    .ms("j = 1")
                    .t(" the threshold is ")
                    .ms("eps/(n|b_1|)")
                    .t(" itself.")
                    .t(&mark)
            }
        }
    };
    Ok(line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::witness::{
        w_general_quotient, w_identity, w_infinity, w_poly, w_poly_tail, w_ratfunc, w_reciprocal, w_scale, w_sin_at,
    };

    fn text(w: &Witness) -> String {
        render_proof(w, ProofFormat::Text, true).unwrap().render()
    }

    #[test]
    fn identity_proof_is_short() {
        let doc = render_proof(&w_identity(), ProofFormat::Text, true).unwrap();
        assert!(doc.section(SectionKind::Recentering).is_none());
        assert_eq!(doc.section(SectionKind::DeltaChoice).unwrap().lines, vec!["Choose delta = eps."]);
        assert!(doc.erratum_footnotes.is_empty());
    }

    #[test]
    fn worked_polynomial_lines() {
        let w = w_poly(&Poly::from_ints(&[0, 3, 1]), &Rat::one(), Strategy::II);
        let s = text(&w);
        assert!(s.contains("t^2 + 5t"), "{s}");
        assert!(s.contains("min{1, eps/6}"), "{s}");
        assert!(s.is_ascii());
    }

    #[test]
    fn errata_are_opt_out() {
        let one_plus_t = w_poly(&Poly::from_ints(&[1, 1]), &Rat::zero(), Strategy::II);
        let shifted = crate::witness::w_general_scalar(&Rat::one(), &one_plus_t);
        let w = w_reciprocal(&shifted).unwrap();
        let on = render_proof(&w, ProofFormat::Text, true).unwrap();
        assert_eq!(on.erratum_footnotes.len(), 1);
        let off = render_proof(&w, ProofFormat::Text, false).unwrap();
        assert!(off.erratum_footnotes.is_empty());
        assert!(!off.render().contains("[1]"));

        let termwise = w_poly_tail(&Poly::from_ints(&[0, 5, 1]), Strategy::I);
        assert_eq!(render_proof(&termwise, ProofFormat::Text, true).unwrap().erratum_footnotes.len(), 1);
    }

    #[test]
    fn rendering_is_total() {
        let den = Poly::from_ints(&[-1, 1]).mul(&Poly::from_ints(&[1, 0, 1]));
        let rational = w_ratfunc(&Poly::from_ints(&[1, 1]), &den, &Rat::integer(2)).unwrap();
        let infinity = w_infinity(&RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[-4, 3])).unwrap()).unwrap();
        let f = w_poly(&Poly::from_ints(&[1, 1]), &Rat::one(), Strategy::I);
        let g = w_poly(&Poly::from_ints(&[3, 0, 1]), &Rat::one(), Strategy::II);
        let quotient = w_general_quotient(&f, &g).unwrap();
        let scaled = w_scale(&Rat::zero(), &w_identity()).unwrap();
        for w in [rational, infinity, quotient, scaled, w_sin_at(&Rat::one())] {
            for format in [ProofFormat::Text, ProofFormat::Latex] {
                let doc = render_proof(&w, format, true).unwrap();
                let chain = doc.section(SectionKind::BoundChain).unwrap();
                assert_eq!(chain.lines.len(), w.derivation.node_count());
                assert!(doc.render().contains(&match format {
                    ProofFormat::Text => w.delta.to_string(),
                    ProofFormat::Latex => w.delta.latex(),
                }));
            }
        }
    }

    #[test]
    fn missing_fact_is_reported() {
        let mut w = w_poly(&Poly::from_ints(&[0, 1]), &Rat::one(), Strategy::II);
        w.derivation.children[0].facts.clear();
        assert!(matches!(
            render_proof(&w, ProofFormat::Text, true),
            Err(EmitError::InconsistentDerivation { .. })
        ));
    }

    #[test]
    fn latex_is_standalone() {
        let w = w_infinity(&RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[-4, 3])).unwrap()).unwrap();
        let s = render_proof(&w, ProofFormat::Latex, true).unwrap().render();
        assert!(s.starts_with("\\documentclass{article}\n\\usepackage{amsmath}\n"));
        assert!(s.trim_end().ends_with("\\end{document}"));
        assert!(s.contains("\\min") && s.contains("\\frac{3}{8}"));
        assert!(!s.contains("\\frac{9}{14}"));
    }
}
