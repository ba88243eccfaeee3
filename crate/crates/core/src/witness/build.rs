use super::{Center, Claim, Derivation, DeltaExpr, Fact, Rule, Side, Strategy, Witness, WitnessError};
use crate::algebra::{poly_to_expr, Expr, Poly, RatFunc, Value};
use crate::numeric::Rat;
use crate::verify::sample_points;

/// Seed for the probe points used by construction-time sampling checks.
const PROBE_SEED: u64 = 0x5eed_f122_1e00_0001;
const PROBE_COUNT: usize = 16;
const PROBE_SIN_DEGREE: u32 = 13;

fn require_centered(w: &Witness, what: &str) -> Result<(), WitnessError> {
    if w.claim.is_centered() {
        Ok(())
    } else {
        Err(WitnessError::WrongClaimShape(format!(
            "{what} needs a claim with limit 0 at centre 0, got limit {} at {}",
            w.claim.limit, w.claim.center
        )))
    }
}

fn require_compatible(a: &Witness, b: &Witness) -> Result<(), WitnessError> {
    if a.claim.center != b.claim.center {
        return Err(WitnessError::MismatchedClaims(format!(
            "centres {} and {} differ",
            a.claim.center, b.claim.center
        )));
    }
    if a.claim.side != b.claim.side {
        return Err(WitnessError::MismatchedClaims("one-sided and two-sided claims mixed".into()));
    }
    Ok(())
}

fn both_centered(a: &Witness, b: &Witness, what: &str) -> Result<(), WitnessError> {
    require_centered(a, what)?;
    require_centered(b, what)?;
    if a.claim.side != b.claim.side {
        return Err(WitnessError::MismatchedClaims("one-sided and two-sided claims mixed".into()));
    }
    Ok(())
}

fn half() -> Rat {
    Rat::new(1, 2)
}

fn sqrt_eps() -> DeltaExpr {
    DeltaExpr::root(DeltaExpr::Eps, 2)
}

/// `lim_{t -> 0} t = 0` with `delta = eps`.
pub fn w_identity() -> Witness {
    Witness::new(
        Claim::centered(Expr::Var, Side::TwoSided),
        DeltaExpr::Eps,
        Derivation::new(Rule::Identity),
    )
}

/// `f + g -> 0` from `f -> 0` and `g -> 0`, each child at `eps/2`.
pub fn w_sum(w1: &Witness, w2: &Witness) -> Result<Witness, WitnessError> {
    both_centered(w1, w2, "sum")?;
    let left = w1.delta.at_scaled_eps(half());
    let right = w2.delta.at_scaled_eps(half());
    let delta = DeltaExpr::min(vec![left.clone(), right.clone()]);
    let claim = Claim::centered(
        Expr::add(w1.claim.function.clone(), w2.claim.function.clone()),
        w1.claim.side,
    );
    let derivation = Derivation::new(Rule::Sum)
        .fact("left", Fact::Delta(left))
        .fact("right", Fact::Delta(right))
        .child(w1.derivation.clone())
        .child(w2.derivation.clone());
    Ok(Witness::new(claim, delta, derivation))
}

/// `k f -> 0` from `f -> 0`.
pub fn w_scale(k: &Rat, w: &Witness) -> Result<Witness, WitnessError> {
    require_centered(w, "scalar multiple")?;
    let derivation = Derivation::new(Rule::Scalar { k: k.clone() }).child(w.derivation.clone());
    if k.is_zero() {
        return Ok(Witness::new(
            Claim::centered(Expr::int(0), w.claim.side),
            DeltaExpr::Const(Rat::one()),
            derivation,
        ));
    }
    let delta = w.delta.at_scaled_eps(k.abs().recip().expect("nonzero"));
    let claim = Claim::centered(
        Expr::mul(Expr::Const(k.clone()), w.claim.function.clone()),
        w.claim.side,
    );
    Ok(Witness::new(claim, delta.clone(), derivation.fact("threshold", Fact::Delta(delta))))
}

/// `f g -> 0` from `f -> 0` and `g -> 0`, each child at `eps^(1/2)`.
pub fn w_product(w1: &Witness, w2: &Witness) -> Result<Witness, WitnessError> {
    both_centered(w1, w2, "product")?;
    let left = w1.delta.subst_eps(&sqrt_eps());
    let right = w2.delta.subst_eps(&sqrt_eps());
    let delta = DeltaExpr::min(vec![left.clone(), right.clone()]);
    let claim = Claim::centered(
        Expr::mul(w1.claim.function.clone(), w2.claim.function.clone()),
        w1.claim.side,
    );
    let derivation = Derivation::new(Rule::Product)
        .fact("left", Fact::Delta(left))
        .fact("right", Fact::Delta(right))
        .child(w1.derivation.clone())
        .child(w2.derivation.clone());
    Ok(Witness::new(claim, delta, derivation))
}

/// `1/f -> 1` from `f -> 1`.
///
/// Below the guard `delta_f(1/2)` one has `f > 1/2`, so `|1/f - 1| < 2|f - 1|`
/// and the second threshold is `delta_f(eps/2)`.
pub fn w_reciprocal(w: &Witness) -> Result<Witness, WitnessError> {
    if !w.claim.limit.is_one() {
        return Err(WitnessError::WrongClaimShape(format!(
            "reciprocal needs a child with limit 1, got {}",
            w.claim.limit
        )));
    }
    let guard = w.delta.subst_eps(&DeltaExpr::Const(half()));
    let threshold = w.delta.at_scaled_eps(half());
    let delta = DeltaExpr::min(vec![guard.clone(), threshold.clone()]);
    let claim = Claim::new(
        Expr::div(Expr::int(1), w.claim.function.clone()),
        w.claim.center.clone(),
        Rat::one(),
        w.claim.side,
    );
    let derivation = Derivation::new(Rule::Reciprocal)
        .fact("guard", Fact::Delta(guard))
        .fact("threshold", Fact::Delta(threshold))
        .child(w.derivation.clone());
    Ok(Witness::new(claim, delta, derivation))
}

/// `g -> 0` from `f -> 0`, `h -> 0` and `f <= g <= h` on `0 < |t| < locality`.
///
/// The ordering is checked on sample points only; a certain violation is an
/// error, an undecidable enclosure is not.
pub fn w_squeeze(w_f: &Witness, w_h: &Witness, locality: &Rat, g: &Expr) -> Result<Witness, WitnessError> {
    both_centered(w_f, w_h, "squeeze")?;
    if !locality.is_positive() {
        return Err(WitnessError::WrongClaimShape(format!(
            "squeeze locality must be positive, got {locality}"
        )));
    }
    let side = w_f.claim.side;
    for t in sample_points(locality, PROBE_COUNT, PROBE_SEED, side) {
        let eval = |e: &Expr| e.eval(&t, PROBE_SIN_DEGREE).ok().map(|v| v.to_interval());
        let (Some(f), Some(gv), Some(h)) = (eval(&w_f.claim.function), eval(g), eval(&w_h.claim.function)) else {
            continue;
        };
        if f.lo() > gv.hi() {
            return Err(WitnessError::OrderingViolation {
                t,
                detail: "f(t) > g(t)".into(),
            });
        }
        if gv.lo() > h.hi() {
            return Err(WitnessError::OrderingViolation {
                t,
                detail: "g(t) > h(t)".into(),
            });
        }
    }
    let delta = DeltaExpr::min(vec![
        DeltaExpr::Const(locality.clone()),
        w_f.delta.clone(),
        w_h.delta.clone(),
    ]);
    let derivation = Derivation::new(Rule::Squeeze {
        locality: locality.clone(),
    })
    .fact("g", Fact::Expr(g.clone()))
    .child(w_f.derivation.clone())
    .child(w_h.derivation.clone());
    Ok(Witness::new(Claim::centered(g.clone(), side), delta, derivation))
}

/// Shifted form `f(c + x)` or `f(1/x)` of `f`.
pub fn recentred_expr(f: &Expr, center: &Center) -> Expr {
    match center {
        Center::Finite(c) if c.is_zero() => f.clone(),
        Center::Finite(c) => f.substitute(&Expr::add(Expr::Const(c.clone()), Expr::Var)),
        Center::Infinity => f.substitute(&Expr::div(Expr::int(1), Expr::Var)),
    }
}

/// `lim f = L` at `center` from a witness for the recentred function
/// `f(c + t) - L` (or `f(1/t) - L`). The threshold is unchanged.
pub fn w_recenter(w: &Witness, center: Center, limit: &Rat, f: &Expr) -> Result<Witness, WitnessError> {
    require_centered(w, "recentering")?;
    let claim = Claim::new(f.clone(), center.clone(), limit.clone(), w.claim.side);
    for t in sample_points(&Rat::one(), PROBE_COUNT, PROBE_SEED, claim.side) {
        let lifted = claim
            .point(&t)
            .and_then(|x| f.eval(&x, PROBE_SIN_DEGREE))
            .map(|v| match v {
                Value::Exact(r) => Value::Exact(r - limit),
                Value::Enclosed(iv) => Value::Enclosed(iv.sub(&crate::numeric::Interval::point(limit.clone()))),
            });
        let inner = w.claim.function.eval(&t, PROBE_SIN_DEGREE);
        if let (Ok(a), Ok(b)) = (lifted, inner) {
            if !a.may_equal(&b) {
                return Err(WitnessError::SamplingMismatch { t });
            }
        }
    }
    let derivation = Derivation::new(Rule::Recenter {
        center: center.clone(),
        limit: limit.clone(),
    })
    .fact("shifted", Fact::Expr(recentred_expr(f, &center)))
    .fact("difference", Fact::Expr(w.claim.function.clone()))
    .child(w.derivation.clone());
    Ok(Witness::new(claim, w.delta.clone(), derivation))
}

/// Threshold for `|sum_{j>=1} b_j t^j| < eps`; `tail` must have zero constant term.
pub(crate) fn poly_tail_delta(tail: &Poly, strategy: Strategy) -> DeltaExpr {
    let Some(n) = tail.degree() else {
        return DeltaExpr::Const(Rat::one());
    };
    match strategy {
        Strategy::II => {
            let bound = tail.tail_abs_sum();
            DeltaExpr::min(vec![
                DeltaExpr::Const(Rat::one()),
                DeltaExpr::scale(bound.recip().expect("nonzero tail"), DeltaExpr::Eps),
            ])
        }
        Strategy::I => {
            let n_rat = Rat::integer(n as i64);
            let terms = (1..=n)
                .filter(|&j| !tail.coeff(j).is_zero())
                .map(|j| {
                    let q = (&n_rat * tail.coeff(j).abs()).recip().expect("nonzero");
                    let scaled = DeltaExpr::scale(q, DeltaExpr::Eps);
                    if j == 1 {
                        scaled
                    } else {
                        DeltaExpr::root(scaled, j as u32)
                    }
                })
                .collect();
            DeltaExpr::min(terms)
        }
    }
}

/// Centred witness for the polynomial `sum_{j>=1} b_j t^j`.
pub fn w_poly_tail(tail: &Poly, strategy: Strategy) -> Witness {
    let tail = tail.without_constant();
    let delta = poly_tail_delta(&tail, strategy);
    let mut derivation = Derivation::new(Rule::PolyDirect { strategy }).fact("tail", Fact::Poly(tail.clone()));
    if let Some(n) = tail.degree() {
        derivation = match strategy {
            Strategy::II => derivation.fact("bound", Fact::Rat(tail.tail_abs_sum())),
            Strategy::I => derivation.fact("degree", Fact::Rat(Rat::integer(n as i64))),
        };
    }
    Witness::new(Claim::centered(poly_to_expr(&tail), Side::TwoSided), delta, derivation)
}

/// `lim_{x -> c} p(x) = p(c)`.
pub fn w_poly(p: &Poly, c: &Rat, strategy: Strategy) -> Witness {
    w_poly_expr(&poly_to_expr(p), p, c, strategy)
}

/// As [`w_poly`], stating the claim for `f`, which must denote `p`.
pub fn w_poly_expr(f: &Expr, p: &Poly, c: &Rat, strategy: Strategy) -> Witness {
    let shifted = p.taylor_shift(c);
    let child = w_poly_tail(&shifted, strategy);
    w_recenter(&child, Center::Finite(c.clone()), &shifted.coeff(0), f)
        .expect("Taylor shift is exact")
}

/// Radius `r` with `|q(c + t)| > r` for `0 < |t| < guard`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positivity {
    pub r: Rat,
    pub guard: Rat,
    pub derivation: Derivation,
}

/// `r = |q(c)|/2` and `guard = delta_q(|q(c)|/2)` with the strategy-(ii) threshold of `q` at `c`.
pub fn w_positivity(q: &Poly, c: &Rat) -> Result<Positivity, WitnessError> {
    let qc = q.eval(c);
    if qc.is_zero() {
        return Err(WitnessError::ZeroAtCenter(c.clone()));
    }
    let r = qc.abs().half();
    let shifted = q.taylor_shift(c);
    let guard = poly_tail_delta(&shifted.without_constant(), Strategy::II).eval(&r, 64);
    let derivation = Derivation::new(Rule::Positivity { r: r.clone() })
        .fact("value", Fact::Rat(qc))
        .fact("shifted", Fact::Poly(shifted))
        .fact("guard", Fact::Rat(guard.clone()));
    Ok(Positivity { r, guard, derivation })
}

/// `lim_{x -> c} p(x)/q(x) = p(c)/q(c)`.
pub fn w_ratfunc(p: &Poly, q: &Poly, c: &Rat) -> Result<Witness, WitnessError> {
    let f = RatFunc::new(p.clone(), q.clone())?;
    w_ratfunc_expr(&f.to_expr(), p, q, c)
}

/// As [`w_ratfunc`], stating the claim for `f`, which must denote `p/q`.
pub fn w_ratfunc_expr(f: &Expr, p: &Poly, q: &Poly, c: &Rat) -> Result<Witness, WitnessError> {
    let pos = w_positivity(q, c)?;
    let pc = p.eval(c);
    let qc = q.eval(c);
    let limit = &pc / &qc;
    let p_tail = w_poly_tail(&p.taylor_shift(c), Strategy::II);
    let mut children = vec![DeltaExpr::Const(pos.guard.clone())];
    let mut derivation = Derivation::new(Rule::RationalDirect)
        .fact(
            "difference",
            Fact::RatFunc(RatFunc::new(p.clone(), q.clone())?.centered_difference(c, &limit)?),
        )
        .child(pos.derivation.clone());
    if pc.is_zero() {
        let scale = pos.r.clone();
        children.push(p_tail.delta.at_scaled_eps(scale.clone()));
        derivation = derivation
            .fact("numer_scale", Fact::Rat(scale))
            .child(p_tail.derivation);
    } else {
        let numer_scale = pos.r.half();
        let denom_scale = &pos.r * qc.abs() / (Rat::integer(2) * pc.abs());
        let q_tail = w_poly_tail(&q.taylor_shift(c), Strategy::II);
        children.push(p_tail.delta.at_scaled_eps(numer_scale.clone()));
        children.push(q_tail.delta.at_scaled_eps(denom_scale.clone()));
        derivation = derivation
            .fact("numer_scale", Fact::Rat(numer_scale))
            .fact("denom_scale", Fact::Rat(denom_scale))
            .child(p_tail.derivation)
            .child(q_tail.derivation);
    }
    let delta = DeltaExpr::min(children);
    let claim = Claim::new(f.clone(), Center::Finite(c.clone()), limit, Side::TwoSided);
    Ok(Witness::new(claim, delta, derivation))
}

/// `lim_{x -> inf} f(x)` through `g(t) = f(1/t)` at `0+`.
pub fn w_infinity(f: &RatFunc) -> Result<Witness, WitnessError> {
    w_infinity_expr(&f.to_expr(), f)
}

/// As [`w_infinity`], stating the claim for `e`, which must denote `f`.
pub fn w_infinity_expr(e: &Expr, f: &RatFunc) -> Result<Witness, WitnessError> {
    let g = f.infinity_substitute();
    if g.denom().eval(&Rat::zero()).is_zero() {
        return Err(WitnessError::NoFiniteLimit(format!(
            "{} grows without bound",
            e.display_with("x")
        )));
    }
    let inner = w_ratfunc_expr(&g.to_expr(), g.numer(), g.denom(), &Rat::zero())?;
    let claim = Claim::new(e.clone(), Center::Infinity, inner.claim.limit.clone(), Side::RightOnly);
    let derivation = Derivation::new(Rule::InfinityTransform)
        .fact("substituted", Fact::RatFunc(g))
        .child(inner.derivation);
    Ok(Witness::new(claim, inner.delta, derivation))
}

/// `lim_{t -> 0} (p(c + t) - p(c))/t = p'(c)` through the tail `sum_{j>=2} b_j t^(j-1)`.
pub fn w_derivative(p: &Poly, c: &Rat) -> Witness {
    let shifted = p.taylor_shift(c);
    let slope = shifted.coeff(1);
    let tail = shifted.without_constant().shift_down().without_constant();
    let child = w_poly_tail(&tail, Strategy::II);
    let moved = recentred_expr(&poly_to_expr(p), &Center::Finite(c.clone()));
    let quotient = Expr::div(Expr::sub(moved, Expr::Const(shifted.coeff(0))), Expr::Var);
    let claim = Claim::new(quotient, Center::zero(), slope.clone(), Side::TwoSided);
    let derivation = Derivation::new(Rule::Derivative)
        .fact("center", Fact::Rat(c.clone()))
        .fact("polynomial", Fact::Poly(p.clone()))
        .fact("shifted", Fact::Poly(shifted))
        .fact("slope", Fact::Rat(slope))
        .child(child.derivation);
    Witness::new(claim, child.delta, derivation)
}

/// `lim_{t -> 0} sin t = 0` with `delta = min{1, eps}`.
pub fn w_sin0() -> Witness {
    Witness::new(
        Claim::centered(Expr::sin(Expr::Var), Side::TwoSided),
        DeltaExpr::min(vec![DeltaExpr::Const(Rat::one()), DeltaExpr::Eps]),
        Derivation::new(Rule::Sin0),
    )
}

/// `f(a t) -> 0` from `f -> 0`, threshold divided by `|a|`.
pub fn w_arg_scale(a: &Rat, w: &Witness) -> Result<Witness, WitnessError> {
    require_centered(w, "argument scaling")?;
    if a.is_zero() {
        return Err(WitnessError::WrongClaimShape("argument scale must be nonzero".into()));
    }
    if a.is_negative() && w.claim.side == Side::RightOnly {
        return Err(WitnessError::MismatchedClaims(
            "a negative argument scale reverses a one-sided claim".into(),
        ));
    }
    let function = if a.is_one() {
        w.claim.function.clone()
    } else {
        w.claim.function.substitute(&Expr::mul(Expr::Const(a.clone()), Expr::Var))
    };
    let delta = DeltaExpr::scale(a.abs().recip().expect("nonzero"), w.delta.clone());
    let derivation = Derivation::new(Rule::ArgScale { a: a.clone() }).child(w.derivation.clone());
    Ok(Witness::new(Claim::centered(function, w.claim.side), delta, derivation))
}

/// `lim_{x -> c} (sin x - sin c) = 0`.
///
/// `sin(c + t) - sin c = -sin(c) 2 sin^2(t/2) + cos(c) sin t`, and both
/// coefficients are bounded by 1 in absolute value.
pub fn w_sin_at(c: &Rat) -> Witness {
    let halved = w_arg_scale(&half(), &w_sin0()).expect("centred");
    let square = w_product(&halved, &halved).expect("centred");
    let versine = w_scale(&Rat::integer(2), &square).expect("centred");
    let sum = w_sum(&versine, &w_sin0()).expect("centred");
    let function = Expr::sub(Expr::sin(Expr::Var), Expr::sin(Expr::Const(c.clone())));
    let claim = Claim::new(function, Center::Finite(c.clone()), Rat::zero(), Side::TwoSided);
    let derivation = Derivation::new(Rule::SinAt { c: c.clone() }).child(sum.derivation);
    Witness::new(claim, sum.delta, derivation)
}

/// `f + g -> L + M`.
pub fn w_general_sum(w1: &Witness, w2: &Witness) -> Result<Witness, WitnessError> {
    require_compatible(w1, w2)?;
    let left = w1.delta.at_scaled_eps(half());
    let right = w2.delta.at_scaled_eps(half());
    let claim = Claim::new(
        Expr::add(w1.claim.function.clone(), w2.claim.function.clone()),
        w1.claim.center.clone(),
        &w1.claim.limit + &w2.claim.limit,
        w1.claim.side,
    );
    let derivation = Derivation::new(Rule::GeneralSum)
        .fact("left", Fact::Delta(left.clone()))
        .fact("right", Fact::Delta(right.clone()))
        .child(w1.derivation.clone())
        .child(w2.derivation.clone());
    Ok(Witness::new(claim, DeltaExpr::min(vec![left, right]), derivation))
}

/// `k f -> k L`.
pub fn w_general_scalar(k: &Rat, w: &Witness) -> Witness {
    let derivation = Derivation::new(Rule::GeneralScalar { k: k.clone() }).child(w.derivation.clone());
    if k.is_zero() {
        let claim = Claim::new(Expr::int(0), w.claim.center.clone(), Rat::zero(), w.claim.side);
        return Witness::new(claim, DeltaExpr::Const(Rat::one()), derivation);
    }
    let claim = Claim::new(
        Expr::mul(Expr::Const(k.clone()), w.claim.function.clone()),
        w.claim.center.clone(),
        k * &w.claim.limit,
        w.claim.side,
    );
    let delta = w.delta.at_scaled_eps(k.abs().recip().expect("nonzero"));
    Witness::new(claim, delta, derivation)
}

/// `f - g -> L - M` as `f + (-1) g`.
pub fn w_general_difference(w1: &Witness, w2: &Witness) -> Result<Witness, WitnessError> {
    require_compatible(w1, w2)?;
    let negated = w_general_scalar(&Rat::integer(-1), w2);
    let sum = w_general_sum(w1, &negated)?;
    let claim = Claim::new(
        Expr::sub(w1.claim.function.clone(), w2.claim.function.clone()),
        w1.claim.center.clone(),
        &w1.claim.limit - &w2.claim.limit,
        w1.claim.side,
    );
    let derivation = Derivation::new(Rule::GeneralDifference).child(sum.derivation);
    Ok(Witness::new(claim, sum.delta, derivation))
}

/// `f g -> L M` from `fg - LM = (f - L)(g - M) + M(f - L) + L(g - M)`, with
/// `eps` split evenly among the `m` terms that do not vanish identically.
pub fn w_general_product(w1: &Witness, w2: &Witness) -> Result<Witness, WitnessError> {
    require_compatible(w1, w2)?;
    let l = &w1.claim.limit;
    let m_lim = &w2.claim.limit;
    let parts = 1 + i64::from(!m_lim.is_zero()) + i64::from(!l.is_zero());
    let share = Rat::new(1, parts);
    let cross = DeltaExpr::root(DeltaExpr::scale(share.clone(), DeltaExpr::Eps), 2);
    let mut children = vec![w1.delta.subst_eps(&cross), w2.delta.subst_eps(&cross)];
    if !m_lim.is_zero() {
        children.push(w1.delta.at_scaled_eps(&share / m_lim.abs()));
    }
    if !l.is_zero() {
        children.push(w2.delta.at_scaled_eps(&share / l.abs()));
    }
    let claim = Claim::new(
        Expr::mul(w1.claim.function.clone(), w2.claim.function.clone()),
        w1.claim.center.clone(),
        l * m_lim,
        w1.claim.side,
    );
    let derivation = Derivation::new(Rule::GeneralProduct)
        .fact("parts", Fact::Rat(Rat::integer(parts)))
        .child(w1.derivation.clone())
        .child(w2.derivation.clone());
    Ok(Witness::new(claim, DeltaExpr::min(children), derivation))
}

/// `f/g -> L/M` for `M != 0` via `g/M -> 1`, the reciprocal, and two products.
pub fn w_general_quotient(w_f: &Witness, w_g: &Witness) -> Result<Witness, WitnessError> {
    require_compatible(w_f, w_g)?;
    let m = &w_g.claim.limit;
    if m.is_zero() {
        return Err(WitnessError::ZeroLimitDenominator);
    }
    let inv_m = m.recip().expect("nonzero");
    let normalised = w_general_scalar(&inv_m, w_g);
    let recip = w_reciprocal(&normalised)?;
    let inv_g = w_general_scalar(&inv_m, &recip);
    let product = w_general_product(w_f, &inv_g)?;
    let claim = Claim::new(
        Expr::div(w_f.claim.function.clone(), w_g.claim.function.clone()),
        w_f.claim.center.clone(),
        &w_f.claim.limit / m,
        w_f.claim.side,
    );
    let derivation = Derivation::new(Rule::GeneralQuotient).child(product.derivation);
    Ok(Witness::new(claim, product.delta, derivation))
}
