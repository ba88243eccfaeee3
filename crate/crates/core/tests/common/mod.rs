#![allow(dead_code)]

use fizzle::algebra::{Expr, Poly, RatFunc};
use fizzle::numeric::Rat;
use fizzle::syntax::parse_expression;
use fizzle::witness::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn poly(coeffs: &[i64]) -> Poly {
    Poly::from_ints(coeffs)
}

pub fn expr(src: &str) -> Expr {
    parse_expression(src).unwrap()
}

pub fn auto(src: &str, center: Center) -> Witness {
    w_auto(&expr(src), &center, &LimitSpec::Auto, Strategy::II).unwrap()
}

pub fn worked_polynomial() -> Witness {
    auto("x^2+3*x", Center::Finite(Rat::one()))
}

pub fn worked_rational() -> Witness {
    auto("(x+1)/((x-1)*(x^2+1))", Center::Finite(Rat::integer(2)))
}

pub fn worked_infinity() -> Witness {
    auto("(2*x+1)/(3*x-4)", Center::Infinity)
}

/// Every constructor and combinator, instantiated on small examples.
pub fn constructor_matrix() -> Vec<(&'static str, Witness)> {
    let id = w_identity();
    let sq = w_product(&id, &id).unwrap();
    let neg_sq = w_scale(&Rat::integer(-1), &sq).unwrap();
    let one_plus_t = w_poly(&poly(&[1, 1]), &Rat::zero(), Strategy::II);
    let at_one = |p: &[i64]| w_poly(&poly(p), &Rat::one(), Strategy::II);
    let f = at_one(&[1, 1]);
    let g = at_one(&[3, 0, 1]);
    let h = at_one(&[-1, 1]);
    vec![
        ("identity", id.clone()),
        ("sum", w_sum(&id, &sq).unwrap()),
        ("scale", w_scale(&Rat::integer(3), &id).unwrap()),
        ("scale_zero", w_scale(&Rat::zero(), &id).unwrap()),
        ("product", sq.clone()),
        ("reciprocal", w_reciprocal(&one_plus_t).unwrap()),
        (
            "squeeze",
            w_squeeze(&neg_sq, &sq, &Rat::one(), &expr("x^2*sin(x)")).unwrap(),
        ),
        (
            "recenter",
            w_recenter(
                &w_poly_tail(&poly(&[0, 5, 1]), Strategy::II),
                Center::Finite(Rat::one()),
                &Rat::integer(4),
                &expr("x^2+3*x"),
            )
            .unwrap(),
        ),
        ("poly_ii", w_poly(&poly(&[0, 3, 1]), &Rat::one(), Strategy::II)),
        ("poly_i", w_poly(&poly(&[0, 3, 1]), &Rat::one(), Strategy::I)),
        ("poly_tail", w_poly_tail(&poly(&[0, -2, 0, 3]), Strategy::I)),
        ("poly_constant", w_poly(&poly(&[7]), &r(-3, 2), Strategy::II)),
        (
            "ratfunc",
            w_ratfunc(&poly(&[1, 1]), &poly(&[-1, 1]).mul(&poly(&[1, 0, 1])), &Rat::integer(2)).unwrap(),
        ),
        (
            "ratfunc_zero_numerator",
            w_ratfunc(&poly(&[-1, 1]), &poly(&[1, 1]), &Rat::one()).unwrap(),
        ),
        (
            "infinity",
            w_infinity(&RatFunc::new(poly(&[1, 2]), poly(&[-4, 3])).unwrap()).unwrap(),
        ),
        (
            "infinity_quadratic",
            w_infinity(&RatFunc::new(poly(&[1, 0, 1]), poly(&[0, -1, 2])).unwrap()).unwrap(),
        ),
        ("derivative", w_derivative(&poly(&[0, 0, 0, 1]), &Rat::integer(2))),
        ("sin0", w_sin0()),
        ("arg_scale", w_arg_scale(&Rat::integer(-3), &w_sin0()).unwrap()),
        ("sin_at", w_sin_at(&Rat::one())),
        ("sin_at_negative", w_sin_at(&r(-5, 2))),
        ("general_sum", w_general_sum(&f, &g).unwrap()),
        ("general_scalar", w_general_scalar(&r(-2, 3), &g)),
        ("general_difference", w_general_difference(&f, &h).unwrap()),
        ("general_product", w_general_product(&f, &g).unwrap()),
        ("general_product_vanishing", w_general_product(&h, &h).unwrap()),
        ("general_quotient", w_general_quotient(&f, &g).unwrap()),
        ("auto_sin_composite", auto("x*sin(2*x-2) + 3", Center::Finite(Rat::one()))),
        ("auto_sin_quotient", auto("sin(x)^2/(1+x)", Center::zero())),
        ("auto_rational", auto("(x^2-1)/(x+2)", Center::Finite(r(-1, 2)))),
        ("auto_polynomial_infinity", auto("7", Center::Infinity)),
    ]
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let deg = rng.gen_range(0..=3);
    Poly::new((0..=deg).map(|_| Rat::integer(rng.gen_range(-5..=5))).collect())
}

/// Seeded random composites of polynomial witnesses under the general combinators.
pub fn random_composites(n: usize, seed: u64) -> Vec<(String, Witness)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let c = r(rng.gen_range(-6..=6), 2);
        let strategy = if rng.gen_bool(0.5) { Strategy::I } else { Strategy::II };
        let p1 = random_poly(&mut rng);
        let p2 = random_poly(&mut rng);
        let w1 = w_poly(&p1, &c, strategy);
        let w2 = w_poly(&p2, &c, Strategy::II);
        let op = rng.gen_range(0..5);
        let w = match op {
            0 => w_general_sum(&w1, &w2),
            1 => w_general_difference(&w1, &w2),
            2 => w_general_product(&w1, &w2),
            3 => w_general_quotient(&w1, &w2),
            _ => Ok(w_general_scalar(&Rat::integer(rng.gen_range(-4..=4)), &w1)),
        };
        // quotients by a vanishing limit are rejected by design
        let Ok(w) = w else { continue };
        let label = format!("op {op} on {p1:?}, {p2:?} at {c}");
        out.push((label, w));
    }
    out
}
