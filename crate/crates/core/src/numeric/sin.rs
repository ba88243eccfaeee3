use num_bigint::BigInt;
use num_traits::One;

use super::{Interval, NumericError, Rat};

/// `sum_{k odd, k <= degree} (-1)^((k-1)/2) t^k / k!`, accumulated over the
/// common denominator `b^degree * degree!` for `t = a/b`.
fn partial_sum(t: &Rat, degree: u32) -> Rat {
    let a = t.numer();
    let b = t.denom();
    // term k has numerator a^k * b^(degree-k) * degree!/k!
    let mut numer = BigInt::from(0);
    let mut a_pow = a.clone();
    let mut k = 1u32;
    let mut sign_positive = true;
    while k <= degree {
        let mut fall = BigInt::one();
        for m in (k + 1)..=degree {
            fall *= BigInt::from(m);
        }
        let term = &a_pow * num_traits::pow(b.clone(), (degree - k) as usize) * fall;
        if sign_positive {
            numer += term;
        } else {
            numer -= term;
        }
        a_pow = &a_pow * a * a;
        k += 2;
        sign_positive = !sign_positive;
    }
    let mut fact = BigInt::one();
    for m in 2..=degree {
        fact *= BigInt::from(m);
    }
    let denom = num_traits::pow(b.clone(), degree as usize) * fact;
    Rat::from_bigints(numer, denom).expect("positive denominator")
}

/// Absolute value of the Taylor term `t^k / k!`.
fn term_magnitude(t: &Rat, k: u32) -> Rat {
    let mut fact = BigInt::one();
    for m in 2..=k {
        fact *= BigInt::from(m);
    }
    t.abs().pow(k) / Rat::from_bigint(fact)
}

fn odd_at_least(d: u32) -> u32 {
    if d % 2 == 0 {
        d + 1
    } else {
        d.max(1)
    }
}

/// Rigorous enclosure of `sin(t)` for `|t| <= 2` between the partial sums of
/// degree `degree` and `degree + 2`.
///
/// For `|t| <= 2` the Taylor terms decrease in magnitude from the first one
/// onwards, so consecutive partial sums of the alternating series bracket the
/// true value.
pub fn sin_enclosure(t: &Rat, degree: u32) -> Result<Interval, NumericError> {
    if t.abs() > Rat::integer(2) {
        return Err(NumericError::ArgumentOutOfRange(t.clone()));
    }
    if degree == 0 || degree % 2 == 0 {
        return Err(NumericError::BadDegree(degree));
    }
    Ok(bracket(t, degree))
}

fn bracket(t: &Rat, degree: u32) -> Interval {
    if t.is_zero() {
        return Interval::point(Rat::zero());
    }
    let low = partial_sum(t, degree);
    // next term is (-1)^((d+1)/2) t^(d+2) / (d+2)!, odd in t
    let sign_positive = ((degree + 1) / 2 % 2 == 0) != t.is_negative();
    let next = term_magnitude(t, degree + 2);
    let high = if sign_positive { &low + next } else { &low - next };
    Interval::hull(low, high)
}

/// Enclosure of `sin(t)` for any rational `t`.
///
/// Inside `|t| <= 2` this is exactly [`sin_enclosure`]. Outside, the degree is
/// raised until the terms decrease from `degree + 2` onwards and the bracket is
/// no wider than the `|t| = 2` bracket at the requested degree; the result is
/// intersected with `[-1, 1]`.
pub fn sin_enclosure_wide(t: &Rat, degree: u32) -> Interval {
    let degree = odd_at_least(degree);
    if t.abs() <= Rat::integer(2) {
        return bracket(t, degree);
    }
    let t2 = t.pow(2);
    let target = term_magnitude(&Rat::integer(2), degree + 2);
    let mut d = degree;
    loop {
        let decreasing = t2 < Rat::integer(((d + 3) * (d + 4)) as i64);
        if decreasing && term_magnitude(t, d + 2) <= target {
            break;
        }
        d += 2;
    }
    let unit = Interval::hull(Rat::integer(-1), Rat::one());
    let b = bracket(t, d);
    b.intersect(&unit).unwrap_or(b)
}

/// Enclosure of `sin` over a whole interval via the 1-Lipschitz bound around
/// the midpoint.
pub fn sin_enclosure_interval(x: &Interval, degree: u32) -> Interval {
    if x.is_point() {
        return sin_enclosure_wide(x.lo(), degree);
    }
    let mid = (x.lo() + x.hi()).half();
    let radius = x.width().half();
    let centre = sin_enclosure_wide(&mid, degree);
    let widened = Interval::hull(centre.lo() - &radius, centre.hi() + &radius);
    let unit = Interval::hull(Rat::integer(-1), Rat::one());
    widened.intersect(&unit).unwrap_or(widened)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive partial sum with per-term rational arithmetic.
    fn naive_partial(t: &Rat, degree: u32) -> Rat {
        let mut sum = Rat::zero();
        let mut k = 1;
        let mut sign = Rat::one();
        while k <= degree {
            sum = sum + &sign * t.pow(k) / Rat::from_bigint((1..=k).map(BigInt::from).product());
            sign = -sign;
            k += 2;
        }
        sum
    }

    #[test]
    fn zero_is_exact() {
        for d in [1, 3, 13] {
            assert_eq!(sin_enclosure(&Rat::zero(), d).unwrap(), Interval::point(Rat::zero()));
        }
    }

    #[test]
    fn sin_one_degree_nine() {
        let iv = sin_enclosure(&Rat::one(), 9).unwrap();
        let s9 = naive_partial(&Rat::one(), 9);
        let s11 = naive_partial(&Rat::one(), 11);
        assert_eq!(iv, Interval::hull(s9, s11));
        assert!(iv.width() < Rat::new(1, 100_000));
        // sin(1) = 0.8414709848078965...
        assert!(iv.contains(&Rat::new(8_414_709_848, 10_000_000_000)));
    }

    #[test]
    fn odd_symmetry() {
        for t in [Rat::new(1, 3), Rat::new(7, 4), Rat::integer(2)] {
            let pos = sin_enclosure(&t, 7).unwrap();
            let neg = sin_enclosure(&-&t, 7).unwrap();
            assert_eq!(neg, pos.neg());
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            sin_enclosure(&Rat::new(201, 100), 5),
            Err(NumericError::ArgumentOutOfRange(_))
        ));
        assert!(sin_enclosure(&Rat::one(), 4).is_err());
    }

    #[test]
    fn nested_refinement() {
        for n in -20..=20 {
            let t = Rat::new(n, 10);
            for d in [1, 3, 5, 9, 13] {
                let coarse = sin_enclosure(&t, d).unwrap();
                let fine = sin_enclosure(&t, d + 2).unwrap();
                assert!(coarse.contains_interval(&fine), "t={t} d={d}");
                assert!(fine.width() <= coarse.width());
            }
        }
    }

    #[test]
    fn partial_sum_matches_naive() {
        for n in [-17, -3, 1, 5, 19] {
            let t = Rat::new(n, 9);
            for d in [1, 3, 7, 15] {
                assert_eq!(partial_sum(&t, d), naive_partial(&t, d));
            }
        }
    }

    #[test]
    fn wide_arguments_are_bracketed() {
        // sin(5) = -0.9589242746631385, sin(10) = -0.5440211108893698
        let iv = sin_enclosure_wide(&Rat::integer(5), 13);
        assert!(iv.contains(&Rat::new(-9_589_242_746, 10_000_000_000)));
        assert!(iv.width() < Rat::new(1, 1_000_000));
        let iv = sin_enclosure_wide(&Rat::integer(-10), 13);
        assert!(iv.contains(&Rat::new(5_440_211_108, 10_000_000_000)));
    }

    #[test]
    fn interval_argument() {
        let x = Interval::hull(Rat::new(1, 2), Rat::new(3, 5));
        let iv = sin_enclosure_interval(&x, 13);
        // sin(0.5) = 0.4794255386, sin(0.6) = 0.5646424734
        assert!(iv.contains(&Rat::new(4_794_255_386, 10_000_000_000)));
        assert!(iv.contains(&Rat::new(5_646_424_733, 10_000_000_000)));
    }
}
