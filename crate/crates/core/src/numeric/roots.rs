use num_bigint::{BigInt, BigUint, Sign};

use super::Rat;

/// Largest multiple `r` of `2^-precision_bits` with `r^j <= q`.
///
/// The result satisfies `r^j <= q < (r + 2^-precision_bits)^j`; for `j == 1`
/// the input is returned unchanged. Negative `q` is clamped to zero.
pub fn root_lower_bound(q: &Rat, j: u32, precision_bits: u32) -> Rat {
    assert!(j >= 1, "root index must be positive");
    if j == 1 {
        return q.clone();
    }
    if !q.is_positive() {
        return Rat::zero();
    }
    let (_, num, den) = q.parts();
    // floor(q * 2^(bits*j)) then an integer j-th root
    let shifted: BigUint = (num << (precision_bits as usize * j as usize)) / den;
    let root = shifted.nth_root(j);
    Rat::from_bigints(
        BigInt::from_biguint(Sign::Plus, root),
        BigInt::from(1u8) << precision_bits as usize,
    )
    .expect("power of two is nonzero")
}

/// Like [`root_lower_bound`] but raises the precision until the bound is
/// strictly positive. The effective precision is `max(precision_bits, b*)`
/// where `b*` is the least precision giving a nonzero bound, so the result
/// stays monotone in both `q` and `precision_bits`.
pub fn positive_root_lower_bound(q: &Rat, j: u32, precision_bits: u32) -> Rat {
    let mut bits = precision_bits;
    loop {
        let r = root_lower_bound(q, j, bits);
        if !r.is_zero() || q.is_zero() || q.is_negative() {
            return r;
        }
        bits += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Bisection over dyadic rationals; independent of the integer-root path.
    fn bisect_root(q: &Rat, j: u32, bits: u32) -> Rat {
        let mut lo = Rat::zero();
        let mut hi = q.clone().max(Rat::one());
        let step = Rat::dyadic(1, bits);
        // invariant: lo^j <= q < hi^j once hi has been seen to exceed
        while &hi - &lo > step {
            let mid = (&lo + &hi).half();
            if mid.pow(j) <= *q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn perfect_square_is_exact() {
        assert_eq!(root_lower_bound(&Rat::new(9, 4), 2, 32), Rat::new(3, 2));
    }

    #[test]
    fn zero_has_zero_root() {
        assert_eq!(root_lower_bound(&Rat::zero(), 5, 32), Rat::zero());
    }

    #[test]
    fn first_root_is_identity() {
        let q = Rat::new(7, 13);
        assert_eq!(root_lower_bound(&q, 1, 8), q);
    }

    #[test]
    fn sqrt_two_brackets() {
        let r = root_lower_bound(&Rat::integer(2), 2, 20);
        let two = Rat::integer(2);
        assert!(r.pow(2) <= two);
        assert!((&r + Rat::dyadic(1, 20)).pow(2) > two);
        let oracle = bisect_root(&two, 2, 20);
        assert!(oracle.pow(2) <= two);
        assert!((&r - &oracle).abs() <= Rat::dyadic(1, 20));
    }

    #[test]
    fn positive_bound_bumps_precision() {
        let tiny = Rat::dyadic(1, 200);
        assert!(root_lower_bound(&tiny, 2, 16).is_zero());
        let r = positive_root_lower_bound(&tiny, 2, 16);
        assert!(r.is_positive());
        assert!(r.pow(2) <= tiny);
    }

    proptest! {
        #[test]
        fn bracket_holds(n in 0i64..100_000, d in 1i64..5_000, j in 1u32..6, bits in 4u32..48) {
            let q = Rat::new(n, d);
            let r = root_lower_bound(&q, j, bits);
            prop_assert!(!r.is_negative());
            prop_assert!(r.pow(j) <= q);
            if j > 1 {
                prop_assert!((&r + Rat::dyadic(1, bits)).pow(j) > q);
            }
        }

        #[test]
        fn monotone_in_q_and_bits(n in 0i64..10_000, extra in 0i64..500, d in 1i64..90, j in 2u32..5, bits in 4u32..40) {
            let q1 = Rat::new(n, d);
            let q2 = Rat::new(n + extra, d);
            prop_assert!(root_lower_bound(&q1, j, bits) <= root_lower_bound(&q2, j, bits));
            prop_assert!(root_lower_bound(&q1, j, bits) <= root_lower_bound(&q1, j, bits + 7));
            prop_assert!(positive_root_lower_bound(&q1, j, bits) <= positive_root_lower_bound(&q1, j, bits + 7));
        }
    }
}
