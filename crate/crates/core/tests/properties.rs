use gamma_series::digits::{self, WordSpec};
use gamma_series::kernels::{addison_weight, kernel_p, kernel_q, kernel_qtilde_forms};
use gamma_series::numerics::{round_div, ExactRational, FixedReal};
use gamma_series::sequences::{coefficient, coefficient_recursive, word_params, SeriesParams};
use num_bigint::BigInt;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SeriesParams> {
    (1u64..=4, 1u64..=3, 0u32..=1, prop_oneof![Just((1i64, 1i64)), Just((-1, 1)), Just((1, 2)), Just((-1, 3))], 2u32..=5)
        .prop_filter_map("z = 1 needs l = 0", |(a, b, l, (zn, zd), base)| {
            SeriesParams::new(a, b, l, ExactRational::fraction(zn, zd), base).ok()
        })
}

proptest! {
    #[test]
    fn qtilde_forms_agree(k in 1u64..5000, base in 2u32..=16) {
        let (difference, direct) = kernel_qtilde_forms(k, base);
        prop_assert_eq!(difference, direct);
    }

    #[test]
    fn addison_weight_is_q_minus_correction(k in 1u64..5000, base in 2u32..=16) {
        let b = base as i64;
        let correction = ExactRational::fraction(b - 1, BigInt::from(2 * b) * k * (k + 1));
        prop_assert_eq!(addison_weight(k, base), kernel_q(k, base) - correction);
    }

    #[test]
    fn p_is_a_positive_integer(k in 1u64..2000, base in 2u32..=12) {
        let p = kernel_p(k, base);
        prop_assert!(p.is_integer() && p.is_positive());
    }

    #[test]
    fn prefix_sum_matches_recursion(p in params(), k in 1u64..100_000) {
        prop_assert_eq!(coefficient(&p, k), coefficient_recursive(&p, k));
    }

    #[test]
    fn word_coefficient_counts_occurrences(letters in prop::collection::vec(0u32..3, 1..4), k in 1u64..200_000) {
        let word = WordSpec::new(3, letters).unwrap();
        let n = digits::count_occurrences(&word, k);
        prop_assert_eq!(coefficient(&word_params(&word), k), ExactRational::from(n));
    }

    #[test]
    fn epsilon_block_sums_to_q(k in 1u64..10_000, base in 2u32..=10) {
        let b = base as u64;
        let block: ExactRational = (0..b)
            .map(|j| ExactRational::fraction(digits::epsilon(k * b + j, base), k * b + j))
            .sum();
        prop_assert_eq!(block, kernel_q(k, base));
    }

    #[test]
    fn expansion_reconstructs(n in 1u64..u64::MAX / 64, base in 2u32..=36) {
        let ds = digits::expand(n, base);
        prop_assert_eq!(ds.len() as u32, digits::length(n, base));
        let back = ds.iter().fold(0u64, |acc, &d| acc * base as u64 + d as u64);
        prop_assert_eq!(back, n);
    }

    #[test]
    fn fixed_arithmetic_encloses_exact(xn in -10_000i64..10_000, xd in 1i64..1000, yn in -10_000i64..10_000, yd in 1i64..1000, scale in 5u32..40) {
        let x = ExactRational::fraction(xn, xd);
        let y = ExactRational::fraction(yn, yd);
        let fx = FixedReal::from_rational(&x, scale);
        let fy = FixedReal::from_rational(&y, scale);
        prop_assert!(fx.add(&fy).contains(&(&x + &y)));
        prop_assert!(fx.sub(&fy).contains(&(&x - &y)));
        prop_assert!(fx.mul(&fy).contains(&(&x * &y)));
        if !y.is_zero() {
            prop_assert!(fx.div(&fy).unwrap().contains(&x.checked_div(&y).unwrap()));
        }
    }

    #[test]
    fn round_div_is_nearest(n in -1_000_000i64..1_000_000, d in 1i64..1000) {
        let r = round_div(&BigInt::from(n), &BigInt::from(d));
        let err: BigInt = (BigInt::from(n) - &r * d) * 2;
        prop_assert!(err.magnitude() <= BigInt::from(d).magnitude());
    }
}
