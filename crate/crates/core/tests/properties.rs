//! Property tests for the arithmetic substrate and the counting primitives.

use proptest::prelude::*;
use updown::biseries::{BiSeries, Monomial};
use updown::pattern::{count_bounded, occurrences_in, parse_pattern};
use updown::perm::{classify_slice, unrank, ClassLabel};
use num_traits::One;
use updown::series::{rat, LaurentSeries, Rat};

const ORDER: i64 = 12;

fn series_strategy() -> impl Strategy<Value = LaurentSeries> {
    (
        prop::collection::vec(-6i64..=6, 1..10),
        -3i64..=3,
    )
        .prop_map(|(coeffs, min_exp)| {
            LaurentSeries::from_coeffs(min_exp, coeffs.into_iter().map(rat).collect(), ORDER)
        })
}

fn unit_series_strategy() -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(-5i64..=5, 0..10).prop_map(|tail| {
        let mut coeffs = vec![Rat::one()];
        coeffs.extend(tail.into_iter().map(rat));
        LaurentSeries::from_coeffs(0, coeffs, ORDER)
    })
}

/// Truncate both sides to a common order before comparing.
fn eq_common(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let m = a.order().min(b.order());
    a.truncated(m) == b.truncated(m)
}

proptest! {
    #[test]
    fn series_ring_laws(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert!(eq_common(&a.add(&b), &b.add(&a)));
        prop_assert!(eq_common(&a.mul(&b), &b.mul(&a)));
        let left = a.add(&b).mul(&c);
        let right = a.mul(&c).add(&b.mul(&c));
        prop_assert!(eq_common(&left, &right));
    }

    #[test]
    fn division_undoes_multiplication(a in series_strategy(), b in series_strategy()) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).div(&b).unwrap();
        prop_assert!(eq_common(&q, &a));
    }

    #[test]
    fn sqrt_squares_back(a in unit_series_strategy()) {
        let s = a.sqrt().unwrap();
        prop_assert!(eq_common(&s.mul(&s), &a));
    }

    #[test]
    fn collapse_y_is_multiplicative(
        xa in 0i64..3, ya in -2i64..=2, xb in 0i64..3, yb in -2i64..=2,
        ex in 0i64..4, ey in -2i64..=2,
    ) {
        // (a·b) at y=1 equals (a at y=1)·(b at y=1)
        let a = BiSeries::from_monomial(&Monomial::new(xa, ya), ORDER, 16)
            .add(&BiSeries::from_monomial(&Monomial::new(ex, ey), ORDER, 16));
        let b = BiSeries::from_monomial(&Monomial::new(xb, yb), ORDER, 16)
            .add(&BiSeries::one(ORDER, 16));
        let lhs = a.mul(&b).collapse_y();
        let rhs = a.collapse_y().mul(&b.collapse_y());
        prop_assert!(eq_common(&lhs, &rhs));
    }

    #[test]
    fn bounded_pattern_count_is_exact_below_bound(
        n in 0usize..7,
        rank in 0u64..5040,
        pat_idx in 0usize..6,
        bound in 0u64..6,
    ) {
        let total = updown::perm::factorial(n);
        let e = unrank(n, rank % total.max(1));
        let texts = ["1-2", "21", "1-3-2", "23-1", "2-3-1", "12-3"];
        let t = parse_pattern(texts[pat_idx]).unwrap();
        let exact = occurrences_in(&e, &t);
        let bounded = count_bounded(&e, &t, bound);
        if exact <= bound {
            prop_assert_eq!(bounded, exact);
        } else {
            prop_assert!(bounded > bound);
        }
    }

    #[test]
    fn classification_is_a_partition(n in 2usize..7, rank in 0u64..5040) {
        let total = updown::perm::factorial(n);
        let e = unrank(n, rank % total);
        let label = classify_slice(&e);
        let shaped = ClassLabel::SHAPES.contains(&label);
        prop_assert!(shaped || label == ClassLabel::Unclassified);
        // membership in the union class is exactly the two rise-first labels
        let alternating = updown::perm::in_class(&e, ClassLabel::AlternatingAny);
        prop_assert_eq!(
            alternating,
            label == ClassLabel::UpUp || label == ClassLabel::UpDown
        );
    }
}
