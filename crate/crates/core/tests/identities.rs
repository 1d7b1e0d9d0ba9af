//! Sweeps of the termirial identities over their stated ranges.

use num_bigint::BigUint;
use proptest::prelude::*;
use termirial_core::{
    binomial, convolution_terms, pascal_check, termirial, termirial_p, termirial_p_binomial,
    Natural, Order,
};

fn o(p: i64) -> Order {
    Order::new(p).unwrap()
}

#[test]
fn product_form_equals_binomial_form() {
    for n in 1..=30 {
        for p in -1..=8 {
            assert_eq!(
                termirial_p(n, o(p)),
                termirial_p_binomial(n, o(p)),
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn recurrence_over_lower_order() {
    for n in 1..=30u64 {
        for p in 0..=6 {
            let sum: Natural = (1..=n).map(|k| termirial_p(k, o(p - 1))).sum();
            assert_eq!(termirial_p(n, o(p)), sum, "n={n} p={p}");
        }
    }
}

#[test]
fn pascal_rule_sweep() {
    for n in 1..=50 {
        for p in -1..=10 {
            let (l, r) = pascal_check(n, o(p));
            assert_eq!(l, r, "n={n} p={p}");
        }
    }
}

#[test]
fn convolution_sweep() {
    for n in 1..=15 {
        for m in 1..=15 {
            for p in -1..=7 {
                let terms = convolution_terms(n, m, o(p));
                assert_eq!(terms.len() as i64, p + 2);
                let sum: Natural = terms.into_iter().sum();
                assert_eq!(sum, termirial_p(n + m, o(p)), "n={n} m={m} p={p}");
            }
        }
    }
}

#[test]
fn first_order_split() {
    for n in 1..=50u64 {
        for m in 1..=50u64 {
            assert_eq!(
                termirial(n + m),
                termirial(n) + BigUint::from(n * m) + termirial(m)
            );
        }
    }
}

#[test]
fn doubled_termirial() {
    for n in 1..=50u64 {
        assert_eq!(termirial(n) * 2u32, BigUint::from(n * (n + 1)));
    }
}

#[test]
fn binomial_symmetry() {
    for n in 0..=40 {
        for k in 0..=n {
            assert_eq!(binomial(n, k), binomial(n, n - k));
        }
    }
}

#[test]
fn monotonicity() {
    for p in 0..=8 {
        for n in 2..20 {
            assert!(
                termirial_p(n + 1, o(p)) > termirial_p(n, o(p)),
                "n={n} p={p}"
            );
        }
    }
    for n in 2..=20 {
        for p in 0..8 {
            assert!(
                termirial_p(n, o(p + 1)) > termirial_p(n, o(p)),
                "n={n} p={p}"
            );
        }
    }
    for p in -1..8 {
        assert_eq!(termirial_p(1, o(p + 1)), termirial_p(1, o(p)));
    }
}

proptest! {
    #[test]
    fn closed_forms_agree_at_scale(n in 0u64..100_000, p in -1i64..40) {
        prop_assert_eq!(termirial_p(n, o(p)), termirial_p_binomial(n, o(p)));
    }

    #[test]
    fn convolution_at_scale(n in 0u64..10_000, m in 0u64..10_000, p in -1i64..20) {
        let sum: Natural = convolution_terms(n, m, o(p)).into_iter().sum();
        prop_assert_eq!(sum, termirial_p(n + m, o(p)));
    }

    #[test]
    fn pascal_at_scale(n in 0u64..1_000_000, p in -1i64..30) {
        let (l, r) = pascal_check(n, o(p));
        prop_assert_eq!(l, r);
    }
}
