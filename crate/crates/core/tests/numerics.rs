use num_bigint::BigInt;
use proptest::prelude::*;
use skeinlab::numerics::{binomial, factorial, multinomial};
use skeinlab::Rational;

#[test]
fn multinomial_of_two_parts_is_binomial() {
    for a in 0..=30u32 {
        for b in 0..=30u32 {
            assert_eq!(multinomial(a + b, &[a, b]).unwrap(), binomial(a + b, a as i64));
        }
    }
}

#[test]
fn factorials_and_binomials_by_hand() {
    assert_eq!(factorial(0), BigInt::from(1));
    assert_eq!(factorial(20), BigInt::from(2_432_902_008_176_640_000u64));
    assert_eq!(binomial(5, 7), BigInt::from(0));
    assert_eq!(binomial(5, -1), BigInt::from(0));
    // Pascal's rule rebuilds the table
    for n in 1..40u32 {
        for k in 1..n as i64 {
            assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn binomial_symmetry(n in 0u32..80, k in 0u32..80) {
        let k = k.min(n);
        prop_assert_eq!(binomial(n, k as i64), binomial(n, (n - k) as i64));
    }

    #[test]
    fn field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}
