use num_rational::BigRational;
use proptest::prelude::*;
use symop::coeffs::{parse_coeff, Coeff, HalfLaurent};

fn laurent() -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec(((-2i32..=2, -2i32..=2), -3i64..=3), 1..4).prop_map(|ts| {
        HalfLaurent::from_terms(ts.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))))
    })
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| Coeff::from_fraction(n, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), Coeff::one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_idempotent(a in coeff()) {
        let again = Coeff::from_fraction(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(parse_coeff(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(parse_coeff(&a.to_string()).unwrap().to_string(), a.to_string());
    }

    #[test]
    fn substitute_is_a_ring_homomorphism(a in coeff(), b in coeff()) {
        let (qv, tv) = (BigRational::new(7.into(), 3.into()), BigRational::new(11.into(), 5.into()));
        if let (Ok(x), Ok(y)) = (a.substitute(&qv, &tv), b.substitute(&qv, &tv)) {
            prop_assert_eq!((&a * &b).substitute(&qv, &tv).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).substitute(&qv, &tv).unwrap(), &x + &y);
        }
    }

    #[test]
    fn power_shift_is_a_ring_homomorphism(a in coeff(), b in coeff(), k in prop::sample::select(vec![-2, -1, 2, 3])) {
        prop_assert_eq!((&a * &b).power_shift(k).unwrap(), &a.power_shift(k).unwrap() * &b.power_shift(k).unwrap());
        prop_assert_eq!((&a + &b).power_shift(k).unwrap(), &a.power_shift(k).unwrap() + &b.power_shift(k).unwrap());
    }
}
