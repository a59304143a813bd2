mod common;

use common::strategies::*;
use monoheight::numkit::primes::from_valuations;
use monoheight::numkit::{factor_rational, log_abs_at_place, log_abs_form, Interval, NegLogScalar, Place, Rat};
use num_traits::Signed;
use proptest::prelude::*;

fn places(x: &Rat) -> Vec<Place> {
    let mut v = vec![Place::Archimedean];
    v.extend(factor_rational(x).unwrap().into_keys().map(Place::Finite));
    v
}

proptest! {
    #[test]
    fn place_sum_is_symbolically_zero(x in nonzero_rat()) {
        let total = places(&x).iter().fold(monoheight::numkit::LogForm::zero(), |acc, v| acc.add(&log_abs_form(&x, v).unwrap()));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn place_sum_encloses_zero(x in nonzero_rat()) {
        let mut total = Interval::zero(128);
        for v in places(&x) {
            total = &total + &log_abs_at_place(&x, &v, 128).unwrap();
        }
        prop_assert!(total.contains_zero());
        prop_assert!(total.width().to_f64() < 1e-12);
    }

    #[test]
    fn factorization_round_trip(x in nonzero_rat()) {
        let back = from_valuations(&factor_rational(&x).unwrap());
        let back = if x.is_negative() { -back } else { back };
        prop_assert_eq!(back, x);
    }

    #[test]
    fn neg_log_order_is_reversed(a in 1i64..=10_000, b in 1i64..=10_000, d in 10_001i64..=20_000) {
        prop_assume!(a != b);
        let x = NegLogScalar::from_value(&Interval::from_rational(&Rat::new(a.into(), d.into()), 128));
        let y = NegLogScalar::from_value(&Interval::from_rational(&Rat::new(b.into(), d.into()), 128));
        prop_assert_eq!(x.certain_cmp(&y), Some(a.cmp(&b)));
        prop_assert_eq!(x.neg_log().certain_cmp(y.neg_log()), Some(b.cmp(&a)));
    }
}
