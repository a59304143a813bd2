mod common;

use common::strategies::*;
use common::*;
use monoheight::bakerkit::{baker_bound, baker_inputs, c11, c11_log_form, constants_from_inputs, height_pair, BakerInputs};
use monoheight::heightkit::{canonical_height_closed, classify_orbit, OrbitVerdict, PointGm, DEFAULT_ORBIT_BUDGET};
use monoheight::numkit::{AlgebraicScalar, Interval, Quad, Rat};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn base_inputs() -> BakerInputs {
    baker_inputs(&jordan2(), &pt(&[(2, 1), (3, 1)]), 128).unwrap().0
}

fn neg_log(inp: &BakerInputs) -> Interval {
    constants_from_inputs(inp, inp.l).unwrap().c.neg_log().clone()
}

fn bump(x: &Interval, num: i64, den: i64) -> Interval {
    x + &Interval::from_rational(&Rat::new(num.into(), den.into()), 128)
}

/// Points with infinite orbit under the Jordan block: second coordinate off `{1, -1}`.
fn jordan_point() -> impl Strategy<Value = PointGm> {
    (coord(), coord()).prop_filter("torsion second coordinate", |(_, (n, d))| n.abs() != *d).prop_map(|(a, b)| pt(&[a, b]))
}

#[test]
fn c11_increases_and_matches_its_log() {
    let mut prev = BigInt::from(0);
    for n in 1..=120u64 {
        let c = c11(n).unwrap();
        assert!(c > prev, "n = {n}");
        // (8n + 53) log 2 + 2n log n, evaluated in floating point
        let oracle = (8 * n + 53) as f64 * 2f64.ln() + 2.0 * n as f64 * (n as f64).ln();
        let form = c11_log_form(n).unwrap().to_f64();
        assert!((form - oracle).abs() < 1e-9 * oracle, "n = {n}");
        let exact = (BigInt::from(1) << (8 * n + 53)) * num_traits::pow(BigInt::from(n), 2 * n as usize);
        assert_eq!(c, exact, "n = {n}");
        prev = c;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constants_grow_with_height(num in 1i64..=400, den in 1i64..=40) {
        let a = base_inputs();
        let b = BakerInputs { h_k: bump(&a.h_k, num, den), h: bump(&a.h, num, den), ..a.clone() };
        prop_assert!(!neg_log(&b).certainly_lt(&neg_log(&a)));
    }

    #[test]
    fn constants_grow_with_rank_and_dimension(dr in 0usize..=3, dn in 0usize..=3) {
        let a = base_inputs();
        let b = BakerInputs { r: a.r + dr, n: a.n + dn, ..a.clone() };
        prop_assert!(!neg_log(&b).certainly_lt(&neg_log(&a)));
    }

    #[test]
    fn constants_grow_with_basis_heights(num in 1i64..=400, den in 1i64..=40) {
        let a = base_inputs();
        let b = BakerInputs { log_c_a: bump(&a.log_c_a, num, den), ..a.clone() };
        prop_assert!(!neg_log(&b).certainly_lt(&neg_log(&a)));
    }

    #[test]
    fn naive_height_is_bounded(a in -50i64..=50, b in -50i64..=50, den in 1i64..=20, d in 2i64..=30) {
        let q = |x: i64| BigRational::new(x.into(), den.into());
        let x = AlgebraicScalar::new(Quad::new(q(a), q(b), &BigInt::from(d)));
        let hp = height_pair(&x, 128);
        prop_assert!(hp.bound_holds);
        // independent floating-point check of H <= (2 H_mult)^deg
        let bound = (2.0 * hp.h_mult.to_f64()).powi(x.degree() as i32);
        prop_assert!(hp.h.to_string().parse::<f64>().unwrap() <= bound * (1.0 + 1e-12));
        prop_assert!(hp.h_mult.to_f64() >= 1.0 - 1e-12);
    }

    #[test]
    fn height_exceeds_the_jordan_bound(p in jordan_point()) {
        let a = jordan2();
        let v = classify_orbit(std::slice::from_ref(&a), &p, DEFAULT_ORBIT_BUDGET).unwrap();
        prop_assert!(matches!(v, OrbitVerdict::Infinite(_)));
        let h = canonical_height_closed(&a, &p, 1e-12).unwrap();
        let b = baker_bound(&a, &p, 128).unwrap();
        prop_assert!(b.constants().c.log_margin_below(&h.value).is_positive());
    }

    #[test]
    fn height_exceeds_the_irreducible_bound(p in point(2)) {
        let a = fib();
        let v = classify_orbit(std::slice::from_ref(&a), &p, DEFAULT_ORBIT_BUDGET).unwrap();
        prop_assume!(matches!(v, OrbitVerdict::Infinite(_)));
        let h = canonical_height_closed(&a, &p, 1e-12).unwrap();
        let b = baker_bound(&a, &p, 128).unwrap();
        prop_assert!(b.constants().c.log_margin_below(&h.value).is_positive());
    }
}
