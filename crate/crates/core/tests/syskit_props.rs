mod common;

use common::strategies::*;
use common::*;
use monoheight::heightkit::{
    canonical_height_truncated, classify_orbit, Normalization, Normalizer, OrbitVerdict, DEFAULT_ORBIT_BUDGET,
};
use monoheight::matkit::IntMatrix;
use monoheight::numkit::{Interval, Quad};
use monoheight::syskit::{certify_star, growth_table, SystemF, DEFAULT_WORD_BUDGET};
use num_bigint::BigInt;
use proptest::prelude::*;

fn system(n: usize, k: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = SystemF> {
    proptest::collection::vec(matrix(n, bound), k).prop_map(|ms| SystemF::new(ms).unwrap())
}

fn diagonal_system() -> impl Strategy<Value = (SystemF, i64)> {
    let entry = prop_oneof![-5i64..=-1, 1i64..=5];
    proptest::collection::vec(proptest::collection::vec(entry, 2), 1..=3).prop_map(|ds| {
        let rho = ds.iter().flatten().map(|x| x.abs()).max().unwrap();
        (SystemF::new(ds.iter().map(|d| IntMatrix::diag(d).unwrap()).collect()).unwrap(), rho)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn max_degree_is_submultiplicative(sys in (2usize..=3).prop_flat_map(|n| system(n, 1..=3, 3))) {
        let t = growth_table(&sys, 6, DEFAULT_WORD_BUDGET).unwrap();
        let deg = |n: usize| &t.rows[n - 1].max_degree;
        for m in 1..t.rows.len() {
            for n in 1..=t.rows.len() - m {
                prop_assert!(deg(m + n) <= &(deg(m) * deg(n)), "m = {}, n = {}", m, n);
            }
        }
        prop_assert!(!t.upper.certainly_lt(&t.lower));
        prop_assert!(!t.lower.certainly_lt(&Interval::one(128)));
    }

    #[test]
    fn diagonal_growth_is_exact((sys, rho) in diagonal_system()) {
        let t = growth_table(&sys, 6, DEFAULT_WORD_BUDGET).unwrap();
        for row in &t.rows {
            prop_assert_eq!(row.rho.exact.clone(), Some(Quad::rational(BigInt::from(rho).pow(row.n as u32).into())));
        }
    }

    #[test]
    fn certified_degree_matches_dominating_map((sys, _) in diagonal_system()) {
        let cert = certify_star(&sys, 6, DEFAULT_WORD_BUDGET);
        let delta = cert.certified_delta().expect("diagonal systems are certified");
        let psi = cert.psi_rho.as_ref().unwrap();
        prop_assert_eq!(cert.t, 1);
        prop_assert!(delta.interval(128).overlaps(&psi.interval(128)));
    }

    #[test]
    fn finite_torsion_orbits_have_zero_estimates(sys in (2usize..=3).prop_flat_map(|n| system(n, 1..=3, 3)), signs in any::<u8>()) {
        let n = sys.dim();
        let c: Vec<(i64, i64)> = (0..n).map(|j| (if signs >> j & 1 == 1 { -1 } else { 1 }, 1)).collect();
        let p = pt(&c);
        let v = classify_orbit(sys.matrices(), &p, DEFAULT_ORBIT_BUDGET).unwrap();
        let OrbitVerdict::Finite { .. } = v else { return Err(TestCaseError::fail(format!("torsion point {p} not finite"))) };
        let table = growth_table(&sys, 4, DEFAULT_WORD_BUDGET).unwrap();
        let norm = Normalizer { delta: table.lower.clone(), l: 0 };
        for nz in [Normalization::Averaged, Normalization::Summed] {
            let t = canonical_height_truncated(sys.matrices(), &p, 5, nz, &norm, DEFAULT_WORD_BUDGET).unwrap();
            prop_assert!(t.identically_zero_from(1));
        }
    }
}
