mod common;

use common::strategies::*;
use monoheight::jordankit::{basis_from_profile, jordan_profile, limit_from_profile};
use monoheight::matkit::field::{mat_mul, rank, Mat};
use monoheight::matkit::IntMatrix;
use monoheight::numkit::{Interval, Quad};
use proptest::prelude::*;

fn to_quad(a: &IntMatrix) -> Mat<Quad> {
    a.rows().iter().map(|r| r.iter().map(|x| Quad::rational(x.clone().into())).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blocks_account_for_dimension(a in matrix_of_dim(2..=4, 4)) {
        let Ok(p) = jordan_profile(&a) else { return Err(TestCaseError::reject("moduli not separated")) };
        let total: usize = p.factors.iter().map(|f| f.poly.deg() * f.blocks.iter().sum::<usize>()).sum();
        prop_assert_eq!(total, a.n());
        prop_assert!(p.rbar >= p.r && p.r >= 1);
        let top = p.factors.iter().filter(|f| f.has_max_modulus_root).map(|f| f.max_block()).max().unwrap();
        prop_assert_eq!(p.l + 1, top);
    }

    #[test]
    fn limit_matrix_absorbs_the_period(a in matrix_of_dim(2..=3, 4)) {
        let Ok(p) = jordan_profile(&a) else { return Err(TestCaseError::reject("moduli not separated")) };
        let Ok(b) = limit_from_profile(&a, &p, 1e-12) else { return Err(TestCaseError::reject("no real limit")) };
        let n = a.n();
        let bi = b.intervals(128);
        let am = a.pow(b.m);
        let rho_m = b.rho.interval(128).pow_u(b.m as u64);
        for i in 0..n {
            for k in 0..n {
                let lhs = (0..n).fold(Interval::zero(128), |acc, j| &acc + &(&bi[i][j] * &Interval::from_bigint(am.get(j, k), 128)));
                let rhs = &rho_m * &bi[i][k];
                prop_assert!(lhs.overlaps(&rhs), "entry ({}, {}): {} vs {}", i, k, lhs, rhs);
            }
        }
        if let Some(e) = b.exact_entries() {
            prop_assert_eq!(rank(&e), p.r);
        }
    }

    #[test]
    fn jordan_basis_conjugates(a in matrix_of_dim(2..=4, 3)) {
        let Ok(p) = jordan_profile(&a) else { return Err(TestCaseError::reject("moduli not separated")) };
        let Ok(d) = basis_from_profile(&a, &p) else { return Err(TestCaseError::reject("outside Q(sqrt d)")) };
        prop_assert!(!d.det_j.is_zero());
        prop_assert_eq!(mat_mul(&to_quad(&a), &d.j), mat_mul(&d.j, &d.jordan_form()));
    }

    #[test]
    fn powers_keep_block_excess(a in matrix_of_dim(2..=3, 4), k in 2u32..=3) {
        let (Ok(p), Ok(q)) = (jordan_profile(&a), jordan_profile(&a.pow(k))) else {
            return Err(TestCaseError::reject("moduli not separated"));
        };
        prop_assert_eq!(p.l, q.l);
        prop_assert!(p.rho.pow(k).interval(128).overlaps(&q.rho.interval(128)));
    }
}
