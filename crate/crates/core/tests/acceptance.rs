//! Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use monoheight::bakerkit::{baker_bound, c11};
use monoheight::heightkit::{
    canonical_height_closed, canonical_height_truncated, classify_orbit, eval_monomial, eval_monomial_capped,
    log_profile, transport_profile, Normalization, Normalizer, OrbitVerdict, PointGm, DEFAULT_ORBIT_BUDGET,
    DEFAULT_WORD_BUDGET,
};
use monoheight::jordankit::jordan_profile;
use monoheight::matkit::{IntMatrix, IntPoly};
use monoheight::numkit::{factor_rational, log_abs_form, LogForm, Place, Quad};
use monoheight::syskit::{
    certify_star, growth_table, reduction_check, system_report, ReportOptions, StarStatus, SystemF,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn corpus(seed: u64, count: usize) -> Vec<(IntMatrix, IntMatrix, PointGm)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            (random_matrix(&mut rng, n, 3), random_matrix(&mut rng, n, 3), random_point(&mut rng, n))
        })
        .collect()
}

fn composition() -> Outcome {
    for (i, (a, b, p)) in corpus(1, 200).iter().enumerate() {
        let lhs = eval_monomial(&a.mul(b).unwrap(), p).map_err(|e| e.to_string())?;
        let rhs = eval_monomial(a, &eval_monomial(b, p).unwrap()).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, format!("case {i}: {lhs} != {rhs}"))?;
    }
    Ok("200 triples, exact".into())
}

fn transport() -> Outcome {
    let mut checked = 0;
    for (i, (a, _, p)) in corpus(1, 200).iter().enumerate() {
        let prof = log_profile(p).unwrap();
        let mut direct = p.clone();
        for n in 1..=6u32 {
            direct = eval_monomial_capped(a, &direct, 1 << 26).map_err(|e| format!("case {i}, n = {n}: {e}"))?;
            let moved = transport_profile(&a.pow(n), &prof).map_err(|e| e.to_string())?;
            ensure(moved == log_profile(&direct).unwrap(), format!("case {i}, n = {n}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (A^n, P) pairs, exact"))
}

fn truncated40(a: &IntMatrix, p: &PointGm) -> Vec<(Normalization, f64)> {
    let norm = Normalizer::single_map(a).unwrap();
    [Normalization::Averaged, Normalization::Summed]
        .into_iter()
        .map(|nz| {
            let t = canonical_height_truncated(std::slice::from_ref(a), p, 40, nz, &norm, DEFAULT_WORD_BUDGET).unwrap();
            (nz, t.estimate.to_f64())
        })
        .collect()
}

fn closed_forms() -> Outcome {
    let l2 = 2f64.ln();
    let l3 = 3f64.ln();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let p = pt(&[(2, 1), (3, 1)]);
    let cases = [
        ("diag(2,3)", diag23(), l3),
        ("[[1,1],[0,1]]", unipotent(), l3),
        ("fibonacci", fib(), (phi * l2 + l3) / 5f64.sqrt()),
    ];
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (name, a, oracle) in cases {
        let h = canonical_height_closed(&a, &p, 1e-12).unwrap();
        let hv = h.value.to_f64();
        if (hv - oracle).abs() > 1e-9 {
            failures.push(format!("{name}: closed {hv} vs oracle {oracle}"));
        }
        for (nz, est) in truncated40(&a, &p) {
            let err = (est - hv).abs();
            if err > 1e-9 {
                failures.push(format!("{name}: {} estimator at n = 40 is off by {err:.3e}", nz.name()));
            }
        }
        detail.push(format!("{name} = {hv:.12}"));
    }
    if failures.is_empty() {
        Ok(detail.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn step_relation() -> Outcome {
    let p = pt(&[(2, 1), (3, 1)]);
    let cases: [(IntMatrix, &[u32]); 4] = [
        (diag23(), &[1, 2, 3]),
        (unipotent(), &[1, 2, 3]),
        (fib(), &[1, 2, 3]),
        (m(&[&[-2, 0], &[0, 1]]), &[2, 4]),
    ];
    for (a, ms) in cases {
        let h = canonical_height_closed(&a, &p, 1e-12).unwrap().value.to_f64();
        let rho = jordan_profile(&a).unwrap().rho.to_f64();
        for &k in ms {
            let q = eval_monomial(&a.pow(k), &p).unwrap();
            let hq = canonical_height_closed(&a, &q, 1e-12).unwrap().value.to_f64();
            let want = rho.powi(k as i32) * h;
            ensure((hq - want).abs() <= 1e-9, format!("A = {a}, m = {k}: {hq} vs {want}"))?;
        }
    }
    Ok("four families".into())
}

fn preperiodic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut points = 0;
    for s in 0..20 {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=3);
        let sys = SystemF::new((0..k).map(|_| random_matrix(&mut rng, n, 3)).collect()).unwrap();
        let table = growth_table(&sys, 4, DEFAULT_WORD_BUDGET).unwrap();
        let norm = Normalizer { delta: table.lower.clone(), l: 0 };
        for bits in 0..(1u32 << n) {
            let c: Vec<(i64, i64)> = (0..n).map(|j| (if bits >> j & 1 == 1 { -1 } else { 1 }, 1)).collect();
            let p = pt(&c);
            for nz in [Normalization::Averaged, Normalization::Summed] {
                let t = canonical_height_truncated(sys.matrices(), &p, 6, nz, &norm, DEFAULT_WORD_BUDGET).unwrap();
                ensure(t.identically_zero_from(1), format!("system {s}, point {p}: nonzero word sum"))?;
            }
            let v = classify_orbit(sys.matrices(), &p, DEFAULT_ORBIT_BUDGET).unwrap();
            ensure(matches!(v, OrbitVerdict::Finite { .. }), format!("system {s}, point {p}: {}", v.status()))?;
            points += 1;
        }
    }
    Ok(format!("20 systems, {points} points"))
}

fn diagonal_system() -> Outcome {
    let sys = SystemF::new(vec![diag23(), m(&[&[5, 0], &[0, 2]])]).unwrap();
    let cert = certify_star(&sys, 8, DEFAULT_WORD_BUDGET);
    ensure(cert.status == StarStatus::CertifiedDiagonal, format!("status {}", cert.status.name()))?;
    let d = cert.certified_delta().and_then(|r| r.exact.clone());
    ensure(d == Some(Quad::from_int(5)), format!("delta = {d:?}"))?;
    for p in [pt(&[(2, 1), (3, 1)]), pt(&[(1, 1), (7, 2)]), pt(&[(-1, 1), (1, 1)])] {
        let r = reduction_check(&sys, &p, 8, DEFAULT_WORD_BUDGET, 1e-12).map_err(|e| e.to_string())?;
        for (name, c) in [("delta", &r.delta), ("l", &r.l), ("zero heights", &r.zero_heights)] {
            ensure(c.pass == Some(true), format!("{name} check at {p}: {}", c.detail))?;
        }
    }
    Ok("delta = 5, reduction checks pass".into())
}

fn polynomial_family() -> Outcome {
    let a = fib();
    let a2 = a.mul(&a).unwrap();
    let g = IntMatrix::new(
        a2.rows().iter().zip(a.rows()).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect(),
    )
    .unwrap();
    let cert = certify_star(&SystemF::new(vec![a, g]).unwrap(), 6, DEFAULT_WORD_BUDGET);
    match &cert.status {
        StarStatus::CertifiedPolynomialFamily { base: 0, polynomials } => {
            ensure(polynomials[1] == IntPoly::from_i64(&[0, 1, 1]), format!("g2 = {}", polynomials[1]))?;
            Ok(format!("g2 = {}", polynomials[1]))
        }
        s => Err(format!("status {}", s.name())),
    }
}

fn irreducible_coherence() -> Outcome {
    let a = fib();
    let h = canonical_height_closed(&a, &pt(&[(2, 1), (3, 1)]), 1e-12).unwrap();
    ensure(h.is_certainly_positive(), "height of (2,3) not positive")?;
    let v = classify_orbit(std::slice::from_ref(&a), &pt(&[(2, 1), (3, 1)]), DEFAULT_ORBIT_BUDGET).unwrap();
    ensure(matches!(v, OrbitVerdict::Infinite(_)), format!("(2,3): {}", v.status()))?;
    let h = canonical_height_closed(&a, &pt(&[(1, 1), (-1, 1)]), 1e-12).unwrap();
    ensure(h.is_zero(), "height of (1,-1) not zero")?;
    let v = classify_orbit(std::slice::from_ref(&a), &pt(&[(1, 1), (-1, 1)]), DEFAULT_ORBIT_BUDGET).unwrap();
    ensure(matches!(v, OrbitVerdict::Finite { .. }), format!("(1,-1): {}", v.status()))?;
    Ok("(2,3) positive and infinite, (1,-1) zero and finite".into())
}

fn zero_height_infinite() -> Outcome {
    let a = diag23();
    let p = pt(&[(2, 1), (1, 1)]);
    let h = canonical_height_closed(&a, &p, 1e-12).unwrap();
    ensure(h.is_zero() && h.exact.as_ref().is_some_and(LogForm::is_zero), "height not exactly zero")?;
    let r = system_report(&SystemF::single(a), &p, &ReportOptions::default());
    ensure(matches!(r.orbit, OrbitVerdict::Infinite(_)), format!("orbit {}", r.orbit.status()))?;
    let b = r.subgroup_bound.ok_or("no subgroup bound in the report")?;
    ensure(b.dim_lower_bound >= 1, format!("dim G >= {}", b.dim_lower_bound))?;
    Ok(format!("dim G >= {}", b.dim_lower_bound))
}

fn c11_values() -> Outcome {
    ensure(c11(1).unwrap() == BigInt::from(1) << 61, "c11(1)")?;
    ensure(c11(2).unwrap() == BigInt::from(1) << 73, "c11(2)")?;
    Ok("2^61, 2^73".into())
}

fn baker_consistency() -> Outcome {
    let a = jordan2();
    let points = [pt(&[(2, 1), (3, 1)]), pt(&[(1, 1), (2, 1)]), pt(&[(5, 1), (7, 1)]), pt(&[(1, 2), (3, 1)]), pt(&[(6, 1), (5, 4)])];
    let mut least: Option<f64> = None;
    for p in &points {
        let v = classify_orbit(std::slice::from_ref(&a), p, DEFAULT_ORBIT_BUDGET).unwrap();
        ensure(matches!(v, OrbitVerdict::Infinite(_)), format!("{p}: orbit {}", v.status()))?;
        let h = canonical_height_closed(&a, p, 1e-12).unwrap();
        ensure(h.is_certainly_positive(), format!("{p}: height not positive"))?;
        let b = baker_bound(&a, p, 128).map_err(|e| e.to_string())?;
        // neg_log(C) - neg_log(h) = log h + neg_log(C)
        let margin = b.constants().c.log_margin_below(&h.value);
        ensure(margin.lo().to_f64() > 1e10, format!("{p}: margin {}", margin.to_decimal(6)))?;
        least = Some(least.map_or(margin.lo().to_f64(), |x: f64| x.min(margin.lo().to_f64())));
    }
    Ok(format!("smallest margin {:.3e}", least.unwrap()))
}

fn monotone_constants() -> Outcome {
    let a = jordan2();
    let mut prev: Option<monoheight::numkit::Interval> = None;
    for k in 1..=10u32 {
        let p = PointGm::new(vec![BigInt::from(2).pow(k).into(), BigInt::from(3).into()]).unwrap();
        let c = baker_bound(&a, &p, 128).map_err(|e| e.to_string())?;
        let v = c.constants().c.neg_log().clone();
        if let Some(q) = &prev {
            ensure(q.certainly_lt(&v), format!("m = {k}: not increasing"))?;
        }
        prev = Some(v);
    }
    Ok("m = 1..10 strictly increasing".into())
}

fn product_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let x = random_rat(&mut rng, 1_000_000);
        let arch = log_abs_form(&x, &Place::Archimedean).unwrap();
        // an independent numeric oracle for the archimedean term
        let direct = (x.numer().abs().to_f64().unwrap() / x.denom().to_f64().unwrap()).ln();
        ensure((arch.to_f64() - direct).abs() < 1e-9, format!("log|{x}|"))?;
        let mut total = arch;
        let primes: Vec<BigUint> = factor_rational(&x).unwrap().into_keys().collect();
        for p in primes {
            total = total.add(&log_abs_form(&x, &Place::Finite(p)).unwrap());
        }
        ensure(total.is_zero(), format!("place sum of {x} is {total}"))?;
    }
    Ok("1000 rationals".into())
}

fn jordan_invariants() -> Outcome {
    let f = jordan_profile(&fib()).unwrap();
    ensure(f.rbar == 2 && f.r == 1, format!("fibonacci r = {}, rbar = {}", f.r, f.rbar))?;
    let d = jordan_profile(&diag23()).unwrap();
    ensure(d.rbar == 1 && d.r == 1, format!("diag r = {}, rbar = {}", d.r, d.rbar))?;
    let u = jordan_profile(&unipotent()).unwrap();
    ensure(u.l == 1, format!("unipotent l = {}", u.l))?;
    Ok("rbar 2 > r 1; 1 = 1; l = 1".into())
}

fn main() {
    let criteria: [Criterion; 14] = [
        (1, "composition identity", 10, composition),
        (2, "valuation transport", 30, transport),
        (3, "closed-form canonical heights", 5, closed_forms),
        (4, "step relation", 5, step_relation),
        (5, "preperiodic vanishing", 10, preperiodic),
        (6, "diagonal system degree", 5, diagonal_system),
        (7, "polynomial family", 5, polynomial_family),
        (8, "irreducible coherence", 5, irreducible_coherence),
        (9, "zero height, infinite orbit", 5, zero_height_infinite),
        (10, "C11 values", 1, c11_values),
        (11, "lower bound below the height", 5, baker_consistency),
        (12, "constants shrink with the height", 5, monotone_constants),
        (13, "product formula", 5, product_formula),
        (14, "Jordan invariants", 2, jordan_invariants),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let out = match out {
            Ok(d) if took > Duration::from_secs(limit) => Err(format!("{d}; took {took:.2?} > {limit} s")),
            o => o,
        };
        match out {
            Ok(d) => println!("criterion {id:2} PASS  {name} ({took:.2?}): {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {id:2} FAIL  {name} ({took:.2?}): {d}");
            }
        }
    }
    println!("acceptance: {} of 14 criteria pass", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
