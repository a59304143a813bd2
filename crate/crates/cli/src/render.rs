//! JSON builders for every report. Reals are decimal strings: a midpoint plus
//! a directed-rounding enclosure.

use monoheight::bakerkit::{BakerBound, BakerConstants, TowerConstant};
use monoheight::heightkit::{
    ArithmeticDegree, CanonicalHeight, LogProfile, OrbitVerdict, PointGm, TruncatedEstimate,
};
use monoheight::jordankit::{JordanBasisData, JordanProfile, LimitMatrixB};
use monoheight::matkit::{CertifiedReal, Eigen, EigenValue, IntPoly};
use monoheight::numkit::{format_rat, Interval};
use monoheight::syskit::{word_string, GrowthTable, LEstimate, StarCertificate, StarStatus, SystemReport};
use serde_json::{json, Map, Value};

pub struct Fmt {
    pub digits: usize,
}

impl Fmt {
    pub fn new(prec: u32) -> Self {
        Fmt { digits: ((prec as f64) * std::f64::consts::LOG10_2).floor().max(6.0) as usize }
    }

    pub fn real(&self, x: &Interval) -> Value {
        let (lo, hi) = x.endpoints_decimal(self.digits);
        json!({ "value": x.to_decimal(self.digits), "lo": lo, "hi": hi })
    }

    pub fn certified(&self, x: &CertifiedReal) -> Value {
        let mut v = self.real(&x.enclosure);
        if let Some(q) = &x.exact {
            v["exact"] = json!(q.to_string());
        }
        v
    }
}

fn poly(p: &IntPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn word(w: &[usize]) -> Value {
    json!(word_string(w))
}

fn eigen_text(e: &Eigen, f: &Fmt) -> String {
    match &e.value {
        EigenValue::Rational(q) => format_rat(q),
        EigenValue::RealQuad(q) => q.to_string(),
        EigenValue::ComplexQuad { re, im } => format!("{} + ({})*i", format_rat(re), im),
        EigenValue::Disk(d) => {
            let digits = f.digits.min(20);
            if d.real {
                format!("~{}", monoheight::numkit::format_decimal(&d.re.to_rational(), digits))
            } else {
                format!(
                    "~{} + {}*i",
                    monoheight::numkit::format_decimal(&d.re.to_rational(), digits),
                    monoheight::numkit::format_decimal(&d.im.to_rational(), digits)
                )
            }
        }
    }
}

pub fn profile(p: &JordanProfile, f: &Fmt) -> Value {
    let s = &p.spectrum;
    let prec = p.rho.enclosure.precision();
    let factors: Vec<Value> = p
        .factors
        .iter()
        .map(|fp| {
            json!({
                "poly": poly(&fp.poly),
                "multiplicity": fp.multiplicity,
                "blocks": fp.blocks,
                "max_modulus_roots": fp.max_modulus_roots,
            })
        })
        .collect();
    let eigen: Vec<Value> = s
        .eigen
        .iter()
        .enumerate()
        .map(|(i, e)| {
            json!({
                "value": eigen_text(e, f),
                "real": e.is_real(),
                "factor": e.factor,
                "modulus": f.real(&e.modulus(prec)),
                "max_modulus": s.dominant.contains(&i),
            })
        })
        .collect();
    json!({
        "charpoly": s.charpoly.to_string(),
        "charpoly_coeffs": s.charpoly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "factors": factors,
        "eigenvalues": eigen,
        "rho": p.rho.to_string(),
        "rho_certified": f.certified(&p.rho),
        "l": p.l,
        "r": p.r,
        "rbar": p.rbar,
        "m": p.m,
        "dominant_real": p.dominant_real,
    })
}

pub fn limit(b: &LimitMatrixB, f: &Fmt) -> Value {
    let entries: Vec<Vec<Value>> = b
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match &e.exact {
                    Some(q) => json!(q.to_string()),
                    None => f.real(&e.enclosure),
                })
                .collect()
        })
        .collect();
    json!({
        "entries": entries,
        "exact": b.is_exact(),
        "m": b.m,
        "n0": b.n0,
        "l": b.l,
        "xi_signs": b.xi_signs,
    })
}

pub fn basis(d: &JordanBasisData, prec: u32, f: &Fmt) -> Value {
    let j: Vec<Vec<String>> = d.j.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    let blocks: Vec<Value> = d
        .blocks
        .iter()
        .map(|b| json!({ "eigenvalue": b.eigenvalue.to_string(), "size": b.size, "start": b.start }))
        .collect();
    json!({
        "J": j,
        "det_J": d.det_j.to_string(),
        "field": if d.field_d == 0.into() { "Q".to_string() } else { format!("Q(sqrt({}))", d.field_d) },
        "blocks": blocks,
        "max_entry_height": d.max_entry_height_string(prec),
        "inv_det_height": d.inv_det_height.h_mult_string(),
        "log_C_A": f.real(&d.log_c_a(prec)),
    })
}

pub fn point(p: &PointGm) -> Value {
    json!(p.to_string())
}

pub fn log_profile(prof: &LogProfile) -> Value {
    let mut finite = Map::new();
    for (p, v) in &prof.finite {
        finite.insert(p.to_string(), json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    }
    json!({
        "valuations": finite,
        "log_abs_archimedean": prof.arch.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "negative": prof.negative,
        "product_formula": prof.product_formula_holds(),
    })
}

pub fn canonical(h: &CanonicalHeight, f: &Fmt) -> Value {
    json!({
        "value": f.real(&h.value),
        "exact": h.exact.as_ref().map(|x| x.to_string()),
        "zero": h.is_zero(),
        "positive": h.is_certainly_positive(),
    })
}

pub fn truncated(t: &TruncatedEstimate, f: &Fmt) -> Value {
    let digits = f.digits.min(17);
    json!({
        "normalization": t.normalization.name(),
        "l": t.l,
        "n": t.n(),
        "estimate": f.real(&t.estimate),
        "window": t.window,
        "sequence": t.values.iter().map(|v| v.to_decimal(digits)).collect::<Vec<_>>(),
        "last_word_sum": t.word_sums.last().map(|x| x.to_string()),
        "identically_zero": t.identically_zero_from(1),
    })
}

pub fn arithmetic_degree(a: &ArithmeticDegree, f: &Fmt) -> Value {
    let digits = f.digits.min(17);
    json!({
        "value": f.real(&a.value),
        "sequence": a.sequence.iter().map(|v| v.to_decimal(digits)).collect::<Vec<_>>(),
    })
}

pub fn orbit(v: &OrbitVerdict) -> Value {
    match v {
        OrbitVerdict::Finite { orbit_size, preperiod, period } => json!({
            "status": "finite",
            "orbit_size": orbit_size,
            "preperiod": preperiod,
            "period": period,
        }),
        OrbitVerdict::Infinite(c) => json!({
            "status": "infinite",
            "map_index": c.map_index + 1,
            "local_minimal_polynomial": poly(&c.local_minimal_polynomial),
            "witness_step": c.witness_step,
        }),
        OrbitVerdict::Unknown { explored } => json!({ "status": "unknown", "explored": explored }),
    }
}

pub fn growth(t: &GrowthTable, f: &Fmt) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "rho": f.certified(&r.rho),
                "rho_word": word(&r.rho_word),
                "max_degree": r.max_degree.to_string(),
                "degree_word": word(&r.degree_word),
            })
        })
        .collect();
    json!({
        "rows": rows,
        "delta_lower": f.real(&t.lower),
        "delta_lower_n": t.lower_n,
        "delta_upper": f.real(&t.upper),
        "delta_upper_m": t.upper_m,
    })
}

pub fn star(s: &StarCertificate, f: &Fmt) -> Value {
    let mut v = json!({
        "status": s.status.name(),
        "certified": s.status.is_certified(),
        "psi_word": s.psi_word.as_ref().map(|w| word_string(w)),
        "t": s.t,
        "psi_rho": s.psi_rho.as_ref().map(|r| f.certified(r)),
    });
    match &s.status {
        StarStatus::CertifiedPolynomialFamily { base, polynomials } => {
            v["base"] = json!(base + 1);
            v["polynomials"] = json!(polynomials.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        }
        StarStatus::Empirical { n_checked } => v["n_checked"] = json!(n_checked),
        _ => {}
    }
    v
}

pub fn l_estimate(l: &LEstimate) -> Value {
    json!({
        "l": l.l,
        "certified": l.certified,
        "evidence": l.evidence.iter().map(|(n, x)| json!([n, format!("{x:.12}")])).collect::<Vec<_>>(),
    })
}

pub fn system(r: &SystemReport, f: &Fmt) -> Value {
    json!({
        "k": r.k,
        "dim": r.dim,
        "growth": r.table.as_ref().map(|t| growth(t, f)),
        "delta_enclosure": r.delta_enclosure.as_ref().map(|x| f.real(x)),
        "delta_exact": r.delta_exact.as_ref().map(|x| f.certified(x)),
        "star": star(&r.star, f),
        "l_F": r.l.as_ref().map(l_estimate),
        "height_steps": r.height_steps,
        "averaged": r.averaged.as_ref().map(|t| truncated(t, f)),
        "summed": r.summed.as_ref().map(|t| truncated(t, f)),
        "psi_height": r.psi_height.as_ref().map(|h| canonical(h, f)),
        "height_status": r.height_status.name(),
        "orbit": orbit(&r.orbit),
        "subgroup_bound": r.subgroup_bound.as_ref().map(|s| json!({
            "dim_lower_bound": s.dim_lower_bound,
            "rbar": s.rbar,
            "orbit_not_dense": s.orbit_not_dense,
            "statement": s.statement,
        })),
        "finiteness": json!({
            "applies": r.finiteness.applies,
            "reason": r.finiteness.reason,
            "expected_finite": r.finiteness.expected_finite,
            "consistent_with_orbit": r.finiteness.consistent_with_orbit,
        }),
        "notes": r.notes,
    })
}

fn constants(c: &BakerConstants, f: &Fmt) -> Value {
    json!({
        "n_star": c.n_star,
        "l": c.l,
        "A_prime_log": f.real(&c.log_a_prime),
        "E_prime_log": f.real(&c.log_e_prime),
        "D_prime_log": f.real(&c.log_d_prime),
        "neg_log_C": f.real(c.c.neg_log()),
        "log10_neg_log_C": f.real(&c.log10_neg_log_c()),
    })
}

pub fn baker(b: &BakerBound, tower: Option<(&TowerConstant, f64)>, f: &Fmt) -> Value {
    let main = b.constants();
    let i = &b.inputs;
    let mut hyp = Map::new();
    for h in &b.hypotheses {
        hyp.insert(h.name.to_string(), json!({ "holds": h.holds, "detail": h.detail }));
    }
    let clearing = i.clearing.as_ref().map(|c| {
        json!({
            "original": c.original.to_string(),
            "cleared": c.cleared.to_string(),
            "factor": c.factor.to_string(),
            "h_original": c.h_original.to_string(),
            "h_cleared": c.h_cleared.to_string(),
        })
    });
    json!({
        "log10_neg_log_C": f.real(&main.log10_neg_log_c()),
        "neg_log_C": f.real(main.c.neg_log()),
        "A_prime_log": f.real(&main.log_a_prime),
        "E_prime_log": f.real(&main.log_e_prime),
        "D_prime_log": f.real(&main.log_d_prime),
        "n_star": main.n_star,
        "hypotheses": hyp,
        "inputs": {
            "N": i.n,
            "K_degree": i.k_degree,
            "h": f.real(&i.h),
            "h_K": f.real(&i.h_k),
            "r": i.r,
            "l": i.l,
            "rho": i.rho.to_string(),
            "log_C_A": f.real(&i.log_c_a),
            "T0": i.t0.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "clearing": clearing,
        },
        "variants": {
            "jordan_block": b.jordan_block.as_ref().map(|c| constants(c, f)),
            "irreducible": b.irreducible.as_ref().map(|c| constants(c, f)),
        },
        "tower": tower.map(|(t, c1)| json!({
            "C1": format!("{c1}"),
            "neg_log_C": f.real(t.c.neg_log()),
            "log_neg_log_C": f.real(&t.log_neg_log),
        })),
        "notes": b.notes,
    })
}
