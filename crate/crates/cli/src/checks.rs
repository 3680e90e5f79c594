//! Individual checks and the full suite. Each check runs a core computation,
//! re-verifies whatever it reports, and records the result as a [`Check`].

use std::time::Instant;

use joubert_core::ascurve::{affine_count_naive, bound_inequality, curve_census, trace_identity_check};
use joubert_core::cubic::{smoothness_scan, surface_census};
use joubert_core::ffield::{prime_power, KBasis};
use joubert_core::fpoly::min_poly;
use joubert_core::jsearch::{
    count_joubert_generators, enumerate_joubert_polys, explore_trace_conditions, find_joubert_generator,
    hermite_search, SearchReport, Witness,
};
use joubert_core::obstruct::{
    brute_force_oracle, build_group, choose_char_field, invariant_planes, no_plane_in_X, PowerSumVariety,
};
use joubert_core::sigma::{newton_holds, sigma_matches_matrix, sigma_profile, squared_trace_holds};
use joubert_core::{make_field, Budget, Error, ExtDesc, FElt, FieldDesc, Result, UPoly};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{felt_json, poly_json, Check, Outcome};

pub const TWO_POLYS: &str = "exactly two irreducible Joubert polynomials";
pub const EXPLICIT: &str = "t^6+t+1 over F_2; t^6+t^2+t+α over F_4; t^6+t+β over F_8";
pub const GENERATOR: &str = "Joubert generators exist for finite fields of characteristic 2";
pub const SURFACE: &str = "|Z(K)| = q + 1; |Ȳ(K)| ≥ q^2 − 7q + 1";
pub const SMOOTH: &str = "Applying the Jacobian criterion";
pub const NO_PLANE: &str = "no G-invariant 2-dimensional subspace of F^n is contained in X; p^m = 1 in F";
pub const CURVE: &str = "u^q − u = x^{2q+1} + x^{q+2}; our curve has genus q(q−1); at most q^5 points with";
pub const BOUND: &str = "q^6+1−2q(q−1)q^3 > 1 + q^5 for any q > 2";
pub const TRACE_IDENTITY: &str = "Letting u = z + x^3, we get an affine plane curve";
pub const HERMITE: &str = "valid in any characteristic";
pub const NEWTON: &str = "By Newton's formulas";
pub const SQUARE: &str = "Tr(z^2) = Tr(z)^2 for any z";
pub const MATRIX: &str = "characteristic polynomial of this linear transformation";
pub const EXPLORE: &str = "exploratory census; no claim asserted";

const NEWTON_SAMPLES: usize = 10_000;

fn run_check(id: String, anchor: &str, params: Value, body: impl FnOnce() -> Result<(bool, Value)>) -> Check {
    let start = Instant::now();
    let (outcome, witness) = match body() {
        Ok((true, w)) => (Outcome::Pass, w),
        Ok((false, w)) => (Outcome::Fail, w),
        Err(e) if e.is_size() => (Outcome::SkippedBudget, json!({ "refused": e.to_string() })),
        Err(e) => (Outcome::Fail, json!({ "error": e.to_string() })),
    };
    Check {
        id,
        anchor: anchor.to_string(),
        params,
        outcome,
        witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Shape check for `t^6 + a t^4 + b t^2 + c t + d`, done on the text form so
/// that what is reported is what is checked.
fn reverify_joubert_poly(field: &FieldDesc, text: &str, n: usize) -> Result<bool> {
    let p = UPoly::parse(field, text)?;
    Ok(p.degree() == Some(n)
        && p.is_monic()
        && p.coeff(n - 1).is_zero()
        && p.coeff(n - 3).is_zero()
        && p.is_irreducible()?)
}

/// Independent re-check of a generator witness: σ via the characteristic
/// polynomial, degree of the minimal polynomial, and the reported minimal
/// polynomial vanishing at the element.
fn reverify_generator(ext: &ExtDesc, w: &Witness) -> Result<bool> {
    let y = w.element;
    let n = ext.n() as usize;
    let prof = sigma_profile(y, ext, 0);
    let emb = ext.embedding()?;
    let text = w.min_poly.to_string();
    let lifted = UPoly::parse(emb.small(), &text)?.from_base(&emb, ext.big());
    Ok(prof.sigma(1).is_zero()
        && prof.sigma(3).is_zero()
        && min_poly(y, ext).degree() == Some(n)
        && reverify_joubert_poly(emb.small(), &text, n)?
        && lifted.eval(y)?.is_zero())
}

fn generator_check(report: SearchReport) -> Result<(bool, Value)> {
    let ext = ExtDesc::over(report.q, report.n)?;
    let Some(w) = report.found else {
        return Ok((false, json!({ "found": false })));
    };
    let ok = reverify_generator(&ext, &w)?;
    Ok((
        ok,
        json!({
            "field": ext.big().key().to_string(),
            "element": felt_json(ext.big(), w.element),
            "min_poly": poly_json(&w.min_poly),
            "reverified": ok,
        }),
    ))
}

fn qid(prefix: &str, q: u64) -> String {
    format!("{prefix}-q{q:02}")
}

pub fn joubert_generator(q: u64, budget: &Budget) -> Check {
    run_check(
        qid("03-joubert-generator", q),
        GENERATOR,
        json!({ "q": q, "n": 6 }),
        || generator_check(find_joubert_generator(q, budget)?),
    )
}

pub fn hermite(q: u64, budget: &Budget) -> Check {
    run_check(qid("08-hermite", q), HERMITE, json!({ "q": q, "n": 5 }), || {
        generator_check(hermite_search(q, budget)?)
    })
}

/// The enumeration check, plus the polynomials for CSV export.
pub fn joubert_enum(q: u64, budget: &Budget) -> (Check, Vec<UPoly>) {
    let mut polys = Vec::new();
    let id = if q == 2 {
        "01-joubert-polys-f2".to_string()
    } else {
        qid("01-joubert-polys", q)
    };
    let check = run_check(id, TWO_POLYS, json!({ "q": q }), || {
        polys = enumerate_joubert_polys(q, budget)?;
        let (p, k) = prime_power(q).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        let field = make_field(p, k)?;
        let texts: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
        let mut ok = true;
        for t in &texts {
            ok &= reverify_joubert_poly(&field, t, 6)?;
        }
        if q == 2 {
            ok &= texts == ["t^6+t+1", "t^6+t^4+t^2+t+1"];
        }
        // each irreducible Joubert polynomial has 6 roots, all Joubert generators
        let generators = match count_joubert_generators(q, budget) {
            Ok(r) => Some(r.generators.expect("count mode")),
            Err(e) if e.is_size() => None,
            Err(e) => return Err(e),
        };
        if let Some(g) = generators {
            ok &= g == 6 * polys.len() as u64;
        }
        Ok((
            ok,
            json!({ "count": texts.len(), "polynomials": texts, "joubert_generators": generators }),
        ))
    });
    (check, polys)
}

pub fn explicit_polynomials() -> Check {
    run_check("02-explicit-polys".into(), EXPLICIT, json!({}), || {
        let f2 = make_field(2, 1)?;
        let f4 = make_field(2, 2)?;
        let f8 = make_field(2, 3)?;
        let gf2_ok = UPoly::parse(&f2, "t^6+t+1")?.is_irreducible()?;

        let mut gf4 = Vec::new();
        let mut gf4_ok = true;
        for alpha in f4.elements().filter(|a| a.value() >= 2) {
            let p = UPoly::new(
                &f4,
                vec![
                    alpha,
                    f4.one(),
                    f4.one(),
                    f4.zero(),
                    f4.zero(),
                    f4.zero(),
                    f4.one(),
                ],
            )?;
            let irr = reverify_joubert_poly(&f4, &p.to_string(), 6)?;
            gf4_ok &= irr;
            gf4.push(json!({ "alpha": felt_json(&f4, alpha), "poly": poly_json(&p), "irreducible": irr }));
        }

        let mut gf8 = Vec::new();
        for beta in f8.elements().filter(|b| b.value() >= 2) {
            let p = UPoly::new(
                &f8,
                vec![
                    beta,
                    f8.one(),
                    f8.zero(),
                    f8.zero(),
                    f8.zero(),
                    f8.zero(),
                    f8.one(),
                ],
            )?;
            if reverify_joubert_poly(&f8, &p.to_string(), 6)? {
                gf8.push(json!({ "beta": felt_json(&f8, beta), "poly": poly_json(&p) }));
            }
        }
        let ok = gf2_ok && gf4_ok && !gf8.is_empty();
        Ok((
            ok,
            json!({
                "gf2": { "poly": "t^6+t+1", "irreducible": gf2_ok },
                "gf4": gf4,
                "gf8_irreducible": gf8,
            }),
        ))
    })
}

pub fn surface(q: u64, budget: &Budget) -> Check {
    run_check(qid("04-surface", q), SURFACE, json!({ "q": q }), || {
        let c = surface_census(q, budget)?;
        let mut problems = c.violations();
        // third route: classes of Joubert generators from the polynomial list
        let polys = enumerate_joubert_polys(q, budget)?.len() as u64;
        let from_polys = 6 * polys / (q * (q - 1)) + (q + 1);
        if from_polys != c.total {
            problems.push(format!(
                "6·{polys}/(q(q−1)) + q + 1 = {from_polys} != {}",
                c.total
            ));
        }
        if q == 2 && c.total != 9 {
            problems.push(format!("|Ȳ(F_2)| = {} != 9", c.total));
        }
        Ok((
            problems.is_empty(),
            json!({
                "census": c,
                "affine_route_total": c.affine_total(),
                "joubert_polys": polys,
                "polys_route_total": from_polys,
                "problems": problems,
            }),
        ))
    })
}

pub fn smoothness(q: u64, ext_deg: u32, budget: &Budget) -> Check {
    let id = format!("{}-deg{ext_deg}", qid("04-smoothness", q));
    run_check(id, SMOOTH, json!({ "q": q, "ext_deg": ext_deg }), || {
        let r = smoothness_scan(q, ext_deg, budget)?;
        let singular: Vec<Value> = r
            .singular
            .iter()
            .map(|v| json!(v.iter().map(|&x| felt_json(&r.field, x)).collect::<Vec<_>>()))
            .collect();
        Ok((
            singular.is_empty(),
            json!({
                "field": r.field.key().to_string(),
                "points_scanned": r.points_scanned,
                "surface_points": r.surface_points,
                "singular": singular,
            }),
        ))
    })
}

fn pm_id(prefix: &str, p: u64, m: u32) -> String {
    format!("{prefix}-p{p}-m{m}")
}

pub fn obstruction(p: u64, m: u32) -> Check {
    run_check(
        pm_id("05-obstruction", p, m),
        NO_PLANE,
        json!({ "p": p, "m": m }),
        || {
            let g = build_group(p, m)?;
            let e = choose_char_field(p, m)?;
            let r = no_plane_in_X(&g, &e)?;
            let x = PowerSumVariety { p };
            let mut equations = vec![0u64; p as usize];
            let mut reverified = true;
            for v in &r.planes {
                match &v.violation {
                    Some(w) => {
                        reverified &= w.vector == v.plane.combination(&e, w.lambda, w.mu)
                            && x.first_violation(&e, &w.vector) == Some(w.equation);
                        equations[w.equation as usize - 1] += 1;
                    }
                    None => reverified = false,
                }
            }
            let first = r.planes[0].violation.as_ref().map(|w| {
                json!({
                    "plane": r.planes[0].plane.basis.iter()
                        .map(|row| row.iter().map(|&c| felt_json(&e, c)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "lambda": felt_json(&e, w.lambda),
                    "mu": felt_json(&e, w.mu),
                    "vector": w.vector.iter().map(|&c| felt_json(&e, c)).collect::<Vec<_>>(),
                    "equation": w.equation,
                })
            });
            let ok = r.holds && r.powersums_one && r.rank == r.n && reverified;
            Ok((
                ok,
                json!({
                    "field": e.key().to_string(),
                    "n": r.n,
                    "group_order": r.group_order as u64,
                    "character_lines": r.lines,
                    "rank": r.rank,
                    "powersums_one": r.powersums_one,
                    "invariant_planes": r.planes.len(),
                    "planes_in_x": r.planes_in_x(),
                    "first_violated_equation_histogram": equations,
                    "sample_violation": first,
                    "note": "containment tested over the finite field E; exact because |E| > p",
                }),
            ))
        },
    )
}

pub fn plane_oracle(p: u64, m: u32, budget: &Budget) -> Check {
    run_check(
        pm_id("06-plane-oracle", p, m),
        NO_PLANE,
        json!({ "p": p, "m": m }),
        || {
            let g = build_group(p, m)?;
            let e = choose_char_field(p, m)?;
            let oracle = brute_force_oracle(&g, &e, budget)?;
            let planes = invariant_planes(&g, &e)?;
            let agrees = oracle.agrees_with(&planes);
            Ok((
                agrees && oracle.none_in_x,
                json!({
                    "field": e.key().to_string(),
                    "planes_enumerated": oracle.total_planes,
                    "invariant_found": oracle.invariant.len(),
                    "invariant_constructed": planes.len(),
                    "sets_equal": agrees,
                    "none_in_x": oracle.none_in_x,
                }),
            ))
        },
    )
}

pub fn curve(q: u64, budget: &Budget) -> Check {
    run_check(qid("07-curve", q), CURVE, json!({ "q": q }), || {
        let c = curve_census(q, budget)?;
        let mut problems = c.violations();
        if q > 2 && c.good_points == 0 {
            problems.push("no good point".into());
        }
        let naive = if q == 2 {
            let n = affine_count_naive(q, budget)?;
            if n != c.n_affine {
                problems.push(format!("double loop counts {n}, fiber sum {}", c.n_affine));
            }
            Some(n)
        } else {
            None
        };
        Ok((
            problems.is_empty(),
            json!({
                "census": c,
                "double_loop_affine": naive,
                "point_at_infinity": "assumed: one smooth point",
                "problems": problems,
            }),
        ))
    })
}

pub fn curve_bound() -> Check {
    let qs = [2u64, 4, 8, 16];
    run_check("07-curve-bound".into(), BOUND, json!({ "q": qs }), || {
        let rows: Vec<Value> = qs
            .iter()
            .map(|&q| {
                let lhs = joubert_core::ascurve::weil_window(q).0;
                json!({ "q": q, "lhs": lhs as i64, "rhs": 1 + q.pow(5), "holds": bound_inequality(q) })
            })
            .collect();
        let ok = qs.iter().all(|&q| bound_inequality(q) == (q > 2));
        Ok((ok, json!(rows)))
    })
}

pub fn trace_identity(q: u64, budget: &Budget) -> Check {
    run_check(
        qid("07-trace-identity", q),
        TRACE_IDENTITY,
        json!({ "q": q }),
        || {
            let ok = trace_identity_check(q, budget)?;
            Ok((ok, json!({ "elements": q.pow(6), "holds": ok })))
        },
    )
}

fn mismatches(ext: &ExtDesc, pred: impl Fn(FElt) -> bool + Sync) -> u64 {
    let f = ext.big();
    (0..f.order())
        .into_par_iter()
        .filter(|&v| !pred(f.element(v).expect("in range")))
        .count() as u64
}

pub fn newton_identity(budget: &Budget) -> Check {
    run_check(
        "09-newton-identity".into(),
        NEWTON,
        json!({ "samples": NEWTON_SAMPLES }),
        || {
            let mut rows = Vec::new();
            let mut total = 0;
            for (q, n) in [(5u64, 4u32), (7, 2)] {
                budget.check("Newton identity scan", (q as u128).pow(n))?;
                let ext = ExtDesc::over(q, n)?;
                let bad = mismatches(&ext, |y| newton_holds(y, &ext));
                total += bad;
                rows.push(json!({ "q": q, "n": n, "mode": "exhaustive", "elements": ext.big().order(), "mismatches": bad }));
            }
            for (seed, (q, n)) in [(16u64, 6u32), (9, 5), (25, 3), (3, 8)].into_iter().enumerate() {
                let ext = ExtDesc::over(q, n)?;
                let order = ext.big().order();
                let mut rng = StdRng::seed_from_u64(seed as u64);
                let sample: Vec<u64> = (0..NEWTON_SAMPLES).map(|_| rng.gen_range(0..order)).collect();
                let bad = sample
                    .par_iter()
                    .filter(|&&v| !newton_holds(ext.big().element(v).expect("in range"), &ext))
                    .count() as u64;
                total += bad;
                rows.push(json!({ "q": q, "n": n, "mode": "sampled", "elements": NEWTON_SAMPLES, "mismatches": bad }));
            }
            Ok((total == 0, json!(rows)))
        },
    )
}

pub fn squared_trace(budget: &Budget) -> Check {
    run_check(
        "09-squared-trace".into(),
        SQUARE,
        json!({ "q": [2, 4, 8], "n": 6 }),
        || {
            let mut rows = Vec::new();
            let mut total = 0;
            for q in [2u64, 4, 8] {
                budget.check("squared trace scan", (q as u128).pow(6))?;
                let ext = ExtDesc::over(q, 6)?;
                let bad = mismatches(&ext, |y| squared_trace_holds(y, &ext));
                total += bad;
                rows.push(json!({ "q": q, "elements": ext.big().order(), "mismatches": bad }));
            }
            Ok((total == 0, json!(rows)))
        },
    )
}

pub fn sigma_matrix() -> Check {
    run_check(
        "09-sigma-matrix".into(),
        MATRIX,
        json!({ "q": 2, "n": 6 }),
        || {
            let ext = ExtDesc::over(2, 6)?;
            let kb = KBasis::power_basis(&ext)?;
            let bad = mismatches(&ext, |y| sigma_matches_matrix(y, &ext, &kb));
            Ok((bad == 0, json!({ "elements": 64, "mismatches": bad })))
        },
    )
}

pub fn explore(q: u64, p: u64, m: u32, budget: &Budget) -> Check {
    let id = format!("explore-q{q:02}-p{p}-m{m}");
    run_check(id, EXPLORE, json!({ "q": q, "p": p, "m": m }), || {
        let r = explore_trace_conditions(q, p, m, budget)?;
        Ok((
            true,
            json!({
                "n": r.n,
                "generators": r.generators,
                "non_generators": r.non_generators,
            }),
        ))
    })
}

type Job<'a> = Box<dyn Fn() -> Check + Send + Sync + 'a>;

/// Every suite check, run concurrently and returned in id order.
pub fn verify_all(budget: &Budget) -> Vec<Check> {
    let b = *budget;
    let mut jobs: Vec<Job> = vec![
        Box::new(move || joubert_enum(2, &b).0),
        Box::new(explicit_polynomials),
        Box::new(move || plane_oracle(3, 1, &b)),
        Box::new(curve_bound),
        Box::new(move || newton_identity(&b)),
        Box::new(move || squared_trace(&b)),
        Box::new(sigma_matrix),
    ];
    for q in [2u64, 4, 8, 16] {
        jobs.push(Box::new(move || joubert_generator(q, &b)));
        jobs.push(Box::new(move || surface(q, &b)));
    }
    for (p, m) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
        jobs.push(Box::new(move || obstruction(p, m)));
    }
    for q in [2u64, 4, 8] {
        jobs.push(Box::new(move || curve(q, &b)));
        jobs.push(Box::new(move || trace_identity(q, &b)));
    }
    for q in [2u64, 3, 4, 5, 8, 9] {
        jobs.push(Box::new(move || hermite(q, &b)));
    }
    let mut checks: Vec<Check> = jobs.par_iter().map(|job| job()).collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enum_q2_lists_both_polynomials() {
        let (c, polys) = joubert_enum(2, &Budget::DEFAULT);
        assert_eq!(c.outcome, Outcome::Pass, "{}", c.witness);
        assert_eq!(polys.len(), 2);
        assert_eq!(c.witness["joubert_generators"], json!(12));
    }

    #[test]
    fn explicit_reports_both_alphas() {
        let c = explicit_polynomials();
        assert_eq!(c.outcome, Outcome::Pass, "{}", c.witness);
        assert_eq!(c.witness["gf4"].as_array().unwrap().len(), 2);
        assert!(!c.witness["gf8_irreducible"].as_array().unwrap().is_empty());
    }

    #[test]
    fn budget_refusal_is_skip() {
        let c = joubert_generator(16, &Budget(1000));
        assert_eq!(c.outcome, Outcome::SkippedBudget);
        assert!(c.witness["refused"].as_str().unwrap().contains("exceeds"));
    }

    #[test]
    fn tampered_witness_fails_reverification() {
        let ext = ExtDesc::over(2, 6).unwrap();
        let mut w = find_joubert_generator(2, &Budget::DEFAULT)
            .unwrap()
            .found
            .unwrap();
        assert!(reverify_generator(&ext, &w).unwrap());
        w.min_poly = UPoly::parse(&make_field(2, 1).unwrap(), "t^6+t^4+t^2+t+1").unwrap();
        assert!(!reverify_generator(&ext, &w).unwrap());
        w.element = ext.big().one();
        assert!(!reverify_generator(&ext, &w).unwrap());
    }

    #[test]
    fn small_checks_pass() {
        for c in [
            surface(2, &Budget::DEFAULT),
            curve(2, &Budget::DEFAULT),
            obstruction(3, 1),
            hermite(3, &Budget::DEFAULT),
            curve_bound(),
            smoothness(2, 1, &Budget::DEFAULT),
        ] {
            assert_eq!(c.outcome, Outcome::Pass, "{}: {}", c.id, c.witness);
        }
        let c = explore(2, 3, 1, &Budget::DEFAULT);
        assert_eq!(c.witness["generators"], json!(12));
    }
}
