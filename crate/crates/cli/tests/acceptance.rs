//! Acceptance criteria 1–10. Prints one line per criterion and exits non-zero
//! if any criterion fails. Time limits are wall-clock and pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use joubert_cli::checks;
use joubert_cli::report::emit_report;
use joubert_cli::{execute, Check, Command, Format, Outcome, RunConfig};
use joubert_core::Budget;
use serde_json::{json, Value};

const B: Budget = Budget::DEFAULT;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<(), String>,
}

fn passed(c: &Check) -> Result<(), String> {
    if c.outcome == Outcome::Pass {
        Ok(())
    } else {
        Err(format!("{} is {}: {}", c.id, c.outcome.label(), c.witness))
    }
}

fn expect_eq(what: &str, got: &Value, want: Value) -> Result<(), String> {
    if *got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

fn joubert_census_f2() -> Result<(), String> {
    let (c, _) = checks::joubert_enum(2, &B);
    passed(&c)?;
    expect_eq(
        "polynomials",
        &c.witness["polynomials"],
        json!(["t^6+t+1", "t^6+t^4+t^2+t+1"]),
    )
}

fn explicit_polynomials() -> Result<(), String> {
    let c = checks::explicit_polynomials();
    passed(&c)?;
    expect_eq("gf2", &c.witness["gf2"]["irreducible"], json!(true))?;
    let alphas = c.witness["gf4"].as_array().ok_or("gf4 missing")?;
    if alphas.len() != 2 || alphas.iter().any(|a| a["irreducible"] != json!(true)) {
        return Err(format!(
            "both α values must give irreducible polynomials: {alphas:?}"
        ));
    }
    if c.witness["gf8_irreducible"]
        .as_array()
        .is_none_or(|v| v.is_empty())
    {
        return Err("no β in F_8 − F_2".into());
    }
    Ok(())
}

fn joubert_generators() -> Result<(), String> {
    for q in [2u64, 4, 8, 16] {
        let c = checks::joubert_generator(q, &B);
        passed(&c)?;
        expect_eq("reverified", &c.witness["reverified"], json!(true))?;
    }
    Ok(())
}

fn surface_census() -> Result<(), String> {
    for q in [2u64, 4, 8, 16] {
        let c = checks::surface(q, &B);
        passed(&c)?;
        let census = &c.witness["census"];
        expect_eq("|Z(F_q)|", &census["on_line"], json!(q + 1))?;
        expect_eq(
            "affine route",
            &c.witness["affine_route_total"],
            census["total"].clone(),
        )?;
        let floor = (q * q) as i64 - 7 * q as i64 + 1;
        if census["total"].as_i64().unwrap_or(-1) < floor {
            return Err(format!("q = {q}: total below {floor}"));
        }
        if q == 2 {
            expect_eq("|Ȳ(F_2)|", &census["total"], json!(9))?;
            // 12 Joubert generators over F_2, in classes of q(q − 1) = 2
            expect_eq(
                "cross-check",
                &c.witness["polys_route_total"],
                json!(2 * 6 / 2 + 3),
            )?;
        }
    }
    Ok(())
}

fn obstruction_core() -> Result<(), String> {
    for (p, m, planes) in [(3u64, 1u32, 27u64), (5, 1, 165), (7, 1, 175), (3, 2, 201)] {
        let c = checks::obstruction(p, m);
        passed(&c)?;
        let w = &c.witness;
        expect_eq("rank", &w["rank"], w["n"].clone())?;
        expect_eq("power sums", &w["powersums_one"], json!(true))?;
        expect_eq("invariant planes", &w["invariant_planes"], json!(planes))?;
        expect_eq("planes in X", &w["planes_in_x"], json!(0))?;
    }
    Ok(())
}

fn oracle_equivalence() -> Result<(), String> {
    let c = checks::plane_oracle(3, 1, &B);
    passed(&c)?;
    expect_eq(
        "planes enumerated",
        &c.witness["planes_enumerated"],
        json!(93_093),
    )?;
    expect_eq("invariant planes", &c.witness["invariant_found"], json!(27))?;
    expect_eq("set equality", &c.witness["sets_equal"], json!(true))
}

fn curve_audit() -> Result<(), String> {
    for q in [2u64, 4, 8] {
        let c = checks::curve(q, &B);
        passed(&c)?;
        let census = &c.witness["census"];
        let n = census["n_affine"].as_u64().ok_or("n_affine missing")?;
        if n % q != 0 {
            return Err(format!("q = {q}: n_affine = {n} not divisible by q"));
        }
        if q > 2 && census["good_points"].as_u64() == Some(0) {
            return Err(format!("q = {q}: no good point"));
        }
        passed(&checks::trace_identity(q, &B))?;
    }
    let bound = checks::curve_bound();
    passed(&bound)?;
    expect_eq(
        "q = 2 bound",
        &bound.witness[0],
        json!({ "q": 2, "lhs": 33, "rhs": 33, "holds": false }),
    )
}

fn hermite() -> Result<(), String> {
    for q in [2u64, 3, 4, 5, 8, 9] {
        passed(&checks::hermite(q, &B))?;
    }
    Ok(())
}

fn identity_suites() -> Result<(), String> {
    for c in [
        checks::newton_identity(&B),
        checks::squared_trace(&B),
        checks::sigma_matrix(),
    ] {
        passed(&c)?;
        let rows = match &c.witness {
            Value::Array(rows) => rows.clone(),
            row => vec![row.clone()],
        };
        if rows.iter().any(|r| r["mismatches"] != json!(0)) {
            return Err(format!("{}: mismatches {}", c.id, c.witness));
        }
    }
    Ok(())
}

fn determinism() -> Result<(), String> {
    let render = |threads| -> Result<String, String> {
        let mut cfg = RunConfig::new(Command::VerifyAll);
        cfg.threads = Some(threads);
        let m = execute(&cfg).map_err(|e| e.to_string())?;
        Ok(emit_report(&m.without_timing(), Format::Json))
    };
    let one = render(1)?;
    let four = render(4)?;
    if one != four {
        return Err("reports differ between 1 and 4 threads".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "Joubert polynomial census over F_2",
            limit: Duration::from_secs(1),
            run: joubert_census_f2,
        },
        Criterion {
            id: 2,
            title: "explicit polynomials over F_2, F_4, F_8",
            limit: Duration::from_secs(1),
            run: explicit_polynomials,
        },
        Criterion {
            id: 3,
            title: "Joubert generators for q = 2, 4, 8, 16",
            limit: Duration::from_secs(30),
            run: joubert_generators,
        },
        Criterion {
            id: 4,
            title: "cubic surface census",
            limit: Duration::from_secs(60),
            run: surface_census,
        },
        Criterion {
            id: 5,
            title: "no invariant plane in X",
            limit: Duration::from_secs(60),
            run: obstruction_core,
        },
        Criterion {
            id: 6,
            title: "brute-force plane oracle",
            limit: Duration::from_secs(60),
            run: oracle_equivalence,
        },
        Criterion {
            id: 7,
            title: "Artin-Schreier curve audit",
            limit: Duration::from_secs(60),
            run: curve_audit,
        },
        Criterion {
            id: 8,
            title: "quintic generators in every characteristic",
            limit: Duration::from_secs(10),
            run: hermite,
        },
        Criterion {
            id: 9,
            title: "identity suites",
            limit: Duration::from_secs(60),
            run: identity_suites,
        },
        Criterion {
            id: 10,
            title: "thread-count determinism",
            limit: Duration::from_secs(120),
            run: determinism,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= c.limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {} s limit)", c.limit.as_secs()),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<45} {:>8.3} s  {}",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            verdict
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
