//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use osc_core::algebra::{binomial, det_symbolic, poly_gcd_many, MPoly, Rat};
use osc_core::catalog::{self, random_monomial_curve};
use osc_core::checks::{a5_report, bompiani_bound, lanteri_check, veronese_characterization_check};
use osc_core::chow::{a1_vanishing_report, a4_reciprocal_check, chern_principal_parts};
use osc_core::equation::IdenticalEquation;
use osc_core::inflection::{
    differentiate_equation, identical_equations, in_identical_span, inflection_divisor,
    rank_drop_minors, scan_points, wronskian,
};
use osc_core::jet::{
    general_point, generic_jet_rank, h_sequence, hopf_check, jet_matrix, osculating_duality_check,
    sample_chart_points, symbolic_jet_matrix, MultiIndex, RankMethod,
};
use osc_core::Verdict;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{detail} in {took:.2?}"))
}

fn r(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

fn ac1() -> Outcome {
    timed(Duration::from_secs(1), || {
        for d in 2..=6 {
            let c = catalog::rational_normal_curve(d);
            let w = wronskian(&c).map_err(|e| e.to_string())?;
            ensure(w.is_constant() && !w.is_zero(), || {
                format!("rnc{d}: wronskian {w}")
            })?;
            let div = inflection_divisor(&c).map_err(|e| e.to_string())?;
            ensure(div.total_weight == 0, || {
                format!("rnc{d}: total {}", div.total_weight)
            })?;
        }
        Ok("rnc2..rnc6 have constant Wronskians and no inflection".into())
    })
}

fn ac2() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut curves = vec![
            catalog::monomial_curve(&[0, 1, 3, 4]).unwrap(),
            catalog::nodal_cubic(),
            catalog::monomial_curve(&[0, 1, 4]).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        curves.extend((0..20).map(|_| random_monomial_curve(&mut rng, 8, 5)));
        for c in &curves {
            let div = inflection_divisor(c).map_err(|e| e.to_string())?;
            ensure(div.total_weight == div.expected_weight, || {
                format!(
                    "{}: weight {} != (r+1)(d-r) = {}",
                    c.describe(),
                    div.total_weight,
                    div.expected_weight
                )
            })?;
        }
        Ok(format!("{} curves match (r+1)(d-r)", curves.len()))
    })
}

fn togliatti_equation() -> IdenticalEquation {
    let x = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    IdenticalEquation::new(
        2,
        2,
        vec![
            MPoly::from_int(2, 2),
            x.scale(&r(-2)),
            y.scale(&r(-2)),
            &x * &x,
            &x * &y,
            &y * &y,
        ],
    )
    .unwrap()
}

fn ac3() -> Outcome {
    let map = catalog::togliatti();
    let g = generic_jet_rank(&map, 2, 0, 8);
    ensure(g.method == RankMethod::Symbolic, || {
        "rank was not symbolic".into()
    })?;
    ensure(g.rank as i64 - 1 == 4, || {
        format!("generic dim {}", g.rank as i64 - 1)
    })?;
    let sym = symbolic_jet_matrix(&map, 2);
    let det = det_symbolic(sym.symbolic().unwrap()).map_err(|e| e.to_string())?;
    ensure(det.is_zero(), || format!("jet determinant {det}"))?;
    let basis = identical_equations(&map, 2, 2);
    ensure(in_identical_span(&togliatti_equation(), &basis, 2), || {
        "relation not in identical span".into()
    })?;
    Ok(format!(
        "dim T(2) = 4, det = 0, relation in a {}-dimensional identical space",
        basis.len()
    ))
}

fn ac4() -> Outcome {
    for (n, d) in [(1, 3), (1, 4), (2, 2), (2, 3)] {
        let map = catalog::veronese(n, d);
        let rep = veronese_characterization_check(&map, d, 0, 20).map_err(|e| e.to_string())?;
        ensure(rep.verdict == Verdict::Holds, || {
            format!("veronese({n},{d}): {}", rep.summary)
        })?;
        let expected = binomial(n as i64 + d as i64, n as i64);
        ensure(
            rep.quantity("generic_rank") == Some(&osc_core::report::big_json(&expected)),
            || format!("veronese({n},{d}): generic rank not C(n+m,n)"),
        )?;
    }
    Ok("4 Veronese embeddings consistent, no rank drop".into())
}

fn ac5() -> Outcome {
    let mut checked = 0;
    for entry in catalog::catalog() {
        for seed in [0u64, 1, 2] {
            let points = sample_chart_points(&entry.map, 20, seed);
            ensure(points.len() == 20, || {
                format!("{}: too few points", entry.name)
            })?;
            for p in &points {
                for m in 0..=3 {
                    let rep =
                        osculating_duality_check(&entry.map, m, p).map_err(|e| e.to_string())?;
                    ensure(rep.holds, || format!("{} m={m}: {rep:?}", entry.name))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (map, point, order) triples"))
}

fn ac6() -> Outcome {
    for (a, b) in [(1, 2), (1, 1), (2, 2), (2, 3)] {
        let rep = lanteri_check(&catalog::scroll(a, b), 8, 0).map_err(|e| e.to_string())?;
        ensure(rep.verdict == Verdict::Holds, || {
            format!("scroll({a},{b}): {}", rep.summary)
        })?;
    }
    let map = catalog::scroll(1, 2);
    let rep = lanteri_check(&map, 8, 0).map_err(|e| e.to_string())?;
    ensure(rep.quantity("min_dim_T2") == Some(&Value::from(3)), || {
        "minimum is not 3".into()
    })?;
    // minimum attained exactly on u = 0 over the whole scan set
    for p in scan_points(&map, 0, 8) {
        let dim = jet_matrix(&map, 2, &p).map_err(|e| e.to_string())?.rank() as i64 - 1;
        ensure((dim == 3) == p[1].is_zero(), || {
            format!("dim {dim} at {p:?}")
        })?;
    }
    let minors = rank_drop_minors(&map, 2).map_err(|e| e.to_string())?;
    let g = poly_gcd_many(2, &minors.minors);
    ensure(g == MPoly::var(2, 1), || format!("minor gcd {g}"))?;
    Ok("4 scrolls hold; scroll(1,2) minimum 3 exactly on u = 0, minor gcd u".into())
}

fn ac7() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut cases = 0;
        for n in 1..=3usize {
            for m in 0..=4usize {
                for d in m as i64..=6 {
                    let c = chern_principal_parts(n, d, m).map_err(|e| e.to_string())?;
                    let (ni, mi) = (n as i64, m as i64);
                    let c1 = BigInt::from(d) * binomial(ni + mi, ni)
                        - BigInt::from(ni + 1) * binomial(ni + mi, ni + 1);
                    ensure(c.c(1) == Rat::from_integer(c1.clone()), || {
                        format!("c1 mismatch at n={n} m={m} d={d}: {} vs {c1}", c.c(1))
                    })?;
                    cases += 1;
                }
                let c = chern_principal_parts(n, m as i64, m).map_err(|e| e.to_string())?;
                ensure(c.is_one(), || format!("c(P^{m}(O({m}))) = {c} on P^{n}"))?;
            }
        }
        for d in 0..=6 {
            for m in 0..=d as usize {
                let rep = a4_reciprocal_check(1, d, m).map_err(|e| e.to_string())?;
                ensure(rep.verdict == Verdict::Holds, || {
                    format!("a4 n=1 d={d} m={m}")
                })?;
            }
        }
        let rep = a4_reciprocal_check(2, 3, 2).map_err(|e| e.to_string())?;
        ensure(rep.verdict == Verdict::Fails, || {
            "a4 (2,3,2) should differ".into()
        })?;
        Ok(format!(
            "{cases} c1 values, trivial diagonal, reciprocity pattern"
        ))
    })
}

fn ac8() -> Outcome {
    for d in 2..=6i64 {
        let a1 = a1_vanishing_report(2, d, 2, 4).map_err(|e| e.to_string())?;
        let a5 = a5_report(2, d, 2, 0, 1, true).map_err(|e| e.to_string())?;
        let c2 = 15 * (d - 2) * (d - 2);
        let j2 = 9 * (d - 2) * (d - 2);
        ensure(
            a1.quantity("window_classes") == Some(&Value::from(vec![c2])),
            || format!("d={d}: c_2 {:?}", a1.quantity("window_classes")),
        )?;
        ensure(
            a5.quantity("intersection_number") == Some(&Value::from(j2)),
            || format!("d={d}: J^2 {:?}", a5.quantity("intersection_number")),
        )?;
        if d >= 3 {
            ensure(
                a1.forces_hyperosculation == Some(true) && a5.forces_hyperosculation == Some(true),
                || format!("d={d}: verdicts disagree"),
            )?;
        } else {
            ensure(
                a1.verdict == Verdict::Holds
                    && a1.forces_hyperosculation == Some(false)
                    && a5.verdict == Verdict::NotApplicable,
                || format!("d={d}: boundary verdicts {} / {}", a1.verdict, a5.verdict),
            )?;
        }
    }
    Ok("c_2 = 15(d-2)^2 and J^2 = 9(d-2)^2 agree for d = 2..6".into())
}

fn ac9() -> Outcome {
    let mut checked = 0;
    for entry in catalog::catalog() {
        for seed in 0..5u64 {
            let p = general_point(&entry.map, 4, seed).map_err(|e| e.to_string())?;
            let h = h_sequence(&entry.map, 4, &p).map_err(|e| e.to_string())?;
            let rep = hopf_check(&h, entry.map.n());
            ensure(rep.pass, || {
                format!("{} seed {seed}: h = {h:?}", entry.name)
            })?;
            checked += 1;
        }
    }
    let map = catalog::togliatti();
    let basis = identical_equations(&map, 3, 3);
    for alpha in [vec![1, 0], vec![0, 1]] {
        let derived =
            differentiate_equation(&togliatti_equation(), &map, &MultiIndex::new(alpha.clone()))
                .map_err(|e| e.to_string())?;
        ensure(in_identical_span(&derived, &basis, 3), || {
            format!("derivative by {alpha:?} outside the order-3 span")
        })?;
    }
    Ok(format!(
        "{checked} h-sequences pass; both derivatives lie in the order-3 span"
    ))
}

/// Direct evaluation of the bound from factorials, independent of the
/// library's binomial.
fn brute_bound(n: u64, m: u64) -> i128 {
    fn fact(k: u64) -> i128 {
        (1..=k as i128).product()
    }
    fn choose(a: u64, b: u64) -> i128 {
        if b > a {
            0
        } else {
            fact(a) / (fact(b) * fact(a - b))
        }
    }
    let mut total = (m as i128 - 1) * (choose(n + m - 1, n - 1) - n as i128 - 1);
    let mut d = 1;
    while d + 2 <= m {
        total -= choose(n - 1 + d, n - 1);
        d += 1;
    }
    total
}

fn ac10() -> Outcome {
    for ((n, m), want) in [((2, 3), 0), ((3, 3), 9), ((2, 4), 1)] {
        let got = bompiani_bound(n, m).map_err(|e| e.to_string())?;
        ensure(got == BigInt::from(want), || {
            format!("bound({n},{m}) = {got}, want {want}")
        })?;
    }
    for n in 2..=5u64 {
        for m in 2..=6u64 {
            let got = bompiani_bound(n as usize, m as usize).map_err(|e| e.to_string())?;
            let want = brute_bound(n, m);
            ensure(got == BigInt::from(want), || {
                format!("bound({n},{m}) = {got}, brute {want}")
            })?;
        }
    }
    Ok("0, 9, 1 and 20 brute-force values agree".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 rational normal curves", ac1),
        ("AC2 Brill-Segre audit", ac2),
        ("AC3 Togliatti degeneracy", ac3),
        ("AC4 Veronese fullness", ac4),
        ("AC5 duality identity", ac5),
        ("AC6 Lanteri inequality", ac6),
        ("AC7 Chern suite", ac7),
        ("AC8 obstruction cross-check", ac8),
        ("AC9 Hopf bound and derived equations", ac9),
        ("AC10 bound values", ac10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
