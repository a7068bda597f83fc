//! Bundled examples. Each one recomputes its outcome with the deciders and
//! checks it against the character or lattice oracle.

use num_bigint::BigInt;
use serde_json::{json, Value};
use toral::decide::{
    decide_element_mixing, decide_joint_polyfamilies, decide_joint_powers,
    decide_polyfamily_mixing, decide_relative_joint_unipotent, relative_fixed_vector, Answer,
    Verdict,
};
use toral::family::{expand_unipotent_products, family_power};
use toral::lab::{
    character_sum, conjecture_scan, find_unipotent, krengel_orthogonal, order2_counterexample,
    rokhlin_report, UnipotentSearch,
};
use toral::oracle::{limit_two_unipotents, reduced_rectangle_series, GridSet, Observable};
use toral::parse::{parse_family, parse_poly, parse_power};
use toral::{Mat2Z, PolyMatFamilyZ, Result};

use crate::check::{self, Check};

pub struct Scenario {
    pub name: &'static str,
    pub about: &'static str,
    run: fn() -> Result<Outcome>,
}

#[derive(Debug)]
pub struct Outcome {
    pub expected: bool,
    pub oracle: Check,
    pub detail: String,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.expected && self.oracle.ok
    }
}

fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2Z {
    Mat2Z::from_i64(a, b, c, d)
}

fn fam(s: &str) -> PolyMatFamilyZ {
    parse_family(s).expect("bundled family literal")
}

fn all(checks: Vec<Check>) -> Check {
    let ok = checks.iter().all(|c| c.ok);
    let detail = checks
        .iter()
        .map(|c| c.detail.clone())
        .collect::<Vec<_>>()
        .join("; ");
    Check { ok, detail }
}

fn ok_check(detail: impl Into<String>) -> Check {
    Check {
        ok: true,
        detail: detail.into(),
    }
}

fn powers_sampler(ms: &[Mat2Z]) -> impl Fn(i64) -> Vec<Mat2Z> + '_ {
    move |n| ms.iter().map(|t| t.pow(n)).collect()
}

fn family_sampler(fs: &[PolyMatFamilyZ]) -> impl Fn(i64) -> Vec<Mat2Z> + '_ {
    move |n| fs.iter().map(|f| f.evaluate(&BigInt::from(n))).collect()
}

fn cat_map() -> Result<Outcome> {
    let t = m(2, 1, 1, 1);
    let v = decide_element_mixing(&t)?;
    Ok(Outcome {
        expected: v.answer == Answer::Mixing,
        oracle: check::no_small_relation(powers_sampler(std::slice::from_ref(&t)), &[20, 21], 2),
        detail: format!("[[2,1],[1,1]]^n: {v}"),
    })
}

fn shear() -> Result<Outcome> {
    let t = m(1, 1, 0, 1);
    let v = decide_element_mixing(&t)?;
    Ok(Outcome {
        expected: v.answer == Answer::NotMixing,
        oracle: check::witness(&v, powers_sampler(std::slice::from_ref(&t)), 30),
        detail: format!("[[1,1],[0,1]]^n: {v}"),
    })
}

fn linear_family() -> Result<Outcome> {
    let f = fam("[[n,n-1],[1,1]]");
    let v = decide_polyfamily_mixing(&f);
    Ok(Outcome {
        expected: v.answer == Answer::NotMixing,
        oracle: check::witness(&v, family_sampler(std::slice::from_ref(&f)), 1000),
        detail: format!("{f}: {v}"),
    })
}

fn quadratic_family() -> Result<Outcome> {
    let f = fam("[[n,n^2-1],[1,n]]");
    let v = decide_polyfamily_mixing(&f);
    Ok(Outcome {
        expected: v.answer == Answer::Mixing,
        oracle: check::no_small_relation(family_sampler(std::slice::from_ref(&f)), &[100, 101], 2),
        detail: format!("{f}: {v}"),
    })
}

fn conjugate_triple() -> Result<Outcome> {
    let t = m(2, 1, 1, 1);
    let a = m(1, 1, 0, 1);
    let b = m(1, 0, 1, 1);
    let triple = vec![
        t.clone(),
        &(&a.inverse() * &t) * &a,
        &(&b.inverse() * &t) * &b,
    ];
    let v = decide_joint_powers(&triple)?;
    let mut checks = vec![check::witness(&v, powers_sampler(&triple), 30)];
    let mut pairs_ok = true;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let pair = vec![triple[i].clone(), triple[j].clone()];
        let pv = decide_joint_powers(&pair)?;
        pairs_ok &= pv.answer == Answer::JointlyMixing;
        checks.push(check::no_small_relation(powers_sampler(&pair), &[20], 2));
    }
    Ok(Outcome {
        expected: v.answer == Answer::NotJointlyMixing && pairs_ok,
        oracle: all(checks),
        detail: format!("(T, A^-1 T A, B^-1 T B): {v}; every pair jointly mixing: {pairs_ok}"),
    })
}

fn with_square(s: &str) -> Result<(Vec<PolyMatFamilyZ>, Verdict)> {
    let f = fam(s);
    let fs = vec![f.clone(), family_power(&f, 2)?];
    let v = decide_joint_polyfamilies(&fs);
    Ok((fs, v))
}

fn quadratic_square() -> Result<Outcome> {
    let (fs, v) = with_square("[[n,n^2-1],[1,n]]")?;
    Ok(Outcome {
        expected: v.answer == Answer::NotJointlyMixing,
        oracle: check::witness(&v, family_sampler(&fs), 1000),
        detail: format!("(F_n, F_n^2), F_n = {}: {v}", fs[0]),
    })
}

fn cubic_square() -> Result<Outcome> {
    let (fs, v) = with_square("[[n^2,n^3-1],[1,n]]")?;
    Ok(Outcome {
        expected: v.answer == Answer::JointlyMixing,
        oracle: check::no_small_relation(family_sampler(&fs), &[100, 101], 2),
        detail: format!("(F_n, F_n^2), F_n = {}: {v}", fs[0]),
    })
}

fn bounded_eigenvalue() -> Result<Outcome> {
    // U^-n A U^n: trace 3 for every n, entries growing
    let f = fam("[[2-n,1+n-n^2],[1,n+1]]");
    let single = decide_polyfamily_mixing(&f);
    let fs = vec![f.clone(), family_power(&f, 2)?];
    let v = decide_joint_polyfamilies(&fs);
    let traces_bounded = (1..=200).all(|n| f.evaluate(&BigInt::from(n)).trace() == BigInt::from(3));
    Ok(Outcome {
        expected: single.answer == Answer::Mixing
            && v.answer == Answer::NotJointlyMixing
            && traces_bounded,
        oracle: all(vec![
            check::no_small_relation(family_sampler(std::slice::from_ref(&f)), &[100, 101], 2),
            check::witness(&v, family_sampler(&fs), 200),
        ]),
        detail: format!("F_n = {f} (trace 3): F_n {}; (F_n, F_n^2) {v}", single.answer),
    })
}

fn unipotent_products() -> Result<Outcome> {
    let expand = |a: &str, b: &str| -> Result<PolyMatFamilyZ> {
        expand_unipotent_products(&[parse_power(a)?, parse_power(b)?])
    };
    let mixed = expand("[[1,1],[0,1]]^(-n)", "[[1,0],[1,1]]^n")?;
    let same = expand("[[1,1],[0,1]]^(-n)", "[[1,2],[0,1]]^n")?;
    let vm = decide_polyfamily_mixing(&mixed);
    let vs = decide_polyfamily_mixing(&same);
    Ok(Outcome {
        expected: vm.answer == Answer::Mixing && vs.answer == Answer::NotMixing,
        oracle: all(vec![
            check::no_small_relation(family_sampler(std::slice::from_ref(&mixed)), &[100, 101], 2),
            check::witness(&vs, family_sampler(std::slice::from_ref(&same)), 30),
        ]),
        detail: format!("U^-n L^n = {mixed}: {vm}; U^-n U2^n = {same}: {vs}"),
    })
}

fn relative_transverse() -> Result<Outcome> {
    let v = decide_relative_joint_unipotent(
        &[m(1, 1, 0, 1), m(1, 0, 1, 1)],
        &[parse_poly("n")?, parse_poly("n^2")?],
    )?;
    Ok(Outcome {
        expected: v.answer == Answer::RelativelyJointlyMixing,
        oracle: ok_check("positive relative verdicts have no oracle check"),
        detail: format!("(U^n, L^(n^2)): {v}"),
    })
}

fn relative_same() -> Result<Outcome> {
    let u = m(1, 1, 0, 1);
    let exps = [parse_poly("n")?, parse_poly("n+1")?];
    let v = decide_relative_joint_unipotent(&[u.clone(), u.clone()], &exps)?;
    let oracle = match &v.witness {
        Some(w) => {
            let fixed = relative_fixed_vector(&u)?;
            let holds = (-50i64..=50).all(|n| {
                let nn = BigInt::from(n);
                (0..2).all(|c| {
                    let s: BigInt = w[0]
                        .iter()
                        .zip(&exps)
                        .map(|(alpha, a)| alpha * a.eval(&nn) * &fixed[c])
                        .sum();
                    s + &w[1][c] == BigInt::from(0)
                })
            });
            Check {
                ok: holds,
                detail: format!("identity Σ α_i a_i(n) v_i + z = 0 for |n| <= 50: {holds}"),
            }
        }
        None => ok_check("no witness"),
    };
    Ok(Outcome {
        expected: v.answer == Answer::NotRelativelyJointlyMixing,
        oracle,
        detail: format!("(U^n, U^(n+1)): {v}"),
    })
}

fn pairwise_not_triple() -> Result<Outcome> {
    let c = order2_counterexample(&m(2, 1, 1, 1), &m(1, 1, 1, 2))?;
    let (md, r) = c.witness.progression();
    let expected_n = (1..=toral::lab::order2::VERIFY_UP_TO)
        .filter(|n| n.rem_euclid(md as i64) == r as i64)
        .count();
    Ok(Outcome {
        expected: c.exhibits_failure(),
        oracle: Check {
            ok: c.verified.len() == expected_n,
            detail: format!("triple witness verified for {} of {expected_n} sampled n", c.verified.len()),
        },
        detail: format!(
            "h_i = g^-i h g^i, i = 1..3: pairs {:?}; triple {}",
            c.pair_verdicts.iter().map(|(_, v)| v.answer.name()).collect::<Vec<_>>(),
            c.triple_verdict.answer
        ),
    })
}

fn rokhlin_case(family: &str, want: Answer) -> Result<Outcome> {
    let exps = [parse_poly("1")?, parse_poly("2")?];
    let r = rokhlin_report(&fam(family), &exps, (2, 40))?;
    let answer = r.cross_check.as_ref().and_then(|c| c["answer"].as_str().map(str::to_string));
    Ok(Outcome {
        expected: answer.as_deref() == Some(want.name()),
        oracle: Check {
            ok: r.consistent,
            detail: format!("condition and exact decider consistent: {}", r.consistent),
        },
        detail: format!(
            "{family} with exponents 1, 2: trend {:?}, exact decider {}",
            r.trend,
            answer.unwrap_or_else(|| "-".into())
        ),
    })
}

fn rokhlin_steep() -> Result<Outcome> {
    rokhlin_case("[[n^2,n^3-1],[1,n]]", Answer::JointlyMixing)
}

fn rokhlin_flat() -> Result<Outcome> {
    rokhlin_case("[[n,n^2-1],[1,n]]", Answer::NotJointlyMixing)
}

fn quarter() -> GridSet {
    GridSet::rect(2, (0, 1), (0, 1)).expect("valid rectangle")
}

fn recurrence_mixed_pair() -> Result<Outcome> {
    let r = conjecture_scan(&m(1, 0, 1, 1), &m(2, 1, 1, 1), &quarter(), (2, 5), 2048)?;
    let outside: Vec<i64> = r
        .rows
        .iter()
        .filter(|row| r.row_consistent(row) != Some(true))
        .map(|row| row.n)
        .collect();
    Ok(Outcome {
        expected: r.limit_points.len() == 1,
        oracle: Check {
            ok: outside.is_empty(),
            detail: if outside.is_empty() {
                "every row within its lattice bound of the limit".into()
            } else {
                format!("rows outside their bounds: {outside:?}")
            },
        },
        detail: format!(
            "mu(D ∩ T^n D ∩ S^n D), T unipotent, S hyperbolic, D = [0,1/2]^2: limit {:?}",
            r.limit_points
        ),
    })
}

fn recurrence_two_unipotents() -> Result<Outcome> {
    let d = quarter();
    let f = Observable::Grid(d.clone());
    let lim = limit_two_unipotents(&f, &f, &f, &m(1, 0, 1, 1), &m(1, 1, 0, 1), 400)?;
    let series = reduced_rectangle_series(&d, lim.w, 400)?;
    let gap = (lim.value.re - series).abs() + lim.value.im.abs();
    Ok(Outcome {
        expected: lim.value.re > 1.0 / 64.0,
        oracle: Check {
            ok: gap <= 1e-9,
            detail: format!("two-sided sum and reduced series differ by {gap:.2e}"),
        },
        detail: format!(
            "limit of mu(D ∩ T^n D ∩ S^n D) for two shears: {:.9} (tail <= {:.2e}) vs mu^3 = {}",
            lim.value.re,
            lim.tail_bound,
            1.0 / 64.0
        ),
    })
}

fn krengel_pair() -> Result<Outcome> {
    let c = krengel_orthogonal(&character_sum(&[[1, 0], [0, 1]]), &m(2, 1, 1, 1))?;
    Ok(Outcome {
        expected: c.modulus >= 1,
        oracle: Check {
            ok: c.all_zero(),
            detail: format!("{} correlations at multiples of M checked exactly", c.checked.len()),
        },
        detail: format!("f = χ(1,0) + χ(0,1), T = [[2,1],[1,1]]: M = {}", c.modulus),
    })
}

fn commutator_search() -> Result<Outcome> {
    let gens = [m(2, 1, 1, 1), m(1, 1, 1, 2)];
    let found = find_unipotent(&gens, 4)?;
    let (expected, detail) = match &found {
        UnipotentSearch::Found { word, matrix } => (
            matrix.trace().magnitude() == &2u32.into() && !matrix.is_plus_minus_identity(),
            format!("{} = {matrix}", toral::lab::word_to_string(word)),
        ),
        UnipotentSearch::NoneUpTo(l) => (false, format!("nothing up to length {l}")),
    };
    Ok(Outcome {
        expected,
        oracle: ok_check("parabolic by trace"),
        detail,
    })
}

pub fn all_scenarios() -> Vec<Scenario> {
    vec![
        Scenario { name: "mixing-cat-map", about: "a hyperbolic matrix is mixing", run: cat_map },
        Scenario { name: "mixing-shear", about: "a unipotent matrix fixes a frequency", run: shear },
        Scenario { name: "mixing-linear-family", about: "[[n,n-1],[1,1]] fixes a frequency for every n", run: linear_family },
        Scenario { name: "mixing-quadratic-family", about: "[[n,n^2-1],[1,n]] is mixing", run: quadratic_family },
        Scenario { name: "joint-conjugate-triple", about: "three conjugates with one eigenvalue are not jointly mixing, each pair is", run: conjugate_triple },
        Scenario { name: "joint-quadratic-square", about: "[[n,n^2-1],[1,n]] with its square is not jointly mixing", run: quadratic_square },
        Scenario { name: "joint-cubic-square", about: "[[n^2,n^3-1],[1,n]] with its square is jointly mixing", run: cubic_square },
        Scenario { name: "joint-bounded-eigenvalue", about: "a mixing family of constant trace is not jointly mixing with its square", run: bounded_eigenvalue },
        Scenario { name: "unipotent-products", about: "products of shear powers: transverse mix, parallel do not", run: unipotent_products },
        Scenario { name: "relative-transverse-shears", about: "transverse shears with exponents n, n^2", run: relative_transverse },
        Scenario { name: "relative-same-shear", about: "one shear with exponents n, n+1", run: relative_same },
        Scenario { name: "pairwise-not-triple", about: "conjugates g^-i h g^i: pairwise jointly mixing, triple not", run: pairwise_not_triple },
        Scenario { name: "rokhlin-steep-family", about: "norm condition fails yet the tuple is jointly mixing", run: rokhlin_steep },
        Scenario { name: "rokhlin-flat-family", about: "norm condition fails and the tuple is not jointly mixing", run: rokhlin_flat },
        Scenario { name: "recurrence-mixed-pair", about: "lattice estimates approach mu * |proj D|^2 for a shear and a hyperbolic map", run: recurrence_mixed_pair },
        Scenario { name: "recurrence-two-unipotents", about: "limit for two transverse shears exceeds mu^3", run: recurrence_two_unipotents },
        Scenario { name: "krengel-two-characters", about: "orthogonality modulus for a sum of two characters", run: krengel_pair },
        Scenario { name: "unipotent-in-free-pair", about: "a parabolic word in two hyperbolic generators", run: commutator_search },
    ]
}

pub struct RunResult {
    pub json: Value,
    pub human: String,
    pub csv: String,
    pub failures: Vec<String>,
    pub disagreements: Vec<String>,
}

pub fn run(filter: Option<&str>) -> RunResult {
    let mut human = String::new();
    let mut csv = String::from("# toral-scenarios v1\nname,passed,oracle_agrees\n");
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    let mut disagreements = Vec::new();
    for s in all_scenarios()
        .into_iter()
        .filter(|s| filter.is_none_or(|f| s.name.contains(f)))
    {
        let (passed, agrees, detail, oracle, error) = match (s.run)() {
            Ok(o) => (o.passed(), o.oracle.ok, o.detail.clone(), o.oracle.detail.clone(), None),
            Err(e) => (false, true, String::new(), String::new(), Some(format!("{}: {e}", e.code()))),
        };
        if !passed {
            failures.push(s.name.to_string());
        }
        if !agrees {
            disagreements.push(s.name.to_string());
        }
        human.push_str(&format!(
            "{} {}\n    {}\n    oracle: {}\n",
            if passed { "PASS" } else { "FAIL" },
            s.name,
            error.clone().unwrap_or(detail.clone()),
            oracle
        ));
        csv.push_str(&format!("{},{},{}\n", s.name, passed, agrees));
        entries.push(json!({
            "name": s.name,
            "about": s.about,
            "passed": passed,
            "oracle_agrees": agrees,
            "detail": detail,
            "oracle": oracle,
            "error": error,
        }));
    }
    human.push_str(&format!(
        "{} scenarios, {} failed\n",
        entries.len(),
        failures.len()
    ));
    RunResult {
        json: json!({ "scenarios": entries, "failed": failures }),
        human,
        csv,
        failures,
        disagreements,
    }
}
