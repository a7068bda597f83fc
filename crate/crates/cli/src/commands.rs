use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use toral::algebra::{classify, eigen_data, fixed_vector, MatClass};
use toral::decide::{
    big_to_json, check_rokhlin_sufficient, decide_commuting_joint, decide_element_mixing,
    decide_joint_polyfamilies, decide_joint_powers, decide_polyfamily_mixing,
    decide_relative_joint_unipotent, relative_fixed_vector, witness_same_modulus_triple, Answer,
    Verdict,
};
use toral::family::PolyMatFamily;
use toral::lab::{
    cesaro_scan, conjecture_scan, find_unipotent, krengel_orthogonal, order2_counterexample,
    rokhlin_report, word_to_string, UnipotentSearch,
};
use toral::oracle::{char_correlation, lattice_correlation, trig_correlation};
use toral::parse::{parse_matrix, parse_poly, parse_power, parse_range, parse_sl2};
use toral::{Error, Mat2Z, Result};

use crate::check::{self, Check};
use crate::inputs::{coef_string, parse_set, parse_trig, SeqInput};
use crate::report::{table, Report};

/// Witnesses are checked on `1 ≤ n ≤ WITNESS_SAMPLES`.
pub const WITNESS_SAMPLES: i64 = 30;

fn class_name(c: &MatClass) -> String {
    match c {
        MatClass::Hyperbolic { .. } => "Hyperbolic".into(),
        MatClass::Unipotent { negated: false } => "Unipotent".into(),
        MatClass::Unipotent { negated: true } => "NegatedUnipotent".into(),
        MatClass::FiniteOrder(k) => format!("FiniteOrder({k})"),
    }
}

fn vec_json(v: &[BigInt; 2]) -> Value {
    json!([big_to_json(&v[0]), big_to_json(&v[1])])
}

pub fn classify_cmd(s: &str) -> Result<Report> {
    let m = parse_matrix(s)?;
    let class = classify(&m)?;
    let mut out = json!({
        "matrix": m.to_string(),
        "trace": big_to_json(&m.trace()),
        "class": class_name(&class),
    });
    let mut human = format!("matrix  {m}\ntrace   {}\nclass   {}\n", m.trace(), class_name(&class));
    match class {
        MatClass::Hyperbolic { .. } => {
            let e = eigen_data(&m)?;
            out["lambda"] = json!(e.lambda.to_string());
            out["lambda_approx"] = json!(e.lambda.to_f64());
            human.push_str(&format!("lambda  {} ≈ {}\n", e.lambda, e.lambda.to_f64()));
        }
        MatClass::Unipotent { .. } => {
            let v = fixed_vector(&m)?;
            out["fixed_vector"] = vec_json(&v);
            human.push_str(&format!("fixed   ({}, {})\n", v[0], v[1]));
        }
        MatClass::FiniteOrder(_) => {}
    }
    Ok(Report::new(out, human))
}

fn verdict_report(input: Value, v: &Verdict, check: Check) -> Report {
    let human = format!("{}\noracle: {}\n", v, check.detail);
    let ok = check.ok;
    Report::new(
        json!({ "input": input, "verdict": v.to_json(), "oracle": check.to_json() }),
        human,
    )
    .disagree_unless(ok, format!("oracle disagrees with verdict {}", v.answer))
}

fn radius_for(k: usize) -> i64 {
    if k <= 2 {
        2
    } else {
        1
    }
}

fn cross_check(v: &Verdict, sample: impl Fn(i64) -> Vec<Mat2Z>, probe: &[i64], k: usize) -> Check {
    match v.answer {
        a if a.is_negative() => check::witness(v, sample, WITNESS_SAMPLES),
        Answer::Mixing | Answer::JointlyMixing => check::no_small_relation(sample, probe, radius_for(k)),
        _ => Check {
            ok: true,
            detail: "no oracle check for this answer".into(),
        },
    }
}

fn probe_points(seq: &SeqInput) -> [i64; 2] {
    match seq {
        SeqInput::Family(_) => [100, 101],
        _ => [20, 21],
    }
}

pub fn decide_mixing(s: &str) -> Result<Report> {
    let seq = SeqInput::parse(s)?;
    let v = match &seq {
        SeqInput::Matrix(m) => decide_element_mixing(m)?,
        SeqInput::Family(f) => decide_polyfamily_mixing(f),
        SeqInput::Power(p) => {
            if classify(&p.base)?.is_hyperbolic() {
                if p.exponent.is_constant() {
                    let c = p.exponent.coeff(0);
                    decide_polyfamily_mixing(&PolyMatFamily::constant(&p.base.pow_big(&c))?)
                } else {
                    // |a(n)| → ∞
                    decide_element_mixing(&p.base)?
                }
            } else {
                decide_polyfamily_mixing(&p.as_polynomial()?)
            }
        }
    };
    let c = cross_check(&v, |n| vec![seq.sample(n)], &probe_points(&seq), 1);
    Ok(verdict_report(json!(seq.describe()), &v, c))
}

pub fn decide_joint(inputs: &[String], commuting: bool) -> Result<Report> {
    let seqs = inputs
        .iter()
        .map(|s| SeqInput::parse(s))
        .collect::<Result<Vec<_>>>()?;
    let matrices: Option<Vec<Mat2Z>> = seqs
        .iter()
        .map(|s| match s {
            SeqInput::Matrix(m) => Some(m.clone()),
            _ => None,
        })
        .collect();
    let v = match (&matrices, commuting) {
        (Some(ms), true) => decide_commuting_joint(ms)?,
        (None, true) => {
            return Err(Error::InvalidArgument(
                "--commuting takes plain matrices, one per sequence Tⁿ".into(),
            ))
        }
        (Some(ms), false) => decide_joint_powers(ms)?,
        (None, false) => {
            let fs = seqs
                .iter()
                .map(SeqInput::polynomial)
                .collect::<Result<Vec<_>>>()?;
            decide_joint_polyfamilies(&fs)
        }
    };
    let probe = if matrices.is_some() { [20, 21] } else { [100, 101] };
    let c = cross_check(
        &v,
        |n| seqs.iter().map(|s| s.sample(n)).collect(),
        &probe,
        seqs.len(),
    );
    let input: Vec<String> = seqs.iter().map(SeqInput::describe).collect();
    Ok(verdict_report(json!(input), &v, c))
}

pub fn decide_relative(inputs: &[String]) -> Result<Report> {
    let powers = inputs
        .iter()
        .map(|s| parse_power(s))
        .collect::<Result<Vec<_>>>()?;
    let us: Vec<Mat2Z> = powers.iter().map(|p| p.base.clone()).collect();
    let exps: Vec<_> = powers.iter().map(|p| p.exponent.clone()).collect();
    let v = decide_relative_joint_unipotent(&us, &exps)?;
    let check = match (&v.answer, &v.witness) {
        (Answer::NotRelativelyJointlyMixing, Some(w)) => {
            let vs = us
                .iter()
                .map(relative_fixed_vector)
                .collect::<Result<Vec<_>>>()?;
            // Σ α_i a_i(n) v_i + z = 0
            let bad: Vec<i64> = (-50..=50)
                .filter(|&n| {
                    let nn = BigInt::from(n);
                    let mut acc = [w[1][0].clone(), w[1][1].clone()];
                    for ((v, a), alpha) in vs.iter().zip(&exps).zip(&w[0]) {
                        let s = alpha * a.eval(&nn);
                        acc[0] += &s * &v[0];
                        acc[1] += &s * &v[1];
                    }
                    !(acc[0].is_zero() && acc[1].is_zero())
                })
                .collect();
            Check {
                ok: bad.is_empty(),
                detail: if bad.is_empty() {
                    "identity Σ α_i a_i(n) v_i + z = 0 holds for |n| <= 50".into()
                } else {
                    format!("identity fails at n = {bad:?}")
                },
            }
        }
        _ => Check {
            ok: true,
            detail: "no oracle check for this answer".into(),
        },
    };
    let input: Vec<String> = powers.iter().map(|p| format!("{}^({})", p.base, p.exponent)).collect();
    Ok(verdict_report(json!(input), &v, check))
}

pub fn rokhlin_powers(inputs: &[String]) -> Result<Report> {
    let powers = inputs
        .iter()
        .map(|s| parse_power(s))
        .collect::<Result<Vec<_>>>()?;
    let ts: Vec<Mat2Z> = powers.iter().map(|p| p.base.clone()).collect();
    let exps: Vec<_> = powers.iter().map(|p| p.exponent.clone()).collect();
    let v = check_rokhlin_sufficient(&ts, &exps)?;
    let check = if v.answer == Answer::SufficientConditionHolds {
        check::no_small_relation(
            |n| powers.iter().map(|p| p.evaluate(&BigInt::from(n))).collect(),
            &[10, 11],
            radius_for(powers.len()),
        )
    } else {
        Check {
            ok: true,
            detail: "condition not established; nothing to check".into(),
        }
    };
    let input: Vec<String> = powers.iter().map(|p| format!("{}^({})", p.base, p.exponent)).collect();
    Ok(verdict_report(json!(input), &v, check))
}

pub fn rokhlin_family(family: &str, exps: &[String], n: &str) -> Result<Report> {
    let f = toral::parse::parse_family(family)?;
    let exps = exps
        .iter()
        .map(|e| parse_poly(e))
        .collect::<Result<Vec<_>>>()?;
    let r = rokhlin_report(&f, &exps, parse_range(n)?)?;
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.n.to_string(),
                row.gamma.clone(),
                format!("{:.6}", row.log_ratio),
                format!("[{:.6}, {:.6}]", row.log_ratio_lo, row.log_ratio_hi),
            ]
        })
        .collect();
    let mut human = table(&["n", "gamma", "ln ratio", "enclosure"], &rows);
    human.push_str(&format!(
        "trend {:?}; family mixing {}; bounded condition {}; vanishing condition {} (sufficient only)\n",
        r.trend, r.family_mixing, r.condition_bounded, r.condition_vanishing
    ));
    if let Some(c) = &r.cross_check {
        human.push_str(&format!("exact decider: {}\n", c["answer"].as_str().unwrap_or("?")));
    }
    let mut csv = String::from("# toral-rokhlin v1\nn,norm,gamma,log_ratio,log_ratio_lo,log_ratio_hi,ratio\n");
    for row in &r.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.n, row.norm, row.gamma, row.log_ratio, row.log_ratio_lo, row.log_ratio_hi, row.ratio
        ));
    }
    let consistent = r.consistent;
    Ok(Report::new(r.to_json(), human)
        .with_csv(csv)
        .disagree_unless(consistent, "sufficient condition holds but the exact decider says not jointly mixing"))
}

pub fn witness_triple(inputs: &[String], conjugates: bool) -> Result<Report> {
    let ms = inputs
        .iter()
        .map(|s| parse_sl2(s))
        .collect::<Result<Vec<_>>>()?;
    if conjugates {
        let [g, h] = ms.as_slice() else {
            return Err(Error::InvalidArgument("--conjugates takes two matrices g h".into()));
        };
        let c = order2_counterexample(g, h)?;
        let (m, r) = c.witness.progression();
        let expected = (1..=toral::lab::order2::VERIFY_UP_TO)
            .filter(|n| n.rem_euclid(m as i64) == r as i64)
            .count();
        let ok = c.verified.len() == expected;
        let mut human = String::new();
        for (i, t) in c.triple.iter().enumerate() {
            human.push_str(&format!("h{}  {t}\n", i + 1));
        }
        for ((i, j), v) in &c.pair_verdicts {
            human.push_str(&format!("(h{}, h{})  {}\n", i + 1, j + 1, v.answer));
        }
        human.push_str(&format!("triple    {}\n", c.triple_verdict));
        human.push_str(&format!("witness verified on {} of {expected} sampled n\n", c.verified.len()));
        return Ok(Report::new(c.to_json(), human).disagree_unless(ok, "triple witness fails the character check"));
    }
    if ms.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "witness-triple takes three matrices, got {}",
            ms.len()
        )));
    }
    let w = witness_same_modulus_triple(&ms)?;
    let (m, r) = w.progression();
    let zero = [BigInt::zero(), BigInt::zero()];
    let ns: Vec<i64> = (1..=WITNESS_SAMPLES)
        .filter(|n| n.rem_euclid(m as i64) == r as i64)
        .collect();
    let failed: Vec<i64> = ns
        .iter()
        .copied()
        .filter(|&n| {
            let pw: Vec<Mat2Z> = ms.iter().map(|t| t.pow(n)).collect();
            char_correlation(&w.xs, &zero, &pw) != Ok(1)
        })
        .collect();
    let human = format!(
        "x1 = ({}, {})\nx2 = ({}, {})\nx3 = ({}, {})\nvalid for n = {r} mod {m}; kernel dimension {}\noracle: {}\n",
        w.xs[0][0], w.xs[0][1], w.xs[1][0], w.xs[1][1], w.xs[2][0], w.xs[2][1],
        w.kernel_dimension,
        if failed.is_empty() { format!("verified for {} sampled n", ns.len()) } else { format!("fails at n = {failed:?}") }
    );
    let out = json!({
        "witness": w.xs.iter().map(vec_json).collect::<Vec<_>>(),
        "modulus": m,
        "residue": r,
        "negated": w.negated,
        "kernel_dimension": w.kernel_dimension,
        "failed": failed,
    });
    Ok(Report::new(out, human).disagree_unless(failed.is_empty(), "triple witness fails the character check"))
}

fn powered(ms: &[String], n: i64) -> Result<Vec<Mat2Z>> {
    ms.iter().map(|s| Ok(parse_sl2(s)?.pow(n))).collect()
}

pub fn correlate(fs: &[String], ms: &[String], n: i64) -> Result<Report> {
    let polys = fs.iter().map(|s| parse_trig(s)).collect::<Result<Vec<_>>>()?;
    let mats = powered(ms, n)?;
    let c = trig_correlation(&polys, &mats)?;
    let value = coef_string(&c);
    Ok(Report::new(
        json!({ "n": n, "re": c.re.to_string(), "im": c.im.to_string() }),
        format!("{value}\n"),
    ))
}

pub fn estimate(sets: &[String], ms: &[String], n: i64, big_q: u32) -> Result<Report> {
    let gs = sets.iter().map(|s| parse_set(s)).collect::<Result<Vec<_>>>()?;
    let mats = powered(ms, n)?;
    let e = lattice_correlation(&gs, &mats, big_q)?;
    let human = format!(
        "estimate {} ± {}  ({} of {}² lattice points)\n",
        e.estimate, e.error_bound, e.count, e.lattice
    );
    Ok(Report::new(
        json!({
            "n": n,
            "lattice": e.lattice,
            "count": e.count,
            "estimate": e.estimate,
            "error_bound": e.error_bound,
            "exact_lattice_value": e.exact().to_string(),
        }),
        human,
    ))
}

pub fn scan(t: &str, s: &str, set: &str, big_q: u32, n: &str) -> Result<Report> {
    let r = conjecture_scan(&parse_sl2(t)?, &parse_sl2(s)?, &parse_set(set)?, parse_range(n)?, big_q)?;
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.n.to_string(),
                format!("{:.6}", row.estimate),
                format!("{:.6}", row.error_bound),
                r.expected_at(row.n).map_or("-".into(), |l| format!("{l:.6}")),
                match (row.plateau, r.row_consistent(row)) {
                    (_, None) => "-".into(),
                    (p, Some(c)) => format!("{}{}", if c { "yes" } else { "no" }, if p { "" } else { " (beyond resolution)" }),
                },
            ]
        })
        .collect();
    let mut human = table(&["n", "estimate", "bound", "limit", "within"], &rows);
    human.push_str(&format!(
        "pair {:?}; limit points {:?}; classification {:?}\n",
        r.pair, r.limit_points, r.classification
    ));
    let csv = r.to_csv();
    Ok(Report::new(r.to_json(), human).with_csv(csv))
}

pub fn cesaro(seq: &str, a: &str, b: &str, n_max: i64, big_q: u32) -> Result<Report> {
    let seq = SeqInput::parse(seq)?;
    let r = cesaro_scan(&seq.family(), &parse_set(a)?, &parse_set(b)?, n_max, big_q)?;
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.n.to_string(),
                format!("{:.6}", row.correlation),
                format!("{:.6}", row.average),
                format!("{:.6}", row.average_bound),
            ]
        })
        .collect();
    let mut human = table(&["n", "correlation", "cesaro avg", "bound"], &rows);
    human.push_str(&format!("product of measures {}\n", r.product));
    let csv = r.to_csv();
    Ok(Report::new(r.to_json(), human).with_csv(csv))
}

pub fn krengel(f: &str, t: &str) -> Result<Report> {
    let c = krengel_orthogonal(&parse_trig(f)?, &parse_sl2(t)?)?;
    let human = format!(
        "M = {}; transport set {:?} (searched |k| <= {}); {} multiples checked, all zero: {}\n",
        c.modulus,
        c.transport,
        c.search_bound,
        c.checked.len(),
        c.all_zero()
    );
    let ok = c.all_zero();
    Ok(Report::new(c.to_json(), human).disagree_unless(ok, "nonzero correlation at a multiple of M"))
}

pub fn unipotent(gens: &[String], max_len: usize) -> Result<Report> {
    let gs = gens.iter().map(|s| parse_sl2(s)).collect::<Result<Vec<_>>>()?;
    let (out, human) = match find_unipotent(&gs, max_len)? {
        UnipotentSearch::Found { word, matrix } => {
            let w = word_to_string(&word);
            (
                json!({ "found": true, "word": w, "matrix": matrix.to_string(), "max_len": max_len }),
                format!("{w} = {matrix}\n"),
            )
        }
        UnipotentSearch::NoneUpTo(l) => (
            json!({ "found": false, "max_len": l }),
            format!("no parabolic word of length <= {l}\n"),
        ),
    };
    Ok(Report::new(out, human))
}
