//! Cross-checks of decider verdicts against the character oracle.

use num_bigint::BigInt;
use serde_json::{json, Value};
use toral::algebra::{vec_add, Vec2};
use toral::decide::Verdict;
use toral::oracle::char_correlation;
use toral::Mat2Z;

#[derive(Clone, Debug)]
pub struct Check {
    pub ok: bool,
    pub detail: String,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({ "agrees": self.ok, "detail": self.detail })
    }
}

fn to_vec2(v: &[BigInt]) -> Vec2<BigInt> {
    [v[0].clone(), v[1].clone()]
}

/// The witness `(x_1, …, x_k, y)` must give correlation 1 for every
/// `1 ≤ n ≤ up_to` on the verdict's progression.
pub fn witness(v: &Verdict, sample: impl Fn(i64) -> Vec<Mat2Z>, up_to: i64) -> Check {
    let Some(w) = &v.witness else {
        return Check {
            ok: false,
            detail: "negative verdict without a witness".into(),
        };
    };
    let k = w.len() - 1;
    let xs: Vec<Vec2<BigInt>> = w[..k].iter().map(|x| to_vec2(x)).collect();
    let mut y = to_vec2(&w[k]);
    // test hook for the disagreement exit path
    if std::env::var_os("TORAL_PERTURB_WITNESS").is_some() {
        y[0] += 1;
    }
    let (m, r) = v.progression();
    let ns: Vec<i64> = (1..=up_to)
        .filter(|n| n.rem_euclid(m as i64) == r as i64)
        .collect();
    let failed: Vec<i64> = ns
        .iter()
        .copied()
        .filter(|&n| char_correlation(&xs, &y, &sample(n)) != Ok(1))
        .collect();
    if failed.is_empty() {
        Check {
            ok: true,
            detail: format!("witness correlation is 1 for all {} sampled n <= {up_to} (n = {r} mod {m})", ns.len()),
        }
    } else {
        Check {
            ok: false,
            detail: format!("witness correlation is 0 at n = {failed:?}"),
        }
    }
}

fn box_vectors(radius: i64) -> Vec<Vec2<BigInt>> {
    let mut out = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            out.push([BigInt::from(a), BigInt::from(b)]);
        }
    }
    out
}

/// At each sampled `n`, no character tuple with `x_i` in `[-radius, radius]²`,
/// not all zero, and `y` in the same box correlates to 1.
pub fn no_small_relation(sample: impl Fn(i64) -> Vec<Mat2Z>, ns: &[i64], radius: i64) -> Check {
    let boxv = box_vectors(radius);
    let origin = boxv.len() / 2;
    let bound = BigInt::from(radius);
    for &n in ns {
        let ms = sample(n);
        let moved: Vec<Vec<Vec2<BigInt>>> = ms
            .iter()
            .map(|m| {
                let t = m.transpose();
                boxv.iter().map(|x| t.apply(x)).collect()
            })
            .collect();
        let k = ms.len() as u32;
        for code in 0..boxv.len().pow(k) {
            let idx: Vec<usize> = (0..k).map(|i| code / boxv.len().pow(i) % boxv.len()).collect();
            if idx.iter().all(|&i| i == origin) {
                continue;
            }
            let s = idx
                .iter()
                .enumerate()
                .fold([BigInt::from(0), BigInt::from(0)], |acc, (i, &j)| vec_add(&acc, &moved[i][j]));
            let y = [-&s[0], -&s[1]];
            if y.iter().any(|c| c > &bound || c < &-&bound) {
                continue;
            }
            let xs: Vec<_> = idx.iter().map(|&i| boxv[i].clone()).collect();
            if char_correlation(&xs, &y, &ms) == Ok(1) {
                let show = |v: &Vec2<BigInt>| format!("({},{})", v[0], v[1]);
                return Check {
                    ok: false,
                    detail: format!(
                        "correlation 1 at n = {n} for x = [{}], y = {}",
                        xs.iter().map(show).collect::<Vec<_>>().join(", "),
                        show(&y)
                    ),
                };
            }
        }
    }
    Check {
        ok: true,
        detail: format!("no character relation in [-{radius},{radius}]^2 at n = {ns:?}"),
    }
}
