//! Numeric report on the norm ratio `‖T_n‖ / λ_n^{γ_n}` for a polynomial
//! family raised to exponent sequences `a_1(n), …, a_k(n)`, where `λ_n` is
//! the expanding eigenvalue of `T_n` and `γ_n = min |a_i(n) − a_j(n)|` over
//! pairs including `a_0 ≡ 0`.
//!
//! The ratio tending to zero, or staying bounded for a mixing family, is
//! sufficient for joint mixing of `(T_n^{a_1(n)}, …)`. Neither is necessary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{classify, expanding_eigenvalue, Mat2};
use crate::decide::{
    decide_joint_polyfamilies, decide_joint_powers, decide_polyfamily_mixing, Answer, Verdict,
};
use crate::error::{Error, Result};
use crate::family::{family_power, IntPoly, PolyMatFamily};
use crate::scalar::IntScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Trend {
    ToZero,
    Bounded,
    Unbounded,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RokhlinRow {
    pub n: i64,
    pub norm: String,
    pub gamma: String,
    /// `ln(‖T_n‖/λ_n^{γ_n})` with a conservative enclosure
    pub log_ratio: f64,
    pub log_ratio_lo: f64,
    pub log_ratio_hi: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RokhlinReport {
    pub family: String,
    pub exponents: Vec<String>,
    pub rows: Vec<RokhlinRow>,
    pub trend: Trend,
    pub family_mixing: bool,
    /// the family is mixing and the ratio is bounded
    pub condition_bounded: bool,
    /// the ratio tends to zero
    pub condition_vanishing: bool,
    pub sufficient_only: bool,
    /// Exact decider verdict when the exponents make the tuple decidable.
    pub cross_check: Option<Value>,
    /// `false` if a condition holds but the decider says not jointly mixing.
    pub consistent: bool,
}

impl RokhlinReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `ln x` for a positive big integer.
fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    (x >> shift as usize).to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ratio_ln(r: &BigRational) -> f64 {
    big_ln(r.numer()) - big_ln(r.denom())
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Trend read off the second half of the rows: linear growth in `n` or
/// polynomial growth (`ln`-linear in `ln n`) with the last enclosure on
/// the right side of 0.
fn trend(rows: &[RokhlinRow]) -> Trend {
    let tail = &rows[rows.len() / 2..];
    if tail.len() < 3 {
        return Trend::Inconclusive;
    }
    let ns: Vec<f64> = tail.iter().map(|r| r.n as f64).collect();
    let log_ns: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|r| r.log_ratio).collect();
    let (s_lin, s_log) = (slope(&ns, &ys), slope(&log_ns, &ys));
    let last = tail.last().expect("nonempty");
    if (s_lin < -0.05 || s_log < -0.5) && last.log_ratio_hi < 0.0 {
        Trend::ToZero
    } else if (s_lin > 0.05 || s_log > 0.5) && last.log_ratio_lo > 0.0 {
        Trend::Unbounded
    } else if s_log.abs() < 0.1 {
        Trend::Bounded
    } else {
        Trend::Inconclusive
    }
}

/// Decider verdict for tuples the exact deciders cover: constant positive
/// exponents (powers of the family) or a constant family with exponents `c_i·n`.
fn cross_check<T: IntScalar>(
    family: &PolyMatFamily<T>,
    exps: &[IntPoly<T>],
) -> Result<Option<Verdict>> {
    if exps.iter().all(|a| a.is_constant() && a.leading().is_positive()) {
        let powers = exps
            .iter()
            .map(|a| {
                let k = a.leading().to_u32().ok_or_else(|| {
                    Error::InvalidArgument(format!("exponent {a} too large to expand"))
                })?;
                family_power(family, k)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(decide_joint_polyfamilies(&powers)));
    }
    let linear = exps
        .iter()
        .all(|a| a.degree() == Some(1) && a.coeff(0).is_zero());
    if family.degree() == 0 && linear {
        let base = family.evaluate(&T::zero());
        let ts: Vec<Mat2<T>> = exps
            .iter()
            .map(|a| {
                let c = a.coeff(1).to_i64().ok_or_else(|| {
                    Error::InvalidArgument(format!("exponent {a} too large"))
                })?;
                Ok(base.pow(c))
            })
            .collect::<Result<_>>()?;
        return Ok(Some(decide_joint_powers(&ts)?));
    }
    Ok(None)
}

pub fn rokhlin_report<T: IntScalar>(
    family: &PolyMatFamily<T>,
    exps: &[IntPoly<T>],
    n_range: (i64, i64),
) -> Result<RokhlinReport> {
    let (lo, hi) = n_range;
    if lo > hi || exps.is_empty() {
        return Err(Error::InvalidArgument(
            "need a nonempty range and at least one exponent".into(),
        ));
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        let nt = T::int(n);
        let m = family.evaluate(&nt);
        if !classify(&m)?.is_hyperbolic() {
            return Err(Error::NonHyperbolicSample(format!("{n} ({m})")));
        }
        let mut values = vec![BigInt::from(0)];
        values.extend(exps.iter().map(|a| a.eval(&nt).to_bigint()));
        let gamma = (0..values.len())
            .flat_map(|i| (i + 1..values.len()).map(move |j| (i, j)))
            .map(|(i, j)| (&values[i] - &values[j]).abs())
            .min()
            .expect("at least two values");
        let lambda = expanding_eigenvalue(&m.trace()).abs();
        let (l_lo, l_hi) = lambda.enclosure(64);
        let (ln_lo, ln_hi) = (ratio_ln(&l_lo), ratio_ln(&l_hi));
        let norm = m.norm().to_bigint();
        let ln_norm = big_ln(&norm);
        let g = gamma.to_f64().unwrap_or(f64::INFINITY);
        let mid = ln_norm - g * (ln_lo + ln_hi) / 2.0;
        // widen for the f64 rounding of each logarithm
        let slack = 1e-12 * (ln_norm.abs() + g * ln_hi.abs()) + 1e-15;
        rows.push(RokhlinRow {
            n,
            norm: norm.to_string(),
            gamma: gamma.to_string(),
            log_ratio: mid,
            log_ratio_lo: ln_norm - g * ln_hi - slack,
            log_ratio_hi: ln_norm - g * ln_lo + slack,
            ratio: mid.exp(),
        });
    }
    let trend = trend(&rows);
    let family_mixing = decide_polyfamily_mixing(family).answer == Answer::Mixing;
    let condition_vanishing = trend == Trend::ToZero;
    let condition_bounded = family_mixing && matches!(trend, Trend::ToZero | Trend::Bounded);
    let check = cross_check(family, exps)?;
    let consistent = match &check {
        Some(v) if condition_vanishing || condition_bounded => v.answer == Answer::JointlyMixing,
        _ => true,
    };
    Ok(RokhlinReport {
        family: family.to_string(),
        exponents: exps.iter().map(|a| a.to_string()).collect(),
        rows,
        trend,
        family_mixing,
        condition_bounded,
        condition_vanishing,
        sufficient_only: true,
        cross_check: check.map(|v| v.to_json()),
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_family, parse_poly};

    #[test]
    fn classical_rokhlin_ratio_vanishes() {
        let f = parse_family("[[2,1],[1,1]]").unwrap();
        let exps = [parse_poly("n").unwrap(), parse_poly("2*n").unwrap()];
        let r = rokhlin_report(&f, &exps, (1, 20)).unwrap();
        assert_eq!(r.trend, Trend::ToZero);
        assert!(r.condition_vanishing && r.consistent);
        assert_eq!(r.cross_check.unwrap()["answer"], "JointlyMixing");
    }

    #[test]
    fn non_hyperbolic_sample_rejected() {
        let f = parse_family("[[n,n^2-1],[1,n]]").unwrap();
        let exps = [parse_poly("1").unwrap()];
        assert!(matches!(
            rokhlin_report(&f, &exps, (1, 5)),
            Err(Error::NonHyperbolicSample(_))
        ));
    }

    #[test]
    fn big_logs() {
        let x = BigInt::from(3).pow(2000);
        assert!((big_ln(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9 * 2000.0);
    }
}
