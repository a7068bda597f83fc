use std::cmp::Ordering;


use super::verdict::{Answer, Reason, Verdict};
use crate::algebra::{classify, eigen_data, Mat2, QuadVal};
use crate::error::{Error, Result};
use crate::family::IntPoly;
use crate::scalar::IntScalar;

/// `|λ|` of one tuple member.
struct Growth<T: IntScalar> {
    abs_lambda: QuadVal<T>,
}

/// Is `c_i·log|λ_i| = c_j·log|λ_j|`? Decided exactly.
fn same_weighted_log<T: IntScalar>(ci: &T, gi: &Growth<T>, cj: &T, gj: &Growth<T>) -> bool {
    match (ci.is_zero(), cj.is_zero()) {
        (true, true) => return true,
        (true, false) | (false, true) => return false,
        _ => {}
    }
    if ci.signum() != cj.signum() {
        return false;
    }
    // a power of a unit of norm 1 other than 1 is irrational, and two
    // different real quadratic fields only share Q
    if gi.abs_lambda.d != gj.abs_lambda.d {
        return false;
    }
    let ei = ci.abs().to_u64().expect("exponent coefficient fits in u64");
    let ej = cj.abs().to_u64().expect("exponent coefficient fits in u64");
    gi.abs_lambda.pow(ei) == gj.abs_lambda.pow(ej)
}

/// Sufficient condition for joint mixing of `(T_1^{a_1(n)}, …, T_k^{a_k(n)})`:
/// `log|λ_i|·a_i(n) − log|λ_j|·a_j(n)` diverges for every pair, with the
/// zero sequence `a_0 ≡ 0` (index 0) included. Tuple members are indexed from 1.
pub fn check_rokhlin_sufficient<T: IntScalar>(
    ts: &[Mat2<T>],
    exps: &[IntPoly<T>],
) -> Result<Verdict> {
    if ts.len() != exps.len() {
        return Err(Error::LengthMismatch {
            expected: ts.len(),
            got: exps.len(),
        });
    }
    let mut growth = Vec::with_capacity(ts.len());
    for t in ts {
        if !classify(t)?.is_hyperbolic() {
            return Err(Error::NotHyperbolic(t.to_string()));
        }
        let e = eigen_data(t)?;
        growth.push(Growth {
            abs_lambda: e.lambda.abs(),
        });
    }
    let max_deg = exps.iter().filter_map(IntPoly::degree).max().unwrap_or(0);
    let mut reasons = Vec::new();
    let mut all = true;
    for i in 0..=ts.len() {
        for j in i + 1..=ts.len() {
            let diverges = if i == 0 {
                exps[j - 1].degree().is_some_and(|d| d >= 1)
            } else {
                let (gi, gj) = (&growth[i - 1], &growth[j - 1]);
                (1..=max_deg).any(|m| {
                    !same_weighted_log(&exps[i - 1].coeff(m), gi, &exps[j - 1].coeff(m), gj)
                })
            };
            if diverges {
                reasons.push(Reason::PairDiverges(i, j));
            } else {
                all = false;
                reasons.push(Reason::PairBounded(i, j));
            }
        }
    }
    if all {
        Ok(Verdict::positive(Answer::SufficientConditionHolds, reasons))
    } else {
        reasons.push(Reason::SufficientOnly);
        Ok(Verdict::positive(Answer::Unknown, reasons))
    }
}

/// Which of `c_i·log|λ_i|` and `c_j·log|λ_j|` is larger, for unequal values.
/// Both sides are compared as `|λ_i|^{c_i}` against `|λ_j|^{c_j}`.
pub fn compare_weighted_logs<T: IntScalar>(
    ci: u64,
    ti: &Mat2<T>,
    cj: u64,
    tj: &Mat2<T>,
) -> Result<Ordering> {
    let li = eigen_data(ti)?.lambda.abs().pow(ci);
    let lj = eigen_data(tj)?.lambda.abs().pow(cj);
    if li.d == lj.d && li == lj {
        return Ok(Ordering::Equal);
    }
    Ok(crate::algebra::compare_distinct(&li, &lj))
}
