//! Lattice scans of `μ(D ∩ TⁿD ∩ SⁿD)` and Cesàro averages of correlations.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{classify, Mat2, MatClass};
use crate::decide::{decide_joint_powers, Answer};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::oracle::{
    lattice_correlation, limit_two_unipotents, projection_norm_sq, GridSet, Observable,
};
use crate::scalar::IntScalar;

/// Truncation used for the two-unipotent limit series.
const LIMIT_TRUNCATION: i64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairClass {
    Equal,
    Negatives,
    HyperbolicPair,
    UnipotentHyperbolic,
    HyperbolicUnipotent,
    UnipotentPair,
    CommutingUnipotents,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitClass {
    Constant,
    TwoPoint,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: i64,
    pub estimate: f64,
    pub error_bound: f64,
    /// `max(‖Tⁿ‖, ‖Sⁿ‖)·q ≤ Q/16`
    pub plateau: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub t: String,
    pub s: String,
    pub set: GridSet,
    pub lattice: u32,
    pub n_range: (i64, i64),
    pub rows: Vec<ScanRow>,
    pub pair: PairClass,
    pub mu: f64,
    pub mu_squared: f64,
    pub mu_cubed: f64,
    /// `μ(D)·μ(D ∩ −D)`
    pub mu_times_mu_neg: f64,
    /// Theoretical limit points. For `Negatives` the first is the even-`n`
    /// value and the second the odd one.
    pub limit_points: Vec<f64>,
    /// Extra uncertainty in the limit points themselves.
    pub limit_tolerance: f64,
    pub classification: LimitClass,
}

impl ScanReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("# toral-scan v1\nn,estimate,error_bound\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.estimate, r.error_bound));
        }
        out
    }

    /// The limit point row `n` should approach, if theory gives one.
    pub fn expected_at(&self, n: i64) -> Option<f64> {
        match self.limit_points.as_slice() {
            [] => None,
            [l] => Some(*l),
            [even, odd, ..] => Some(if n.rem_euclid(2) == 0 { *even } else { *odd }),
        }
    }

    /// Does the plateau row `r` lie within its bounds of the theoretical value?
    pub fn row_consistent(&self, r: &ScanRow) -> Option<bool> {
        self.expected_at(r.n)
            .map(|l| (r.estimate - l).abs() <= r.error_bound + self.limit_tolerance)
    }
}

/// `−D`: the cell `(i, j)` goes to `(q−1−i, q−1−j)`.
pub fn negate_set(d: &GridSet) -> GridSet {
    let q = d.q();
    GridSet::new(q, d.cells().iter().map(|&(i, j)| (q - 1 - i, q - 1 - j)))
        .expect("cells stay on the grid")
}

fn intersection_measure(a: &GridSet, b: &GridSet) -> f64 {
    let common = a.cells().intersection(b.cells()).count();
    common as f64 / (a.q() as f64 * a.q() as f64)
}

fn norm_f64<T: IntScalar>(m: &Mat2<T>) -> f64 {
    m.norm().to_bigint().to_f64().unwrap_or(f64::INFINITY)
}

fn classify_pair<T: IntScalar>(t: &Mat2<T>, s: &Mat2<T>) -> Result<PairClass> {
    let (ct, cs) = (classify(t)?, classify(s)?);
    let unipotent = |c: MatClass| c == MatClass::Unipotent { negated: false };
    Ok(match (ct.is_hyperbolic(), cs.is_hyperbolic()) {
        (true, true) if t == s => PairClass::Equal,
        (true, true) if *t == -s => PairClass::Negatives,
        (true, true) => PairClass::HyperbolicPair,
        (false, true) if unipotent(ct) => PairClass::UnipotentHyperbolic,
        (true, false) if unipotent(cs) => PairClass::HyperbolicUnipotent,
        (false, false) if unipotent(ct) && unipotent(cs) => {
            if t.commutes_with(s) {
                PairClass::CommutingUnipotents
            } else {
                PairClass::UnipotentPair
            }
        }
        _ => PairClass::Other,
    })
}

fn classify_limit(report: &ScanReport) -> LimitClass {
    // the limit is read from the second half of the plateau; small n are transient
    let all: Vec<&ScanRow> = report.rows.iter().filter(|r| r.plateau && r.n >= 1).collect();
    let plateau = &all[all.len() / 2..];
    if plateau.is_empty() {
        return LimitClass::Undetermined;
    }
    if !plateau.iter().all(|r| report.row_consistent(r) == Some(true)) {
        return LimitClass::Undetermined;
    }
    match report.limit_points.as_slice() {
        [_] => LimitClass::Constant,
        [a, b] => {
            let widest = plateau
                .iter()
                .map(|r| r.error_bound)
                .fold(0.0, f64::max)
                + report.limit_tolerance;
            let parities = plateau.iter().map(|r| r.n.rem_euclid(2)).collect::<Vec<_>>();
            let both = parities.contains(&0) && parities.contains(&1);
            if (a - b).abs() > 2.0 * widest && both {
                LimitClass::TwoPoint
            } else if (a - b).abs() == 0.0 {
                LimitClass::Constant
            } else {
                LimitClass::Undetermined
            }
        }
        _ => LimitClass::Undetermined,
    }
}

/// Estimates `μ(D ∩ TⁿD ∩ SⁿD) = ∫ 1_D · 1_D∘T⁻ⁿ · 1_D∘S⁻ⁿ` on the `Q`-lattice
/// for `n` in `n_range`, and attaches the limit predicted for the pair.
pub fn conjecture_scan<T: IntScalar>(
    t: &Mat2<T>,
    s: &Mat2<T>,
    d: &GridSet,
    n_range: (i64, i64),
    big_q: u32,
) -> Result<ScanReport> {
    t.ensure_unimodular()?;
    s.ensure_unimodular()?;
    let (lo, hi) = n_range;
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")));
    }
    let pair = classify_pair(t, s)?;
    let (t_inv, s_inv) = (t.inverse(), s.inverse());
    let sets = [d.clone(), d.clone(), d.clone()];
    let q = d.q() as f64;
    let rows = (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let ms = [t_inv.pow(n), s_inv.pow(n)];
            let est = lattice_correlation(&sets, &ms, big_q)?;
            let growth = norm_f64(&ms[0]).max(norm_f64(&ms[1]));
            Ok(ScanRow {
                n,
                estimate: est.estimate,
                error_bound: est.error_bound,
                plateau: growth * q <= big_q as f64 / 16.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mu = d.measure_f64();
    let mu_neg = intersection_measure(d, &negate_set(d));
    let mut tolerance = 0.0;
    let limit_points = match pair {
        PairClass::Equal => vec![mu * mu],
        PairClass::Negatives => vec![mu * mu, mu * mu_neg],
        PairClass::HyperbolicPair => {
            if decide_joint_powers(&[t.clone(), s.clone()])?.answer == Answer::JointlyMixing {
                vec![mu * mu * mu]
            } else {
                Vec::new()
            }
        }
        PairClass::UnipotentHyperbolic => vec![mu * projection_norm_sq(d, t)?],
        PairClass::HyperbolicUnipotent => vec![mu * projection_norm_sq(d, s)?],
        PairClass::UnipotentPair => {
            let f = Observable::Grid(d.clone());
            let lim = limit_two_unipotents(&f, &f, &f, &t_inv, &s_inv, LIMIT_TRUNCATION)?;
            tolerance = lim.tail_bound;
            vec![lim.value.re]
        }
        PairClass::CommutingUnipotents | PairClass::Other => Vec::new(),
    };
    let mut report = ScanReport {
        t: t.to_string(),
        s: s.to_string(),
        set: d.clone(),
        lattice: big_q,
        n_range,
        rows,
        pair,
        mu,
        mu_squared: mu * mu,
        mu_cubed: mu * mu * mu,
        mu_times_mu_neg: mu * mu_neg,
        limit_points,
        limit_tolerance: tolerance,
        classification: LimitClass::Undetermined,
    };
    report.classification = classify_limit(&report);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CesaroRow {
    pub n: i64,
    /// estimate of `μ(A ∩ T_n⁻¹B)`
    pub correlation: f64,
    pub error_bound: f64,
    /// `(1/n) Σ_{m≤n} |μ(A ∩ T_m⁻¹B) − μ(A)μ(B)|`
    pub average: f64,
    pub average_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CesaroReport {
    pub lattice: u32,
    pub product: f64,
    pub rows: Vec<CesaroRow>,
}

impl CesaroReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("# toral-cesaro v1\nn,correlation,error_bound,average,average_bound\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n, r.correlation, r.error_bound, r.average, r.average_bound
            ));
        }
        out
    }
}

/// Running Cesàro averages of `|μ(A ∩ T_n⁻¹B) − μ(A)μ(B)|` for `n = 1..=n_max`.
/// Since `|·|` is 1-Lipschitz, each term inherits the lattice error bound.
pub fn cesaro_scan<T: IntScalar>(
    family: &Family<T>,
    a: &GridSet,
    b: &GridSet,
    n_max: i64,
    big_q: u32,
) -> Result<CesaroReport> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let sets = [a.clone(), b.clone()];
    let estimates = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let m = family.evaluate(&T::int(n));
            m.ensure_unimodular()?;
            lattice_correlation(&sets, &[m], big_q)
        })
        .collect::<Result<Vec<_>>>()?;
    let product = a.measure_f64() * b.measure_f64();
    let (mut sum, mut bound) = (0.0, 0.0);
    let rows = estimates
        .into_iter()
        .zip(1..)
        .map(|(e, n)| {
            sum += (e.estimate - product).abs();
            bound += e.error_bound;
            CesaroRow {
                n,
                correlation: e.estimate,
                error_bound: e.error_bound,
                average: sum / n as f64,
                average_bound: bound / n as f64,
            }
        })
        .collect();
    Ok(CesaroReport {
        lattice: big_q,
        product,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Mat2<BigInt>;

    fn quarter() -> GridSet {
        GridSet::rect(2, (0, 1), (0, 1)).unwrap()
    }

    #[test]
    fn pair_classes() {
        let t = M::from_i64(2, 1, 1, 1);
        assert_eq!(classify_pair(&t, &t).unwrap(), PairClass::Equal);
        assert_eq!(classify_pair(&t, &-&t).unwrap(), PairClass::Negatives);
        let u = M::from_i64(1, 0, 1, 1);
        assert_eq!(classify_pair(&u, &t).unwrap(), PairClass::UnipotentHyperbolic);
        assert_eq!(
            classify_pair(&u, &u.pow(2)).unwrap(),
            PairClass::CommutingUnipotents
        );
    }

    #[test]
    fn negated_quarter_is_disjoint() {
        let d = quarter();
        assert_eq!(negate_set(&d).cells().iter().next(), Some(&(1, 1)));
        assert_eq!(intersection_measure(&d, &negate_set(&d)), 0.0);
    }

    #[test]
    fn equal_pair_limit_is_mu_squared() {
        let t = M::from_i64(2, 1, 1, 1);
        let r = conjecture_scan(&t, &t, &quarter(), (1, 4), 1024).unwrap();
        assert_eq!(r.limit_points, vec![1.0 / 16.0]);
        assert_eq!(r.rows.len(), 4);
        assert!(r.to_csv().starts_with("# toral-scan v1\nn,estimate,error_bound\n"));
    }

    #[test]
    fn cesaro_average_for_hyperbolic_power() {
        let f = Family::Power(crate::family::PowerFamily::new(
            M::from_i64(2, 1, 1, 1),
            crate::family::IntPoly::var(),
        ).unwrap());
        let r = cesaro_scan(&f, &quarter(), &quarter(), 4, 512).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|row| row.average <= 0.25 + row.average_bound));
    }
}
