//! Exact lattice sums of rational functions with rational poles.
//!
//! `Σ_{m∈Z} (m+z)^{-p}` is `π^p·P_p(cot πz)` with `P_1(c) = c` and
//! `P_{p+1} = P_p'·(1+c²)/p` (from differentiating `π cot πz`). For `p = 1`
//! the sum is the symmetric limit. Combined with partial fractions this
//! sums `P(t)/Π(t−ρ_k)` over an arithmetic progression in closed form.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::quad::ratio_to_f64;

/// Coefficients of `P_p`, low degree first.
fn cot_poly(p: u32) -> Vec<f64> {
    let mut poly = vec![0.0, 1.0];
    for k in 1..p {
        // derivative, times (1 + c²), divided by k
        let der: Vec<f64> = poly.iter().enumerate().skip(1).map(|(i, a)| i as f64 * a).collect();
        let mut next = vec![0.0; der.len() + 2];
        for (i, a) in der.iter().enumerate() {
            next[i] += a / k as f64;
            next[i + 2] += a / k as f64;
        }
        poly = next;
    }
    poly
}

/// `Σ_{m∈Z} (m+z)^{-p}` for non-integer `z`, symmetric when `p = 1`.
pub fn shifted_power_sum(z: f64, p: u32) -> f64 {
    assert!(p >= 1);
    let frac = z - z.round();
    let c = 1.0 / (PI * frac).tan();
    let poly = cot_poly(p);
    let val = poly.iter().rev().fold(0.0, |acc, a| acc * c + a);
    PI.powi(p as i32) * val
}

/// `Σ_{m≠0} m^{-p}`, symmetric: zero for odd `p`, `2ζ(p)` for even `p ≤ 8`.
pub fn punctured_power_sum(p: u32) -> f64 {
    match p {
        _ if p % 2 == 1 => 0.0,
        2 => PI.powi(2) / 3.0,
        4 => PI.powi(4) / 45.0,
        6 => 2.0 * PI.powi(6) / 945.0,
        8 => 2.0 * PI.powi(8) / 9450.0,
        _ => panic!("pole order {p} not supported"),
    }
}

/// Partial fractions of `1/Π_k (t − ρ_k)`: for each distinct pole `ρ` the
/// coefficients `A_1, …, A_m` of `(t−ρ)^{-1}, …, (t−ρ)^{-m}`.
pub fn partial_fractions(roots: &[BigRational]) -> Vec<(BigRational, Vec<BigRational>)> {
    let mut distinct: Vec<(BigRational, usize)> = Vec::new();
    for r in roots {
        match distinct.iter_mut().find(|(x, _)| x == r) {
            Some(e) => e.1 += 1,
            None => distinct.push((r.clone(), 1)),
        }
    }
    distinct
        .iter()
        .map(|(rho, mult)| {
            // Taylor series at u = 0 of Π_{other} (u + δ)^{-m}, δ = ρ − ρ_other
            let mut series = vec![BigRational::zero(); *mult];
            series[0] = BigRational::one();
            for (other, m) in distinct.iter().filter(|(o, _)| o != rho) {
                let delta = rho - other;
                let inv = delta.recip();
                // (u+δ)^{-m} = δ^{-m} Σ_s binom(-m, s) (u/δ)^s
                let mut factor = vec![BigRational::zero(); *mult];
                let mut coef = inv.pow(*m as i32);
                for (s, slot) in factor.iter_mut().enumerate() {
                    *slot = coef.clone();
                    let num = -BigInt::from(*m + s);
                    coef = coef * BigRational::new(num, BigInt::from(s + 1)) * inv.clone();
                }
                let mut prod = vec![BigRational::zero(); *mult];
                for (i, a) in series.iter().enumerate() {
                    for (j, b) in factor.iter().enumerate().take(*mult - i) {
                        prod[i + j] += a * b;
                    }
                }
                series = prod;
            }
            // A_p is the coefficient of u^{mult - p}
            let coeffs = (1..=*mult).map(|p| series[*mult - p].clone()).collect();
            (rho.clone(), coeffs)
        })
        .collect()
}

/// `Σ 1/Π_k(t − ρ_k)` over integers `t ≡ r (mod l)` that are not roots.
/// Needs at least two roots (counted with multiplicity) for convergence.
pub fn progression_sum(poles: &[(BigRational, Vec<BigRational>)], r: i64, l: i64) -> f64 {
    let integer_roots: Vec<i64> = poles
        .iter()
        .filter(|(rho, _)| rho.is_integer())
        .map(|(rho, _)| rho.to_integer().to_i64().expect("pole fits in i64"))
        .collect();
    let lq = BigInt::from(l);
    let mut total = 0.0;
    for (rho, coeffs) in poles {
        let z = (BigRational::from_integer(BigInt::from(r)) - rho) / BigRational::from_integer(lq.clone());
        let on_lattice = z.is_integer();
        let zf = ratio_to_f64(&z);
        for (idx, a) in coeffs.iter().enumerate() {
            let p = idx as u32 + 1;
            let af = ratio_to_f64(a);
            let base = if on_lattice {
                punctured_power_sum(p)
            } else {
                shifted_power_sum(zf, p)
            };
            total += af * base / (l as f64).powi(p as i32);
            // remove the other poles that sit on this progression
            for &e in &integer_roots {
                if (e - r).rem_euclid(l) == 0 && BigRational::from_integer(e.into()) != *rho {
                    let d = BigRational::from_integer(e.into()) - rho;
                    total -= af / ratio_to_f64(&d).powi(p as i32);
                }
            }
        }
    }
    total
}

/// Root `−a/b` of `a + b·t`.
pub fn linear_root(a: i64, b: i64) -> BigRational {
    assert!(b != 0);
    let g = a.gcd(&b);
    let (mut n, mut d) = (-a / g, b / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    BigRational::new(n.into(), d.into())
}

/// `|Σ_ρ A_1(ρ)|`, which vanishes once the denominator has degree at least 2.
pub fn residue_total(poles: &[(BigRational, Vec<BigRational>)]) -> BigRational {
    poles
        .iter()
        .map(|(_, c)| c[0].clone())
        .fold(BigRational::zero(), |acc, x| acc + x)
        .abs()
}
