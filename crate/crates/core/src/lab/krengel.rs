//! For a mean-zero trigonometric polynomial `f` and hyperbolic `T`, a
//! modulus `M` with `∫ f(T^k ξ) f̄(ξ) dξ = 0` for every nonzero multiple `k` of `M`.
//!
//! The correlation at `k` is `Σ f̂(x) conj f̂(y)` over pairs with `ᵗT^k x = y`,
//! so it vanishes unless `k` lies in the transport set
//! `B = {k ≠ 0 : ᵗT^k x = y for support frequencies x, y}`; `M = 1 + max|B|`.
//!
//! Bound on `B`: writing `x = P₊x + P₋x` for the projections of `ᵗT`,
//! `ᵗT^k x = y` forces `|λ|^k ‖P₊x‖ = ‖P₊y‖` for `k > 0` and
//! `|λ|^{|k|} ‖P₋x‖ = ‖P₋y‖` for `k < 0`. Both projections of a nonzero
//! integer vector are nonzero, so `|k| ≤ ln(max ρ / min ρ) / ln|λ|` with
//! `ρ` ranging over `‖P±x‖`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{eigen_data, Mat2, QuadVal};
use crate::error::{Error, Result};
use crate::oracle::{trig_correlation, Coef, Freq, TrigPoly};
use crate::scalar::IntScalar;

pub const CERTIFY_UP_TO: i64 = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct KrengelCertificate<T: IntScalar> {
    pub modulus: i64,
    /// the transport set `B`, sorted
    pub transport: Vec<i64>,
    /// search radius `K`; `B ⊂ [−K, K]`
    pub search_bound: i64,
    /// `(k, ∫ f(T^k ξ) f̄(ξ) dξ)` for nonzero multiples `k` of `M`, `|k| ≤ 50`
    pub checked: Vec<(i64, Coef<T>)>,
}

impl<T: IntScalar> KrengelCertificate<T> {
    pub fn all_zero(&self) -> bool {
        self.checked.iter().all(|(_, c)| c.is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "modulus": self.modulus,
            "transport": self.transport,
            "search_bound": self.search_bound,
            "checked": self.checked.iter().map(|(k, c)| json!({
                "k": k,
                "re": c.re.to_string(),
                "im": c.im.to_string(),
            })).collect::<Vec<_>>(),
            "all_zero": self.all_zero(),
        })
    }
}

fn euclid_norm<T: IntScalar>(v: &[QuadVal<T>; 2]) -> f64 {
    v.iter().map(|c| c.to_f64().powi(2)).sum::<f64>().sqrt()
}

pub fn krengel_orthogonal<T: IntScalar>(
    f: &TrigPoly<T>,
    t: &Mat2<T>,
) -> Result<KrengelCertificate<T>> {
    if !f.mean().is_zero() {
        return Err(Error::ZeroFrequencyPresent);
    }
    let tt = t.transpose();
    let eig = eigen_data(&tt)?;
    let support: Vec<Freq<T>> = f.support().cloned().collect();
    let mut search_bound = 0;
    if !support.is_empty() {
        let lift = |x: &Freq<T>| {
            [
                QuadVal::from_int(x[0].clone(), eig.d.clone()),
                QuadVal::from_int(x[1].clone(), eig.d.clone()),
            ]
        };
        let norms: Vec<f64> = support
            .iter()
            .flat_map(|x| {
                let lx = lift(x);
                [
                    euclid_norm(&eig.p_plus.apply(&lx)),
                    euclid_norm(&eig.p_minus.apply(&lx)),
                ]
            })
            .collect();
        let max = norms.iter().cloned().fold(f64::MIN, f64::max);
        let min = norms.iter().cloned().fold(f64::MAX, f64::min);
        let growth = eig.lambda.abs().to_f64().ln();
        // +1 absorbs the rounding of the float logarithms
        search_bound = ((max / min).ln() / growth).floor() as i64 + 1;
    }
    let members: std::collections::BTreeSet<&Freq<T>> = support.iter().collect();
    let mut transport = Vec::new();
    for k in (-search_bound..=search_bound).filter(|&k| k != 0) {
        let p = tt.pow(k);
        if support.iter().any(|x| members.contains(&p.apply(x))) {
            transport.push(k);
        }
    }
    let modulus = 1 + transport.iter().map(|k| k.abs()).max().unwrap_or(0);
    let conj = f.conj();
    let mut checked = Vec::new();
    let mut k = -(CERTIFY_UP_TO / modulus) * modulus;
    while k <= CERTIFY_UP_TO {
        if k != 0 {
            // ∫ f(T^k ξ) f̄(ξ) dξ
            let c = trig_correlation(&[f.clone(), conj.clone()], &[t.pow(k)])?;
            checked.push((k, c));
        }
        k += modulus;
    }
    Ok(KrengelCertificate {
        modulus,
        transport,
        search_bound,
        checked,
    })
}

/// `χ_{x_1} + … + χ_{x_m}`.
pub fn character_sum(xs: &[[i64; 2]]) -> TrigPoly<BigInt> {
    let mut p = TrigPoly::zero();
    for x in xs {
        p = p.add(&TrigPoly::character([BigInt::from(x[0]), BigInt::from(x[1])]));
    }
    p
}
