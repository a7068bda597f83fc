//! Three conjugates `h_i = g⁻ⁱ h gⁱ` of a hyperbolic `h`: every pair of
//! `(h_iⁿ)` is jointly mixing, the triple is not.

use serde_json::{json, Value};

use crate::algebra::{classify, Mat2, Vec2};
use crate::decide::{decide_joint_powers, witness_same_modulus_triple, TripleWitness, Verdict};
use crate::error::{Error, Result};
use crate::oracle::char_correlation;
use crate::scalar::IntScalar;

pub const VERIFY_UP_TO: i64 = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct Order2Counterexample<T: IntScalar> {
    pub triple: [Mat2<T>; 3],
    pub witness: TripleWitness<T>,
    /// `n` in `1..=VERIFY_UP_TO` (on the witness progression) where the
    /// character correlation of the witness was checked to be 1
    pub verified: Vec<i64>,
    pub pair_verdicts: Vec<((usize, usize), Verdict)>,
    pub triple_verdict: Verdict,
}

impl<T: IntScalar> Order2Counterexample<T> {
    pub fn to_json(&self) -> Value {
        let vec_json = |v: &Vec2<T>| json!([v[0].to_bigint().to_string(), v[1].to_bigint().to_string()]);
        json!({
            "triple": self.triple.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "witness": self.witness.xs.iter().map(vec_json).collect::<Vec<_>>(),
            "verified": self.verified,
            "pairs": self.pair_verdicts.iter().map(|((i, j), v)| json!({
                "pair": [i, j],
                "verdict": v.to_json(),
            })).collect::<Vec<_>>(),
            "triple_verdict": self.triple_verdict.to_json(),
        })
    }

    /// Every pair jointly mixing, the triple not, and the witness checked
    /// on every sampled `n`.
    pub fn exhibits_failure(&self) -> bool {
        use crate::decide::Answer;
        let (m, r) = self.witness.progression();
        let expected = (1..=VERIFY_UP_TO)
            .filter(|n| n.rem_euclid(m as i64) == r as i64)
            .count();
        self.pair_verdicts
            .iter()
            .all(|(_, v)| v.answer == Answer::JointlyMixing)
            && self.triple_verdict.answer == Answer::NotJointlyMixing
            && self.verified.len() == expected
    }
}

pub fn order2_counterexample<T: IntScalar>(
    g: &Mat2<T>,
    h: &Mat2<T>,
) -> Result<Order2Counterexample<T>> {
    for m in [g, h] {
        if !classify(m)?.is_hyperbolic() {
            return Err(Error::NotHyperbolic(m.to_string()));
        }
    }
    let g2 = g * g;
    if g.commutes_with(h) || g2.commutes_with(h) {
        return Err(Error::CommutingInputs);
    }
    let g_inv = g.inverse();
    let conj = |i: i64| &(&g_inv.pow(i) * h) * &g.pow(i);
    let triple = [conj(1), conj(2), conj(3)];
    let witness = witness_same_modulus_triple(&triple)?;
    let (m, r) = witness.progression();
    let zero = [T::zero(), T::zero()];
    let mut verified = Vec::new();
    for n in (1..=VERIFY_UP_TO).filter(|n| n.rem_euclid(m as i64) == r as i64) {
        let ms: Vec<Mat2<T>> = triple.iter().map(|t| t.pow(n)).collect();
        if char_correlation(&witness.xs, &zero, &ms)? == 1 {
            verified.push(n);
        }
    }
    let mut pair_verdicts = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = decide_joint_powers(&[triple[i].clone(), triple[j].clone()])?;
        pair_verdicts.push(((i, j), v));
    }
    let triple_verdict = decide_joint_powers(&triple)?;
    Ok(Order2Counterexample {
        triple,
        witness,
        verified,
        pair_verdicts,
        triple_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Mat2<BigInt>;

    #[test]
    fn standard_pair() {
        let g = M::from_i64(2, 1, 1, 1);
        let h = M::from_i64(1, 1, 1, 2);
        let c = order2_counterexample(&g, &h).unwrap();
        assert!(c.triple.iter().all(|t| t.trace() == BigInt::from(3)));
        assert_eq!(c.verified.len(), 30);
        assert!(c.exhibits_failure());
    }

    #[test]
    fn commuting_inputs_rejected() {
        let g = M::from_i64(2, 1, 1, 1);
        assert_eq!(
            order2_counterexample(&g, &g.pow(2)),
            Err(Error::CommutingInputs)
        );
    }
}
