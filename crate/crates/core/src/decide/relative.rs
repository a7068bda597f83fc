use num_bigint::BigInt;

use super::single::vec_to_big;
use super::verdict::{Answer, Reason, Verdict};
use crate::algebra::{classify, fixed_vector, Mat2, MatClass, Vec2};
use crate::error::{Error, Result};
use crate::family::IntPoly;
use crate::linalg::{integerize, PolyVectorSystem};
use crate::scalar::IntScalar;

/// Fixed frequency `v` of `ᵗU` for a unipotent `U` (trace exactly 2, `U ≠ I`).
pub fn relative_fixed_vector<T: IntScalar>(u: &Mat2<T>) -> Result<Vec2<T>> {
    match classify(u)? {
        MatClass::Unipotent { negated: false } => fixed_vector(&u.transpose()),
        _ => Err(Error::NotUnipotent(u.to_string())),
    }
}

/// Relative joint mixing of `(U_1^{a_1(n)}, …, U_k^{a_k(n)})`: the
/// identity `Σ α_i a_i(n) v_i + z ≡ 0` in `Z[n]²` has only the zero solution.
/// The witness is `[α, z]`, with the first nonzero `α_i` positive.
pub fn decide_relative_joint_unipotent<T: IntScalar>(
    us: &[Mat2<T>],
    exps: &[IntPoly<T>],
) -> Result<Verdict> {
    if us.len() != exps.len() {
        return Err(Error::LengthMismatch {
            expected: us.len(),
            got: exps.len(),
        });
    }
    let vs: Vec<Vec2<T>> = us
        .iter()
        .map(relative_fixed_vector)
        .collect::<Result<_>>()?;
    let mut sys = PolyVectorSystem::new();
    for (v, a) in vs.iter().zip(exps) {
        sys.push([a.scale(&v[0]), a.scale(&v[1])]);
    }
    sys.push_constant_vector();
    let basis = sys.kernel();
    let best = basis
        .iter()
        .map(|b| {
            let v = integerize(b);
            match v.iter().find(|x| !x.is_zero()) {
                Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
                _ => v,
            }
        })
        .min();
    let Some(v) = best else {
        return Ok(Verdict::positive(
            Answer::RelativelyJointlyMixing,
            vec![Reason::TrivialKernel],
        ));
    };
    let k = us.len();
    let big: Vec<BigInt> = vec_to_big(&v);
    Ok(Verdict::negative(
        Answer::NotRelativelyJointlyMixing,
        vec![big[..k].to_vec(), big[k..].to_vec()],
        vec![Reason::KernelWitness {
            dimension: basis.len(),
        }],
    ))
}
