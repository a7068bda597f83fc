use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::single::{element_witness, poly_kernel_witness, progression_reason, vec_to_big};
use super::verdict::{Answer, Reason, Verdict};
use crate::algebra::{classify, eigen_data, Mat2, MatClass, QuadVal, Vec2};
use crate::error::{Error, Result};
use crate::family::PolyMatFamily;
use crate::linalg::{canonical_kernel_vector, kernel_basis};
use crate::scalar::IntScalar;

/// Witness for a triple of matrices sharing `|trace|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleWitness<T> {
    pub xs: [Vec2<T>; 3],
    /// inputs that were negated to make the trace positive
    pub negated: Vec<usize>,
    pub kernel_dimension: usize,
}

impl<T: IntScalar> TripleWitness<T> {
    /// `(modulus, residue)` on which the witness holds for the original inputs.
    pub fn progression(&self) -> (u32, u32) {
        if self.negated.is_empty() {
            (1, 0)
        } else {
            (2, 0)
        }
    }
}

fn equal_up_to_sign<T: IntScalar>(a: &Mat2<T>, b: &Mat2<T>) -> bool {
    a == b || *a == -b
}

/// Integer triple with `Σ ᵗT_iⁿ x_i = 0` for every `n`, for three hyperbolic
/// matrices of equal `|trace|`, pairwise distinct up to sign.
///
/// After negating negative-trace inputs all three share the expanding
/// eigenvalue λ, so the identity reduces to `Σ P₊⁽ⁱ⁾ x_i = 0`; its Galois
/// conjugate is the matching condition on `P₋`. Splitting into rational and
/// surd parts gives 4 equations in 6 unknowns.
pub fn witness_same_modulus_triple<T: IntScalar>(ts: &[Mat2<T>]) -> Result<TripleWitness<T>> {
    match ts.len() {
        3 => {}
        2 => return Err(Error::SharedModulusPairOnly),
        k => {
            return Err(Error::InvalidArgument(format!(
                "expected three matrices, got {k}"
            )))
        }
    }
    let mut negated = Vec::new();
    let mut normalized = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        match classify(t)? {
            MatClass::Hyperbolic { positive_trace } => {
                if positive_trace {
                    normalized.push(t.clone());
                } else {
                    negated.push(i);
                    normalized.push(-t);
                }
            }
            _ => return Err(Error::NotHyperbolic(t.to_string())),
        }
    }
    if normalized[1].trace() != normalized[0].trace() || normalized[2].trace() != normalized[0].trace()
    {
        let traces: Vec<String> = ts.iter().map(|t| t.trace().to_string()).collect();
        return Err(Error::TracesDiffer(traces.join(",")));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if equal_up_to_sign(&ts[i], &ts[j]) {
                return Err(Error::NotPairwiseDistinct(i, j));
            }
        }
    }
    let projections: Vec<_> = normalized
        .iter()
        .map(|t| eigen_data(&t.transpose()).map(|e| e.p_plus))
        .collect::<Result<_>>()?;
    let mut rows: Vec<Vec<Ratio<T>>> = Vec::new();
    for r in 0..2 {
        let entries = |p: &Mat2<QuadVal<T>>| -> [QuadVal<T>; 2] {
            if r == 0 {
                [p.a.clone(), p.b.clone()]
            } else {
                [p.c.clone(), p.d.clone()]
            }
        };
        let row: Vec<_> = projections.iter().flat_map(entries).collect();
        rows.push(row.iter().map(|q| q.p.clone()).collect());
        rows.push(row.iter().map(|q| q.q.clone()).collect());
    }
    let basis = kernel_basis(&rows, 6);
    let v = canonical_kernel_vector(&basis).expect("4x6 system has a nontrivial kernel");
    let xs = [
        [v[0].clone(), v[1].clone()],
        [v[2].clone(), v[3].clone()],
        [v[4].clone(), v[5].clone()],
    ];
    Ok(TripleWitness {
        xs,
        negated,
        kernel_dimension: basis.len(),
    })
}

/// Canonical sign for a joint witness `(x_1, …, x_k, y)`: the flattening
/// `(y, x_1, …, x_k)` has a negative first nonzero entry.
pub(crate) fn normalize_joint(mut w: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let y = w.last().cloned().unwrap_or_default();
    let first = y
        .iter()
        .chain(w[..w.len() - 1].iter().flatten())
        .find(|x| !x.is_zero())
        .cloned();
    if first.is_some_and(|f| f.is_positive()) {
        for v in w.iter_mut() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    w
}

fn zero_witness(k: usize) -> Vec<Vec<BigInt>> {
    vec![vec![BigInt::zero(), BigInt::zero()]; k + 1]
}

/// Non-hyperbolic factor `T_i`: its element witness placed in slot `i`.
fn factor_failure<T: IntScalar>(ts: &[Mat2<T>], i: usize) -> Result<Option<Verdict>> {
    let Some(ew) = element_witness(&ts[i])? else {
        return Ok(None);
    };
    let mut w = zero_witness(ts.len());
    w[i] = vec_to_big(&ew.x);
    w[ts.len()] = vec_to_big(&ew.y);
    let mut reasons = vec![Reason::NonHyperbolicFactor(i), ew.reason];
    reasons.extend(progression_reason(ew.modulus, ew.residue));
    Ok(Some(Verdict::negative(
        Answer::NotJointlyMixing,
        normalize_joint(w),
        reasons,
    )))
}

/// Commuting pair with non-hyperbolic `C = T_i⁻¹T_j`: since
/// `ᵗT_jⁿ = ᵗT_iⁿ ᵗCⁿ`, the element witness `(x, y)` of `C` gives
/// `x_j = x`, `x_i = y`.
fn quotient_failure<T: IntScalar>(
    ts: &[Mat2<T>],
    i: usize,
    j: usize,
    reason: Reason,
) -> Result<Option<Verdict>> {
    let c = &ts[i].inverse() * &ts[j];
    let Some(ew) = element_witness(&c)? else {
        return Ok(None);
    };
    let mut w = zero_witness(ts.len());
    w[j] = vec_to_big(&ew.x);
    w[i] = vec_to_big(&ew.y);
    let mut reasons = vec![reason, ew.reason];
    reasons.extend(progression_reason(ew.modulus, ew.residue));
    Ok(Some(Verdict::negative(
        Answer::NotJointlyMixing,
        normalize_joint(w),
        reasons,
    )))
}

/// Joint mixing of `(T_1ⁿ, …, T_kⁿ)`: every `T_i` hyperbolic, `T_i ≠ ±T_j`,
/// and no three share `|trace|`.
pub fn decide_joint_powers<T: IntScalar>(ts: &[Mat2<T>]) -> Result<Verdict> {
    if ts.is_empty() {
        return Err(Error::InvalidArgument("need at least one matrix".into()));
    }
    for t in ts {
        t.ensure_unimodular()?;
    }
    for i in 0..ts.len() {
        if let Some(v) = factor_failure(ts, i)? {
            return Ok(v);
        }
    }
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if equal_up_to_sign(&ts[i], &ts[j]) {
                let v = quotient_failure(ts, i, j, Reason::EqualUpToSign(i, j))?;
                return Ok(v.expect("±I is not hyperbolic"));
            }
        }
    }
    let mut classes: BTreeMap<T, Vec<usize>> = BTreeMap::new();
    for (i, t) in ts.iter().enumerate() {
        classes.entry(t.trace().abs()).or_default().push(i);
    }
    if let Some(idx) = classes.values().find(|v| v.len() >= 3) {
        let (i, j, l) = (idx[0], idx[1], idx[2]);
        let tw = witness_same_modulus_triple(&[ts[i].clone(), ts[j].clone(), ts[l].clone()])?;
        let mut w = zero_witness(ts.len());
        for (slot, x) in [i, j, l].into_iter().zip(tw.xs.iter()) {
            w[slot] = vec_to_big(x);
        }
        let mut reasons = vec![
            Reason::ThreeSharedModulus([i, j, l]),
            Reason::KernelWitness {
                dimension: tw.kernel_dimension,
            },
        ];
        reasons.extend(tw.negated.iter().map(|&s| Reason::Normalized([i, j, l][s])));
        let (m, r) = tw.progression();
        reasons.extend(progression_reason(m, r));
        return Ok(Verdict::negative(
            Answer::NotJointlyMixing,
            normalize_joint(w),
            reasons,
        ));
    }
    Ok(Verdict::positive(
        Answer::JointlyMixing,
        vec![Reason::Hyperbolic],
    ))
}

/// Joint mixing of polynomial families through the coefficient kernel of
/// `Σ ᵗF_i(n) x_i + y ≡ 0`.
pub fn decide_joint_polyfamilies<T: IntScalar>(fs: &[PolyMatFamily<T>]) -> Verdict {
    match poly_kernel_witness(fs) {
        Some((w, dimension)) => Verdict::negative(
            Answer::NotJointlyMixing,
            w,
            vec![Reason::KernelWitness { dimension }],
        ),
        None => Verdict::positive(Answer::JointlyMixing, vec![Reason::TrivialKernel]),
    }
}

/// Pairwise commuting tuple: jointly mixing iff every `T_i` and every
/// `T_i⁻¹T_j` is hyperbolic.
pub fn decide_commuting_joint<T: IntScalar>(ts: &[Mat2<T>]) -> Result<Verdict> {
    if ts.is_empty() {
        return Err(Error::InvalidArgument("need at least one matrix".into()));
    }
    for t in ts {
        t.ensure_unimodular()?;
    }
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if !ts[i].commutes_with(&ts[j]) {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    for i in 0..ts.len() {
        if let Some(v) = factor_failure(ts, i)? {
            return Ok(v);
        }
    }
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if let Some(v) = quotient_failure(ts, i, j, Reason::NonHyperbolicQuotient(i, j))? {
                return Ok(v);
            }
        }
    }
    Ok(Verdict::positive(
        Answer::JointlyMixing,
        vec![Reason::Hyperbolic],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vec_add;
    use crate::family::family_power;
    use crate::parse::parse_family;

    type M = Mat2<BigInt>;

    fn m(a: i64, b: i64, c: i64, d: i64) -> M {
        Mat2::from_i64(a, b, c, d)
    }

    fn conj_triple() -> Vec<M> {
        let t = m(2, 1, 1, 1);
        let a = m(1, 1, 0, 1);
        let b = m(1, 0, 1, 1);
        vec![
            t.clone(),
            &(&a.inverse() * &t) * &a,
            &(&b.inverse() * &t) * &b,
        ]
    }

    fn residual(ts: &[M], xs: &[Vec2<BigInt>], n: i64) -> Vec2<BigInt> {
        ts.iter()
            .zip(xs)
            .map(|(t, x)| t.transpose().pow(n).apply(x))
            .fold([BigInt::zero(), BigInt::zero()], |acc, v| vec_add(&acc, &v))
    }

    #[test]
    fn triple_witness_holds() {
        let ts = conj_triple();
        let tw = witness_same_modulus_triple(&ts).unwrap();
        assert!(tw.xs.iter().any(|x| !x[0].is_zero() || !x[1].is_zero()));
        for n in 1..=30 {
            assert_eq!(residual(&ts, &tw.xs, n), [BigInt::zero(), BigInt::zero()]);
        }
    }

    #[test]
    fn triple_with_negated_member_holds_on_even_n() {
        let mut ts = conj_triple();
        ts[1] = -&ts[1];
        let tw = witness_same_modulus_triple(&ts).unwrap();
        assert_eq!(tw.progression(), (2, 0));
        for n in (2..=20).step_by(2) {
            assert_eq!(residual(&ts, &tw.xs, n), [BigInt::zero(), BigInt::zero()]);
        }
    }

    #[test]
    fn triple_errors() {
        let t = m(2, 1, 1, 1);
        assert_eq!(
            witness_same_modulus_triple(&[t.clone(), t.clone()]),
            Err(Error::SharedModulusPairOnly)
        );
        let ts = conj_triple();
        assert_eq!(
            witness_same_modulus_triple(&[ts[0].clone(), ts[0].clone(), ts[1].clone()]),
            Err(Error::NotPairwiseDistinct(0, 1))
        );
        assert!(matches!(
            witness_same_modulus_triple(&[t.clone(), m(3, 1, 2, 1), ts[1].clone()]),
            Err(Error::TracesDiffer(_))
        ));
    }

    #[test]
    fn joint_powers_cases() {
        let v = decide_joint_powers(&[m(2, 1, 1, 1), m(1, 1, 1, 2)]).unwrap();
        assert_eq!(v.answer, Answer::JointlyMixing);
        let v = decide_joint_powers(&conj_triple()).unwrap();
        assert_eq!(v.answer, Answer::NotJointlyMixing);
        assert!(v.reasons.contains(&Reason::ThreeSharedModulus([0, 1, 2])));
        let v = decide_joint_powers(&[m(2, 1, 1, 1), m(1, 1, 0, 1)]).unwrap();
        assert_eq!(v.reasons[0], Reason::NonHyperbolicFactor(1));
        let t = m(2, 1, 1, 1);
        let v = decide_joint_powers(&[t.clone(), -&t]).unwrap();
        assert_eq!(v.reasons[0], Reason::EqualUpToSign(0, 1));
        assert_eq!(v.progression(), (2, 0));
    }

    #[test]
    fn commuting_cases() {
        let t = m(2, 1, 1, 1);
        let t2 = &t * &t;
        assert_eq!(
            decide_commuting_joint(&[t.clone(), t2]).unwrap().answer,
            Answer::JointlyMixing
        );
        assert_eq!(
            decide_commuting_joint(&[t.clone(), t.clone()]).unwrap().answer,
            Answer::NotJointlyMixing
        );
        let v = decide_commuting_joint(&[t.clone(), -&t]).unwrap();
        assert_eq!(v.answer, Answer::NotJointlyMixing);
        assert_eq!(
            decide_commuting_joint(&[t, m(1, 1, 0, 1)]),
            Err(Error::NotCommuting(0, 1))
        );
    }

    #[test]
    fn poly_families() {
        let f1 = parse_family("[[n, n^2-1],[1,n]]").unwrap();
        let f2 = family_power(&f1, 2).unwrap();
        let v = decide_joint_polyfamilies(&[f1.clone(), f2]);
        assert_eq!(v.answer, Answer::NotJointlyMixing);
        let expect: Vec<Vec<BigInt>> = [[-2, 0], [0, 1], [0, -1]]
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(v.witness, Some(expect));

        let g1 = parse_family("[[n^2, n^3-1],[1,n]]").unwrap();
        let g2 = family_power(&g1, 2).unwrap();
        assert_eq!(
            decide_joint_polyfamilies(&[g1, g2]).answer,
            Answer::JointlyMixing
        );

        let v = decide_joint_polyfamilies(&[f1.clone(), f1]);
        let w = v.witness.unwrap();
        assert_eq!(w[0], vec![-w[1][0].clone(), -w[1][1].clone()]);
        assert!(w[2].iter().all(Zero::is_zero));
    }
}
