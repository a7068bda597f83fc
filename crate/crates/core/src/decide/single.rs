use num_bigint::BigInt;

use super::verdict::{Answer, Reason, Verdict};
use crate::algebra::{classify, fixed_vector, Mat2, MatClass, Vec2};
use crate::error::Result;
use crate::family::PolyMatFamily;
use crate::linalg::{canonical_kernel_vector, PolyVectorSystem};
use crate::scalar::IntScalar;

/// Frequency pair `(x, y)` with `ᵗTⁿx + y = 0` for all `n ≡ residue (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementWitness<T> {
    pub x: Vec2<T>,
    pub y: Vec2<T>,
    pub modulus: u32,
    pub residue: u32,
    pub reason: Reason,
}

/// Witness of non-mixing for a non-hyperbolic `T`; `None` when `T` is hyperbolic.
pub fn element_witness<T: IntScalar>(t: &Mat2<T>) -> Result<Option<ElementWitness<T>>> {
    let unit = || [T::one(), T::zero()];
    let w = match classify(t)? {
        MatClass::Hyperbolic { .. } => return Ok(None),
        MatClass::Unipotent { negated } => {
            let x = fixed_vector(&t.transpose())?;
            let y = [-x[0].clone(), -x[1].clone()];
            ElementWitness {
                x,
                y,
                modulus: if negated { 2 } else { 1 },
                residue: 0,
                reason: Reason::FixedFrequency,
            }
        }
        MatClass::FiniteOrder(m) => ElementWitness {
            x: unit(),
            y: [-T::one(), T::zero()],
            modulus: m,
            residue: 0,
            reason: Reason::FiniteOrder(m),
        },
    };
    Ok(Some(w))
}

pub(crate) fn vec_to_big<T: IntScalar>(v: &[T]) -> Vec<BigInt> {
    v.iter().map(IntScalar::to_bigint).collect()
}

pub(crate) fn progression_reason(modulus: u32, residue: u32) -> Option<Reason> {
    (modulus > 1).then_some(Reason::ValidAlong { modulus, residue })
}

pub fn decide_element_mixing<T: IntScalar>(t: &Mat2<T>) -> Result<Verdict> {
    match element_witness(t)? {
        None => Ok(Verdict::positive(Answer::Mixing, vec![Reason::Hyperbolic])),
        Some(w) => {
            let mut reasons = vec![w.reason.clone()];
            reasons.extend(progression_reason(w.modulus, w.residue));
            Ok(Verdict::negative(
                Answer::NotMixing,
                vec![vec_to_big(&w.x), vec_to_big(&w.y)],
                reasons,
            ))
        }
    }
}

/// Kernel of `Σ ᵗF_i(n) x_i + y ≡ 0`; returns the witness in `(x_1, …, x_k, y)` order
/// together with the kernel dimension.
pub(crate) fn poly_kernel_witness<T: IntScalar>(
    fs: &[PolyMatFamily<T>],
) -> Option<(Vec<Vec<BigInt>>, usize)> {
    let mut sys = PolyVectorSystem::new();
    // y first so that sign normalization looks at it first
    sys.push_constant_vector();
    for f in fs {
        sys.push_matrix(&f.entries().transpose());
    }
    let basis = sys.kernel();
    let v = canonical_kernel_vector(&basis)?;
    let big = vec_to_big(&v);
    let mut out: Vec<Vec<BigInt>> = big[2..].chunks(2).map(<[BigInt]>::to_vec).collect();
    out.push(big[..2].to_vec());
    Some((out, basis.len()))
}

pub fn decide_polyfamily_mixing<T: IntScalar>(f: &PolyMatFamily<T>) -> Verdict {
    match poly_kernel_witness(std::slice::from_ref(f)) {
        Some((w, dimension)) => Verdict::negative(
            Answer::NotMixing,
            w,
            vec![Reason::KernelWitness { dimension }],
        ),
        None => Verdict::positive(Answer::Mixing, vec![Reason::TrivialKernel]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_family;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<BigInt> {
        Mat2::from_i64(a, b, c, d)
    }

    fn w(vs: &[[i64; 2]]) -> Vec<Vec<BigInt>> {
        vs.iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn element_cases() {
        assert_eq!(
            decide_element_mixing(&m(2, 1, 1, 1)).unwrap().answer,
            Answer::Mixing
        );
        let v = decide_element_mixing(&m(1, 1, 0, 1)).unwrap();
        assert_eq!(v.answer, Answer::NotMixing);
        assert_eq!(v.witness, Some(w(&[[0, 1], [0, -1]])));
        let v = decide_element_mixing(&m(0, -1, 1, 0)).unwrap();
        assert_eq!(v.progression(), (4, 0));
        let v = decide_element_mixing(&m(-1, -1, 0, -1)).unwrap();
        assert_eq!(v.progression(), (2, 0));
    }

    #[test]
    fn element_rejects_bad_det() {
        assert!(decide_element_mixing(&m(2, 0, 0, 2)).is_err());
    }

    #[test]
    fn family_cases() {
        let f = parse_family("[[n, n-1],[1,1]]").unwrap();
        let v = decide_polyfamily_mixing(&f);
        assert_eq!(v.answer, Answer::NotMixing);
        assert_eq!(v.witness, Some(w(&[[0, 1], [-1, -1]])));
        for s in ["[[1-n^2, -n],[n, 1]]", "[[n, n^2-1],[1,n]]"] {
            let f = parse_family(s).unwrap();
            assert_eq!(decide_polyfamily_mixing(&f).answer, Answer::Mixing, "{s}");
        }
    }
}
