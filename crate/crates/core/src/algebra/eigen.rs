use num_rational::Ratio;

use super::classify::{classify, MatClass};
use super::mat2::Mat2;
use super::quad::{square_free_decomposition, QuadVal};
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Spectral decomposition `M = λ·P₊ + λ⁻¹·P₋` of a hyperbolic matrix over `Q(√d)`.
///
/// `|λ| > 1`; for negative trace `λ` is negative. `P₋` is the entrywise
/// Galois conjugate of `P₊`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData<T: IntScalar> {
    pub d: T,
    pub lambda: QuadVal<T>,
    pub p_plus: Mat2<QuadVal<T>>,
    pub p_minus: Mat2<QuadVal<T>>,
}

/// Lifts an integer matrix into `M(2, Q(√d))`.
pub fn lift<T: IntScalar>(m: &Mat2<T>, d: &T) -> Mat2<QuadVal<T>> {
    m.map(|e| QuadVal::from_int(e.clone(), d.clone()))
}

pub fn quad_identity<T: IntScalar>(d: &T) -> Mat2<QuadVal<T>> {
    lift(&Mat2::identity(), d)
}

pub fn conj_matrix<T: IntScalar>(m: &Mat2<QuadVal<T>>) -> Mat2<QuadVal<T>> {
    m.map(QuadVal::conj)
}

/// Eigenvalue of modulus > 1 for a hyperbolic trace `t`, with its field.
pub fn expanding_eigenvalue<T: IntScalar>(t: &T) -> QuadVal<T> {
    let disc = t.clone() * t.clone() - T::int(4);
    let (s, d) = square_free_decomposition(&disc);
    assert!(!d.is_one(), "t²-4 is a perfect square only for |t| = 2");
    let two = T::int(2);
    let half_s = Ratio::new(s, two.clone());
    let half_s = if t.is_negative() { -half_s } else { half_s };
    QuadVal::new(Ratio::new(t.clone(), two), half_s, d)
}

pub fn eigen_data<T: IntScalar>(m: &Mat2<T>) -> Result<EigenData<T>> {
    if !classify(m)?.is_hyperbolic() {
        return Err(Error::NotHyperbolic(m.to_string()));
    }
    let lambda = expanding_eigenvalue(&m.trace());
    let d = lambda.d.clone();
    let inv = lambda.conj();
    let gap = lambda.clone() - inv.clone();
    let shifted = &lift(m, &d) - &quad_identity(&d).scale(&inv);
    let p_plus = shifted.scale(&gap.inv());
    let p_minus = &quad_identity(&d) - &p_plus;
    Ok(EigenData {
        d,
        lambda,
        p_plus,
        p_minus,
    })
}

impl<T: IntScalar> EigenData<T> {
    pub fn lambda_inv(&self) -> QuadVal<T> {
        self.lambda.conj()
    }

    /// `λ·P₊ + λ⁻¹·P₋`.
    pub fn reconstruct(&self) -> Mat2<QuadVal<T>> {
        &self.p_plus.scale(&self.lambda) + &self.p_minus.scale(&self.lambda_inv())
    }

    /// Checks every algebraic identity the decomposition must satisfy.
    pub fn invariants_hold(&self, m: &Mat2<T>) -> bool {
        let zero = lift(&Mat2::new(T::zero(), T::zero(), T::zero(), T::zero()), &self.d);
        let id = quad_identity(&self.d);
        self.lambda.clone() * self.lambda_inv() == QuadVal::one(self.d.clone())
            && self.reconstruct() == lift(m, &self.d)
            && &self.p_plus * &self.p_minus == zero
            && &self.p_minus * &self.p_plus == zero
            && &self.p_plus * &self.p_plus == self.p_plus
            && &self.p_minus * &self.p_minus == self.p_minus
            && &self.p_plus + &self.p_minus == id
            && conj_matrix(&self.p_plus) == self.p_minus
    }
}

impl MatClass {
    pub fn expect_hyperbolic<T: IntScalar>(self, m: &Mat2<T>) -> Result<()> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(Error::NotHyperbolic(m.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn cat_map_decomposition() {
        let m: Mat2<BigInt> = Mat2::from_i64(2, 1, 1, 1);
        let e = eigen_data(&m).unwrap();
        assert_eq!(e.d, BigInt::from(5));
        let half = Ratio::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(e.lambda.p, half.clone() * Ratio::from_integer(BigInt::from(3)));
        assert_eq!(e.lambda.q, half);
        assert_eq!(
            e.lambda.clone() + e.lambda_inv(),
            QuadVal::from_int(BigInt::from(3), BigInt::from(5))
        );
        assert!(e.invariants_hold(&m));
    }

    #[test]
    fn negative_trace_keeps_sign() {
        let m: Mat2<BigInt> = Mat2::from_i64(-2, -1, -1, -1);
        let e = eigen_data(&m).unwrap();
        assert!(e.lambda.to_f64() < -2.6);
        assert!(e.invariants_hold(&m));
    }

    #[test]
    fn generic_fixed_width() {
        let m: Mat2<i64> = Mat2::from_i64(5, 2, 2, 1);
        let e = eigen_data(&m).unwrap();
        assert_eq!(e.d, 2);
        assert!(e.invariants_hold(&m));
    }

    #[test]
    fn rejects_non_hyperbolic() {
        let m: Mat2<BigInt> = Mat2::from_i64(1, 1, 0, 1);
        assert!(matches!(eigen_data(&m), Err(Error::NotHyperbolic(_))));
    }
}
