use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::algebra::{classify, Mat2, MatClass};
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Matrix sequence `n ↦ F(n)` with integer-polynomial entries and
/// determinant identically 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyMatFamily<T> {
    entries: Mat2<IntPoly<T>>,
}

impl<T: IntScalar> PolyMatFamily<T> {
    pub fn new(entries: Mat2<IntPoly<T>>) -> Result<Self> {
        let det = entries.det();
        if det != IntPoly::constant(T::one()) {
            return Err(Error::DeterminantNotOne(det.to_string()));
        }
        Ok(PolyMatFamily { entries })
    }

    pub fn constant(m: &Mat2<T>) -> Result<Self> {
        PolyMatFamily::new(m.map(|e| IntPoly::constant(e.clone())))
    }

    pub fn identity() -> Self {
        PolyMatFamily {
            entries: Mat2::identity().map(|e: &T| IntPoly::constant(e.clone())),
        }
    }

    pub fn entries(&self) -> &Mat2<IntPoly<T>> {
        &self.entries
    }

    /// Largest entry degree.
    pub fn degree(&self) -> usize {
        self.entries
            .entries()
            .into_iter()
            .filter_map(IntPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, n: &T) -> Mat2<T> {
        self.entries.map(|p| p.eval(n))
    }

    pub fn compose(&self, other: &Self) -> Self {
        PolyMatFamily {
            entries: &self.entries * &other.entries,
        }
    }

    /// Symbolic `F(n)^k`, `k ≥ 1`.
    pub fn power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("family power needs k >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self);
        }
        Ok(acc)
    }
}

impl<T: IntScalar> std::fmt::Display for PolyMatFamily<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.entries)
    }
}

/// `n ↦ base^{a(n)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerFamily<T> {
    pub base: Mat2<T>,
    pub exponent: IntPoly<T>,
}

impl<T: IntScalar> PowerFamily<T> {
    pub fn new(base: Mat2<T>, exponent: IntPoly<T>) -> Result<Self> {
        base.ensure_unimodular()?;
        Ok(PowerFamily { base, exponent })
    }

    pub fn evaluate(&self, n: &T) -> Mat2<T> {
        let k: BigInt = self.exponent.eval(n).to_bigint();
        self.base.pow_big(&k)
    }

    /// Closed polynomial form when the base is unipotent-type or `±I`.
    pub fn as_polynomial(&self) -> Result<PolyMatFamily<T>> {
        let not_poly = || Error::NotPolynomial(self.base.to_string());
        let lift = |m: &Mat2<T>| m.map(|e| IntPoly::constant(e.clone()));
        let sign_family = |negative: bool| {
            let s = if negative { -T::one() } else { T::one() };
            lift(&Mat2::identity()).scale(&IntPoly::constant(s))
        };
        let entries = match classify(&self.base)? {
            MatClass::FiniteOrder(1) => sign_family(false),
            MatClass::FiniteOrder(2) => {
                sign_family(self.exponent.constant_parity().ok_or_else(not_poly)?)
            }
            MatClass::Unipotent { negated } => {
                let (unip, negative) = if negated {
                    let odd = self.exponent.constant_parity().ok_or_else(not_poly)?;
                    (-self.base.clone(), odd)
                } else {
                    (self.base.clone(), false)
                };
                // U^a = I + a (U - I) since (U - I)^2 = 0
                let nil = lift(&(&unip - &Mat2::identity()));
                let body = &lift(&Mat2::identity()) + &nil.scale(&self.exponent);
                body.scale(&sign_family(negative).a)
            }
            _ => return Err(not_poly()),
        };
        PolyMatFamily::new(entries)
    }
}

/// A member of a family tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family<T> {
    Poly(PolyMatFamily<T>),
    Power(PowerFamily<T>),
}

impl<T: IntScalar> Family<T> {
    pub fn evaluate(&self, n: &T) -> Mat2<T> {
        match self {
            Family::Poly(f) => f.evaluate(n),
            Family::Power(f) => f.evaluate(n),
        }
    }
}

/// Ordered, nonempty tuple of families sharing the index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTuple<T>(Vec<Family<T>>);

impl<T: IntScalar> FamilyTuple<T> {
    pub fn new(members: Vec<Family<T>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("family tuple must be nonempty".into()));
        }
        Ok(FamilyTuple(members))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn members(&self) -> &[Family<T>] {
        &self.0
    }

    pub fn evaluate(&self, n: &T) -> Vec<Mat2<T>> {
        self.0.iter().map(|f| f.evaluate(n)).collect()
    }
}

/// Symbolic product `B₁^{a₁(n)} ⋯ B_k^{a_k(n)}` of unipotent-type (or `±I`) powers.
pub fn expand_unipotent_products<T: IntScalar>(
    factors: &[PowerFamily<T>],
) -> Result<PolyMatFamily<T>> {
    let mut acc = PolyMatFamily::identity();
    for f in factors {
        acc = acc.compose(&f.as_polynomial()?);
    }
    // composition of determinant-one families; recheck symbolically
    PolyMatFamily::new(acc.entries)
}

pub fn family_power<T: IntScalar>(f: &PolyMatFamily<T>, k: u32) -> Result<PolyMatFamily<T>> {
    f.power(k)
}

/// Evaluate any family at `n`.
pub fn evaluate<T: IntScalar>(f: &Family<T>, n: &T) -> Mat2<T> {
    f.evaluate(n)
}
