use serde::{Deserialize, Serialize};

use super::mat2::{primitive, Mat2, Vec2};
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Conjugacy type of an element of SL(2,Z), read off the trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatClass {
    /// `|trace| > 2`.
    Hyperbolic { positive_trace: bool },
    /// `|trace| = 2` and not `±I`; `negated` when `-T` is the unipotent one.
    Unipotent { negated: bool },
    /// `|trace| < 2`, or `T = ±I`; carries the exact order.
    FiniteOrder(u32),
}

impl MatClass {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, MatClass::Hyperbolic { .. })
    }

    pub fn is_unipotent_type(&self) -> bool {
        matches!(self, MatClass::Unipotent { .. })
    }
}

pub fn classify<T: IntScalar>(m: &Mat2<T>) -> Result<MatClass> {
    m.ensure_unimodular()?;
    let t = m.trace();
    let two = T::int(2);
    let class = if t.abs() > two {
        MatClass::Hyperbolic {
            positive_trace: t.is_positive(),
        }
    } else if m.is_identity() {
        MatClass::FiniteOrder(1)
    } else if m.is_plus_minus_identity() {
        MatClass::FiniteOrder(2)
    } else if t == two {
        MatClass::Unipotent { negated: false }
    } else if t == -two {
        MatClass::Unipotent { negated: true }
    } else if t.is_zero() {
        MatClass::FiniteOrder(4)
    } else if t.is_one() {
        MatClass::FiniteOrder(6)
    } else {
        // trace -1
        MatClass::FiniteOrder(3)
    };
    Ok(class)
}

/// Coefficients with `T^k = alpha·T + beta·I` for any `T` of trace `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebPair<T> {
    pub alpha: T,
    pub beta: T,
}

/// Three-term recurrence `alpha_{k+1} = t·alpha_k - alpha_{k-1}`, `beta_k = -alpha_{k-1}`.
pub fn chebyshev_coeffs<T: IntScalar>(t: &T, k: u64) -> ChebPair<T> {
    // (alpha_{j-1}, alpha_j) starting from j = 0
    let mut prev = -T::one();
    let mut cur = T::zero();
    for _ in 0..k {
        let next = t.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    ChebPair {
        alpha: cur,
        beta: -prev,
    }
}

/// Primitive integer vector fixed by the unipotent representative of `±m`,
/// first nonzero coordinate positive.
pub fn fixed_vector<T: IntScalar>(m: &Mat2<T>) -> Result<Vec2<T>> {
    match classify(m)? {
        MatClass::Unipotent { negated } => {
            let u = if negated { -m.clone() } else { m.clone() };
            let n = &u - &Mat2::identity();
            let (p, q) = if !n.a.is_zero() || !n.b.is_zero() {
                (n.a, n.b)
            } else {
                (n.c, n.d)
            };
            Ok(primitive(&[-q, p]))
        }
        MatClass::FiniteOrder(1 | 2) => Err(Error::IdentityHasNoDistinguishedVector),
        _ => Err(Error::NotUnipotent(m.to_string())),
    }
}
