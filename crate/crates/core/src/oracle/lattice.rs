//! Lattice-point estimate of `μ(G₀ ∩ M₁⁻¹G₁ ∩ … ∩ M_k⁻¹G_k)`.
//!
//! Integer matrices map the lattice `(1/Q)Z²/Z²` onto itself, so the count
//! of lattice points `p` with `p ∈ G₀` and `M_i p ∈ G_i` is done exactly in
//! modular integer arithmetic.
//!
//! Error bound. Attach to each lattice point the half-open square of side
//! `1/Q` at that corner. Squares that do not meet the boundary of the
//! intersection contribute their area exactly, so the error is at most
//! `1/Q²` times the number of squares meeting the boundary. That boundary
//! lies in the union of the preimages `M_i⁻¹(∂G_i)` (with `M_0 = I`). A
//! boundary edge `e/q_i` of `G_i` (`e` a unit vector) pulls back to a
//! segment of `ℓ¹`-length `‖M_i⁻¹e‖₁/q_i` on the torus, which meets at most
//! `Q·‖M_i⁻¹e‖₁/q_i + 3` squares. Summing over all edges of all sets,
//!
//! ```text
//! error_bound = Σ_i Σ_{edges e of G_i} (Q·‖M_i⁻¹e‖₁/q_i + 3) / Q²
//! ```
//!
//! which is `O(1/Q)`: doubling `Q` divides it by at least 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::grid::GridSet;
use crate::algebra::Mat2;
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Largest lattice size accepted; keeps every product below 2⁶³.
pub const MAX_LATTICE: u32 = 1 << 24;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeEstimate {
    pub lattice: u32,
    pub count: u64,
    pub estimate: f64,
    pub error_bound: f64,
}

impl LatticeEstimate {
    /// `count / Q²` as an exact rational.
    pub fn exact(&self) -> BigRational {
        let q = BigInt::from(self.lattice);
        BigRational::new(BigInt::from(self.count), &q * &q)
    }

    pub fn contains(&self, value: f64) -> bool {
        (self.estimate - value).abs() <= self.error_bound
    }
}

struct Target {
    mask: Vec<bool>,
    q: u64,
    step: u64,
    m: [u64; 4],
}

impl Target {
    fn hit(&self, a: u64, b: u64, big_q: u64) -> bool {
        let x = (self.m[0] * a + self.m[1] * b) % big_q;
        let y = (self.m[2] * a + self.m[3] * b) % big_q;
        self.mask[((x / self.step) * self.q + y / self.step) as usize]
    }
}

fn edge_pullback<T: IntScalar>(g: &GridSet, m: &Mat2<T>, big_q: f64) -> f64 {
    let inv = m.inverse();
    let l1 = |a: &T, b: &T| -> f64 {
        (a.to_bigint().abs() + b.to_bigint().abs())
            .to_f64()
            .unwrap_or(f64::INFINITY)
    };
    // a vertical edge has direction (0,1), a horizontal one (1,0)
    let (vert, horiz) = g.boundary_edges();
    let q = g.q() as f64;
    vert as f64 * (big_q * l1(&inv.b, &inv.d) / q + 3.0)
        + horiz as f64 * (big_q * l1(&inv.a, &inv.c) / q + 3.0)
}

/// Estimate of `∫ 1_{G₀}(ξ)·Π_i 1_{G_i}(M_i ξ) dξ` on the `Q`-lattice, with
/// the error bound documented at module level. `gs[0]` is untransformed and
/// `gs[i]` pairs with `ms[i-1]`.
pub fn lattice_correlation<T: IntScalar>(
    gs: &[GridSet],
    ms: &[Mat2<T>],
    big_q: u32,
) -> Result<LatticeEstimate> {
    if gs.len() != ms.len() + 1 {
        return Err(Error::LengthMismatch {
            expected: ms.len() + 1,
            got: gs.len(),
        });
    }
    if big_q == 0 || big_q > MAX_LATTICE {
        return Err(Error::InvalidArgument(format!(
            "lattice size must lie in 1..={MAX_LATTICE}"
        )));
    }
    for g in gs {
        if !big_q.is_multiple_of(g.q()) {
            return Err(Error::ResolutionMismatch {
                q: g.q(),
                lattice: big_q,
            });
        }
    }
    let qq = big_q as u64;
    let reduce = |e: &T| -> u64 {
        e.to_bigint()
            .mod_floor(&BigInt::from(qq))
            .to_u64()
            .expect("reduced below Q")
    };
    let identity = Mat2::<T>::identity();
    let targets: Vec<Target> = gs
        .iter()
        .zip(std::iter::once(&identity).chain(ms))
        .map(|(g, m)| Target {
            mask: g.mask(),
            q: g.q() as u64,
            step: qq / g.q() as u64,
            m: [reduce(&m.a), reduce(&m.b), reduce(&m.c), reduce(&m.d)],
        })
        .collect();
    let count: u64 = (0..qq)
        .into_par_iter()
        .map(|a| {
            (0..qq)
                .filter(|&b| targets.iter().all(|t| t.hit(a, b, qq)))
                .count() as u64
        })
        .sum();
    let qf = big_q as f64;
    let bound: f64 = gs
        .iter()
        .zip(std::iter::once(&identity).chain(ms))
        .map(|(g, m)| edge_pullback(g, m, qf))
        .sum::<f64>()
        / (qf * qf);
    Ok(LatticeEstimate {
        lattice: big_q,
        count,
        estimate: count as f64 / (qf * qf),
        error_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<BigInt> {
        Mat2::from_i64(a, b, c, d)
    }

    #[test]
    fn aligned_identity_is_exact() {
        let g = GridSet::rect(2, (0, 1), (0, 1)).unwrap();
        let e = lattice_correlation(&[g.clone(), g], &[m(1, 0, 0, 1)], 8).unwrap();
        assert_eq!(e.exact(), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn intersection_of_aligned_sets() {
        let a = GridSet::rect(4, (0, 3), (0, 2)).unwrap();
        let b = GridSet::rect(2, (1, 2), (0, 2)).unwrap();
        let e = lattice_correlation(&[a, b], &[m(1, 0, 0, 1)], 8).unwrap();
        assert_eq!(e.exact(), BigRational::new(1.into(), 8.into()));
    }

    #[test]
    fn resolution_must_divide() {
        let g = GridSet::rect(3, (0, 1), (0, 1)).unwrap();
        assert_eq!(
            lattice_correlation(&[g.clone(), g], &[m(1, 0, 0, 1)], 8),
            Err(Error::ResolutionMismatch { q: 3, lattice: 8 })
        );
    }

    #[test]
    fn hyperbolic_mixing_within_bounds() {
        let g = GridSet::rect(2, (0, 1), (0, 1)).unwrap();
        let t = m(2, 1, 1, 1);
        for n in 1..=6 {
            let e = lattice_correlation(&[g.clone(), g.clone()], &[t.pow(n)], 1024).unwrap();
            assert!(e.error_bound.is_finite());
            if n >= 4 {
                assert!(e.contains(1.0 / 16.0), "n={n}: {e:?}");
            }
        }
    }

    #[test]
    fn doubling_halves_bound() {
        let g = GridSet::rect(2, (0, 1), (0, 1)).unwrap();
        let t = m(2, 1, 1, 1).pow(3);
        let a = lattice_correlation(&[g.clone(), g.clone()], std::slice::from_ref(&t), 512).unwrap();
        let b = lattice_correlation(&[g.clone(), g], &[t], 1024).unwrap();
        assert!(a.error_bound / b.error_bound >= 2.0);
    }
}
