use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::Zero;

use crate::algebra::{classify, vec_add, vec_is_zero, vec_neg, Mat2, MatClass, Vec2};
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Character index `x ∈ Z²` of `χ_x(ξ) = e^{2πi⟨x,ξ⟩}`.
pub type Freq<T> = Vec2<T>;

/// Exact complex rational.
pub type Coef<T> = Complex<Ratio<T>>;

/// `1` iff `Σ ᵗM_i x_i + y = 0`, i.e. the integral of
/// `χ_{x_1}(M_1ξ)⋯χ_{x_k}(M_kξ)·χ_y(ξ)` over the torus.
pub fn char_correlation<T: IntScalar>(xs: &[Freq<T>], y: &Freq<T>, ms: &[Mat2<T>]) -> Result<u8> {
    if xs.len() != ms.len() {
        return Err(Error::LengthMismatch {
            expected: ms.len(),
            got: xs.len(),
        });
    }
    let sum = xs
        .iter()
        .zip(ms)
        .fold(y.clone(), |acc, (x, m)| vec_add(&acc, &m.transpose().apply(x)));
    Ok(u8::from(vec_is_zero(&sum)))
}

/// Finite trigonometric polynomial `Σ f̂(x) χ_x` with exact coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigPoly<T: IntScalar> {
    coeffs: BTreeMap<Freq<T>, Coef<T>>,
}

impl<T: IntScalar> TrigPoly<T> {
    pub fn zero() -> Self {
        TrigPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: Coef<T>) -> Self {
        let mut p = TrigPoly::zero();
        p.add_term([T::zero(), T::zero()], c);
        p
    }

    pub fn character(x: Freq<T>) -> Self {
        let mut p = TrigPoly::zero();
        p.add_term(x, Complex::new(Ratio::from_integer(T::one()), Ratio::zero()));
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Freq<T>, Coef<T>)>) -> Self {
        let mut p = TrigPoly::zero();
        for (x, c) in terms {
            p.add_term(x, c);
        }
        p
    }

    pub fn add_term(&mut self, x: Freq<T>, c: Coef<T>) {
        match self.coeffs.entry(x) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `f̂(x)`, zero off the support.
    pub fn coeff(&self, x: &Freq<T>) -> Coef<T> {
        self.coeffs.get(x).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn mean(&self) -> Coef<T> {
        self.coeff(&[T::zero(), T::zero()])
    }

    pub fn support(&self) -> impl Iterator<Item = &Freq<T>> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Freq<T>, &Coef<T>)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ |f̂(x)|²`.
    pub fn norm_sq(&self) -> Ratio<T> {
        self.coeffs
            .values()
            .fold(Ratio::zero(), |acc, c| acc + c.norm_sqr())
    }

    /// `ξ ↦ f(Mξ)`: the coefficient of `f̂(x)` moves to `ᵗM x`.
    pub fn transport(&self, m: &Mat2<T>) -> Self {
        let mt = m.transpose();
        TrigPoly::from_terms(self.coeffs.iter().map(|(x, c)| (mt.apply(x), c.clone())))
    }

    /// `ξ ↦ conj f(ξ)`, whose coefficient at `x` is `conj f̂(-x)`.
    pub fn conj(&self) -> Self {
        TrigPoly::from_terms(self.coeffs.iter().map(|(x, c)| (vec_neg(x), c.conj())))
    }

    pub fn scale(&self, s: &Coef<T>) -> Self {
        TrigPoly::from_terms(self.coeffs.iter().map(|(x, c)| (x.clone(), c.clone() * s.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.coeffs {
            out.add_term(x.clone(), c.clone());
        }
        out
    }

    pub fn to_f64(&self, x: &Freq<T>) -> Complex<f64> {
        let c = self.coeff(x);
        Complex::new(ratio_f64(&c.re), ratio_f64(&c.im))
    }
}

pub(crate) fn ratio_f64<T: IntScalar>(r: &Ratio<T>) -> f64 {
    use crate::algebra::quad::{big_ratio, ratio_to_f64};
    ratio_to_f64(&big_ratio(r))
}

/// Table of all partial sums `x_1 + … + x_m` with the summed coefficient products.
fn partial_sums<T: IntScalar>(polys: &[TrigPoly<T>]) -> BTreeMap<Freq<T>, Coef<T>> {
    let one = Complex::new(Ratio::from_integer(T::one()), Ratio::zero());
    let mut table = BTreeMap::from([([T::zero(), T::zero()], one)]);
    for p in polys {
        let mut next: BTreeMap<Freq<T>, Coef<T>> = BTreeMap::new();
        for (s, a) in &table {
            for (x, c) in &p.coeffs {
                let e = next.entry(vec_add(s, x)).or_insert_with(Complex::zero);
                *e = e.clone() + a.clone() * c.clone();
            }
        }
        next.retain(|_, v| !v.is_zero());
        table = next;
    }
    table
}

/// `∫ f_1(M_1ξ)⋯f_k(M_kξ)·f_{k+1}(ξ) dξ`, exactly.
///
/// The transported factors are split into two halves; each half is
/// tabulated by partial sum and the tables are joined on `s + s' = 0`.
pub fn trig_correlation<T: IntScalar>(fs: &[TrigPoly<T>], ms: &[Mat2<T>]) -> Result<Coef<T>> {
    if fs.len() != ms.len() + 1 {
        return Err(Error::LengthMismatch {
            expected: ms.len() + 1,
            got: fs.len(),
        });
    }
    let mut moved: Vec<TrigPoly<T>> = fs.iter().zip(ms).map(|(f, m)| f.transport(m)).collect();
    moved.push(fs[ms.len()].clone());
    let mid = moved.len() / 2;
    let left = partial_sums(&moved[..mid]);
    let right = partial_sums(&moved[mid..]);
    let mut total = Complex::zero();
    for (s, a) in &left {
        if let Some(b) = right.get(&vec_neg(s)) {
            total = total + a.clone() * b.clone();
        }
    }
    Ok(total)
}

/// The orbit of `x` under `ᵗT` when it is finite.
fn finite_orbit<T: IntScalar>(x: &Freq<T>, t: &Mat2<T>, class: MatClass) -> Option<Vec<Freq<T>>> {
    let tt = t.transpose();
    let finite = match class {
        MatClass::Hyperbolic { .. } => vec_is_zero(x),
        MatClass::Unipotent { .. } => tt.apply(&tt.apply(x)) == *x,
        MatClass::FiniteOrder(_) => true,
    };
    if !finite {
        return None;
    }
    let mut orbit = vec![x.clone()];
    let mut y = tt.apply(x);
    while y != *x {
        orbit.push(y.clone());
        y = tt.apply(&y);
    }
    Some(orbit)
}

/// Orthogonal projection onto `T`-invariant functions: coefficients on
/// finite `ᵗT`-orbits are averaged over the orbit, all others dropped.
pub fn trig_projection<T: IntScalar>(f: &TrigPoly<T>, t: &Mat2<T>) -> Result<TrigPoly<T>> {
    let class = classify(t)?;
    let mut done: BTreeSet<Freq<T>> = BTreeSet::new();
    let mut out = TrigPoly::zero();
    for x in f.support() {
        if done.contains(x) {
            continue;
        }
        let Some(orbit) = finite_orbit(x, t, class) else {
            continue;
        };
        let size = Ratio::from_integer(T::from_usize(orbit.len()).expect("orbit size is small"));
        let sum = orbit
            .iter()
            .fold(Complex::zero(), |acc: Coef<T>, y| acc + f.coeff(y));
        let avg = Complex::new(sum.re / size.clone(), sum.im / size);
        for y in orbit {
            out.add_term(y.clone(), avg.clone());
            done.insert(y);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type F = Freq<BigInt>;
    type P = TrigPoly<BigInt>;

    fn fr(a: i64, b: i64) -> F {
        [BigInt::from(a), BigInt::from(b)]
    }

    fn c(re: i64, im: i64) -> Coef<BigInt> {
        Complex::new(Ratio::from_integer(re.into()), Ratio::from_integer(im.into()))
    }

    fn m(a: i64, b: i64, cc: i64, d: i64) -> Mat2<BigInt> {
        Mat2::from_i64(a, b, cc, d)
    }

    #[test]
    fn characters() {
        let id = m(1, 0, 0, 1);
        assert_eq!(char_correlation(&[fr(1, 0)], &fr(-1, 0), std::slice::from_ref(&id)).unwrap(), 1);
        assert_eq!(char_correlation(&[fr(1, 0)], &fr(1, 0), &[id]).unwrap(), 0);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = P::character(fr(1, 2));
        p.add_term(fr(1, 2), c(-1, 0));
        assert!(p.is_empty());
    }

    #[test]
    fn constants_multiply() {
        let fs = vec![P::constant(c(2, 0)), P::constant(c(3, 1)), P::constant(c(5, 0))];
        let ms = vec![m(2, 1, 1, 1), m(1, 1, 0, 1)];
        assert_eq!(trig_correlation(&fs, &ms).unwrap(), c(30, 10));
    }

    #[test]
    fn hyperbolic_characters_never_meet() {
        let t = m(2, 1, 1, 1);
        let fs = vec![P::character(fr(1, 0)), P::character(fr(0, 1))];
        for n in 1..=20 {
            assert!(trig_correlation(&fs, &[t.pow(n)]).unwrap().is_zero());
        }
    }

    #[test]
    fn projections() {
        let f = P::from_terms([(fr(0, 0), c(1, 0)), (fr(0, 3), c(2, 0)), (fr(1, 1), c(4, 0))]);
        let p = trig_projection(&f, &m(2, 1, 1, 1)).unwrap();
        assert_eq!(p, P::constant(c(1, 0)));
        // ᵗU(x₁,x₂) = (x₁, x₁+x₂) fixes the (0,*) line
        let p = trig_projection(&f, &m(1, 1, 0, 1)).unwrap();
        assert_eq!(p, P::from_terms([(fr(0, 0), c(1, 0)), (fr(0, 3), c(2, 0))]));
        let g = P::from_terms([(fr(1, 2), c(2, 0)), (fr(-1, -2), c(0, 2))]);
        let p = trig_projection(&g, &m(-1, 0, 0, -1)).unwrap();
        assert_eq!(p.coeff(&fr(1, 2)), p.coeff(&fr(-1, -2)));
        assert_eq!(p.coeff(&fr(1, 2)), c(1, 1));
    }

    #[test]
    fn negated_unipotent_pairs_fixed_line() {
        let f = P::from_terms([(fr(0, 1), c(2, 0))]);
        let p = trig_projection(&f, &m(-1, -1, 0, -1)).unwrap();
        assert_eq!(p.coeff(&fr(0, 1)), c(1, 0));
        assert_eq!(p.coeff(&fr(0, -1)), c(1, 0));
    }
}
