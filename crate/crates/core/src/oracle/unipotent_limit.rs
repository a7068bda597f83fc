//! Limit of `∫ f(ξ) g(Tⁿξ) h(Sⁿξ) dξ` for noncommuting unipotent `T`, `S`:
//!
//! ```text
//! Σ_{i,j} f̂(−iv−jw) ĝ(iv) ĥ(jw),   ᵗTv = v, ᵗSw = w.
//! ```
//!
//! The outer sum over `j` is truncated at `|j| ≤ R`; the inner sum over `i`
//! is evaluated completely. For grid sets `f`, `g` the inner summand is a
//! periodic numerator over a product of linear forms in `i`, summed in
//! closed form by [`super::series`]. Trigonometric polynomials make the
//! corresponding sums finite.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::grid::{cell_factor, cell_sum, grid_fourier, GridSet};
use super::series::{linear_root, partial_fractions, progression_sum};
use super::trig::{ratio_f64, Coef, TrigPoly};
use crate::algebra::{classify, fixed_vector, Mat2, MatClass};
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// A test function: indicator of a grid set, or a trigonometric polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum Observable {
    Grid(GridSet),
    Trig(TrigPoly<BigInt>),
}

impl Observable {
    pub fn coeff(&self, x: [i64; 2]) -> Complex<f64> {
        match self {
            Observable::Grid(g) => grid_fourier(g, x),
            Observable::Trig(p) => p.to_f64(&[BigInt::from(x[0]), BigInt::from(x[1])]),
        }
    }

    /// Upper bound for `sup |f|`.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Observable::Grid(g) => {
                if g.is_empty() {
                    0.0
                } else {
                    1.0
                }
            }
            Observable::Trig(p) => p.terms().map(|(_, c)| complex_f64(c).norm()).sum(),
        }
    }

    /// `‖f‖₂²`.
    pub fn norm_sq(&self) -> f64 {
        match self {
            Observable::Grid(g) => g.measure_f64(),
            Observable::Trig(p) => ratio_f64(&p.norm_sq()),
        }
    }

    fn trig_support(&self) -> Option<Vec<([i64; 2], Coef<BigInt>)>> {
        match self {
            Observable::Trig(p) => Some(
                p.terms()
                    .map(|(x, c)| {
                        let xi = [
                            x[0].to_i64().expect("frequency fits in i64"),
                            x[1].to_i64().expect("frequency fits in i64"),
                        ];
                        (xi, c.clone())
                    })
                    .collect(),
            ),
            Observable::Grid(_) => None,
        }
    }
}

fn complex_f64(c: &Coef<BigInt>) -> Complex<f64> {
    Complex::new(ratio_f64(&c.re), ratio_f64(&c.im))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitValue {
    pub value: Complex<f64>,
    /// Bound on the omitted terms `|j| > R`; zero when nothing was truncated.
    pub tail_bound: f64,
    /// Exact value when every input is a trigonometric polynomial.
    pub exact: Option<Coef<BigInt>>,
    pub v: [i64; 2],
    pub w: [i64; 2],
}

/// `j` with `z = j·w`, if any.
fn multiple_of(z: [i64; 2], w: [i64; 2]) -> Option<i64> {
    if z[0] * w[1] != z[1] * w[0] {
        return None;
    }
    let (num, den) = if w[0] != 0 { (z[0], w[0]) } else { (z[1], w[1]) };
    (num % den == 0).then(|| num / den)
}

/// `Σ_i f̂(x − iv) ĝ(iv)` for two grid sets.
fn grid_inner(f: &GridSet, g: &GridSet, x: [i64; 2], v: [i64; 2]) -> Complex<f64> {
    // coordinate k of x − iv on f's grid, of iv on g's grid: a + b·i
    let forms = [
        (x[0], -v[0], f.q()),
        (x[1], -v[1], f.q()),
        (0, v[0], g.q()),
        (0, v[1], g.q()),
    ];
    let mut constant = Complex::new(1.0, 0.0);
    let mut linear = Vec::new();
    for &(a, b, q) in &forms {
        if b == 0 {
            constant *= cell_factor::<f64>(a, q);
        } else {
            linear.push((a, b, q));
        }
    }
    let roots: Vec<_> = linear.iter().map(|&(a, b, _)| linear_root(a, b)).collect();
    let mut exceptional: Vec<i64> = roots
        .iter()
        .filter(|r| r.is_integer())
        .map(|r| r.to_integer().to_i64().expect("root fits in i64"))
        .collect();
    exceptional.sort_unstable();
    exceptional.dedup();
    let direct = |i: i64| {
        grid_fourier::<f64>(f, [x[0] - i * v[0], x[1] - i * v[1]])
            * grid_fourier::<f64>(g, [i * v[0], i * v[1]])
    };
    let direct_part: Complex<f64> = exceptional.iter().map(|&i| direct(i)).sum();

    let slope_product: f64 = linear.iter().map(|&(_, b, _)| b as f64).product();
    let poles = partial_fractions(&roots);
    let l = (f.q() as i64).lcm(&(g.q() as i64));
    let tau = std::f64::consts::TAU;
    let mut generic = Complex::<f64>::zero();
    for r in 0..l {
        // periodic numerator at i = r: (1 − e^{−2πiφ/q})/(2πi) per linear form
        let mut num = cell_sum::<f64>(f, x[0] - r * v[0], x[1] - r * v[1])
            * cell_sum::<f64>(g, r * v[0], r * v[1]);
        for &(a, b, q) in &linear {
            let theta = tau * ((a + b * r).rem_euclid(q as i64) as f64) / q as f64;
            num *= Complex::new(theta.sin(), theta.cos() - 1.0) / tau;
        }
        if num.norm() == 0.0 {
            continue;
        }
        generic += num * progression_sum(&poles, r, l);
    }
    direct_part + generic * constant / slope_product
}

fn inner_sum(f: &Observable, g: &Observable, x: [i64; 2], v: [i64; 2]) -> Complex<f64> {
    match (f, g) {
        (_, Observable::Trig(_)) => g
            .trig_support()
            .expect("trig")
            .into_iter()
            .filter(|(y, _)| multiple_of(*y, v).is_some())
            .map(|(y, c)| f.coeff([x[0] - y[0], x[1] - y[1]]) * complex_f64(&c))
            .sum(),
        (Observable::Grid(fg), Observable::Grid(gg)) => grid_inner(fg, gg, x, v),
        (Observable::Trig(_), Observable::Grid(_)) => {
            unreachable!("trigonometric f is handled by finite enumeration")
        }
    }
}

fn unipotent_fixed<T: IntScalar>(m: &Mat2<T>) -> Result<[i64; 2]> {
    match classify(m)? {
        MatClass::Unipotent { negated: false } => {
            let v = fixed_vector(&m.transpose())?;
            Ok([
                v[0].to_i64().expect("fixed vector fits in i64"),
                v[1].to_i64().expect("fixed vector fits in i64"),
            ])
        }
        _ => Err(Error::NotUnipotent(m.to_string())),
    }
}

fn exact_coeff(o: &Observable, x: [i64; 2]) -> Option<Coef<BigInt>> {
    match o {
        Observable::Trig(p) => Some(p.coeff(&[BigInt::from(x[0]), BigInt::from(x[1])])),
        Observable::Grid(_) => None,
    }
}

/// `Σ_{i, |j|≤R} f̂(−iv−jw) ĝ(iv) ĥ(jw)` with a rigorous bound on the rest.
///
/// Tail: with `|ĥ(jw)| ≤ H/|j|`, Cauchy–Schwarz and Plancherel give
/// `|Σ_{|j|>R}| ≤ sup|g| · ‖f‖₂ · H · √(2/R)`. For a grid set `h` on the
/// `1/q` grid, `H = N_cells · Π_d c_d` with `c_d = 1/q` if `w_d = 0` and
/// `1/(π|w_d|)` otherwise.
pub fn limit_two_unipotents<T: IntScalar>(
    f: &Observable,
    g: &Observable,
    h: &Observable,
    t: &Mat2<T>,
    s: &Mat2<T>,
    r: i64,
) -> Result<LimitValue> {
    let v = unipotent_fixed(t)?;
    let w = unipotent_fixed(s)?;
    if t.commutes_with(s) {
        return Err(Error::CommutingUnipotents);
    }
    if r < 1 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    let det = v[0] * w[1] - v[1] * w[0];
    debug_assert!(det != 0, "noncommuting unipotents have independent fixed vectors");

    if let Some(fs) = f.trig_support() {
        // −iv − jw = x has at most one solution per support point
        let mut value = Complex::zero();
        let mut exact = Some(Coef::<BigInt>::zero());
        for (x, c) in fs {
            let ni = -x[0] * w[1] + w[0] * x[1];
            let nj = -v[0] * x[1] + v[1] * x[0];
            if ni % det != 0 || nj % det != 0 {
                continue;
            }
            let (i, j) = (ni / det, nj / det);
            let (gi, hj) = ([i * v[0], i * v[1]], [j * w[0], j * w[1]]);
            value += complex_f64(&c) * g.coeff(gi) * h.coeff(hj);
            exact = match (exact, exact_coeff(g, gi), exact_coeff(h, hj)) {
                (Some(acc), Some(a), Some(b)) => Some(acc + c * a * b),
                _ => None,
            };
        }
        return Ok(LimitValue {
            value,
            tail_bound: 0.0,
            exact,
            v,
            w,
        });
    }

    let term = |j: i64, hc: Complex<f64>| hc * inner_sum(f, g, [-j * w[0], -j * w[1]], v);
    if let Some(hs) = h.trig_support() {
        let value = hs
            .into_iter()
            .filter_map(|(z, c)| multiple_of(z, w).map(|j| term(j, complex_f64(&c))))
            .sum();
        return Ok(LimitValue {
            value,
            tail_bound: 0.0,
            exact: None,
            v,
            w,
        });
    }
    let Observable::Grid(hg) = h else {
        unreachable!()
    };
    let value: Complex<f64> = (-r..=r).map(|j| term(j, h.coeff([j * w[0], j * w[1]]))).sum();
    let q = hg.q() as f64;
    let big_h = hg.len() as f64
        * w.iter()
            .map(|&wd| {
                if wd == 0 {
                    1.0 / q
                } else {
                    1.0 / (std::f64::consts::PI * wd.abs() as f64)
                }
            })
            .product::<f64>();
    let tail_bound = g.sup_bound() * f.norm_sq().sqrt() * big_h * (2.0 / r as f64).sqrt();
    Ok(LimitValue {
        value,
        tail_bound,
        exact: None,
        v,
        w,
    })
}

/// `‖P_T 1_G‖₂² = Σ_k |1̂_G(kv)|²` for unipotent `T` with `ᵗTv = v`: the
/// limit of `μ(G ∩ T⁻ⁿG)`.
pub fn projection_norm_sq<T: IntScalar>(g: &GridSet, t: &Mat2<T>) -> Result<f64> {
    let v = unipotent_fixed(t)?;
    Ok(grid_inner(g, g, [0, 0], v).re)
}

/// `μ(D₂) Σ_{|j|≤R} |f̂₁(aj)|² |f̂₂(bj)|²` for `D = D₁ × D₂` and `w = (a, b)`,
/// the closed form of the limit when `T` is lower triangular (`v = (1,0)`).
pub fn reduced_rectangle_series(d: &GridSet, w: [i64; 2], r: i64) -> Result<f64> {
    let (cols, rows) = d
        .as_product()
        .ok_or_else(|| Error::InvalidArgument("set is not a product of intervals".into()))?;
    let q = d.q();
    let one_dim = |cells: &[u32], k: i64| -> f64 {
        let s: Complex<f64> = cells
            .iter()
            .map(|&c| super::grid::root_of_unity::<f64>(k * c as i64, q))
            .sum();
        (cell_factor::<f64>(k, q) * s).norm_sqr()
    };
    let mu2 = rows.len() as f64 / q as f64;
    let sum: f64 = (-r..=r)
        .map(|j| one_dim(&cols, w[0] * j) * one_dim(&rows, w[1] * j))
        .sum();
    Ok(mu2 * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<BigInt> {
        Mat2::from_i64(a, b, c, d)
    }

    fn quarter() -> Observable {
        Observable::Grid(GridSet::rect(2, (0, 1), (0, 1)).unwrap())
    }

    fn constant(re: i64) -> Observable {
        Observable::Trig(TrigPoly::constant(Complex::new(
            Ratio::from_integer(re.into()),
            Ratio::zero(),
        )))
    }

    #[test]
    fn constants_give_product_of_means() {
        let (t, s) = (m(1, 0, 1, 1), m(1, 1, 0, 1));
        let out = limit_two_unipotents(&constant(2), &constant(3), &constant(5), &t, &s, 4).unwrap();
        assert_eq!(out.tail_bound, 0.0);
        assert_eq!(out.exact.unwrap().re, Ratio::from_integer(30.into()));
        let g = Observable::Grid(GridSet::full(3).unwrap());
        let out = limit_two_unipotents(&g, &g, &g, &t, &s, 4).unwrap();
        assert!((out.value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_commuting_or_non_unipotent() {
        let d = quarter();
        let t = m(1, 1, 0, 1);
        assert_eq!(
            limit_two_unipotents(&d, &d, &d, &t, &m(1, 3, 0, 1), 4),
            Err(Error::CommutingUnipotents)
        );
        assert!(matches!(
            limit_two_unipotents(&d, &d, &d, &t, &m(2, 1, 1, 1), 4),
            Err(Error::NotUnipotent(_))
        ));
    }

    #[test]
    fn inner_sum_matches_truncated_brute_force() {
        let f = GridSet::new(3, [(0, 0), (1, 2), (2, 1)]).unwrap();
        let g = GridSet::rect(2, (0, 1), (0, 2)).unwrap();
        for (x, v) in [([0, 0], [1, 0]), ([2, -1], [1, 0]), ([1, 3], [1, -1]), ([0, 0], [2, 1])] {
            let closed = grid_inner(&f, &g, x, v);
            let n = 200_000;
            let brute: Complex<f64> = (-n..=n)
                .map(|i| {
                    grid_fourier::<f64>(&f, [x[0] - i * v[0], x[1] - i * v[1]])
                        * grid_fourier::<f64>(&g, [i * v[0], i * v[1]])
                })
                .sum();
            assert!((closed - brute).norm() < 1e-5, "x={x:?} v={v:?}: {closed} vs {brute}");
        }
    }

    #[test]
    fn rectangles_match_reduced_series() {
        let d = quarter();
        let t = m(1, 0, 1, 1);
        for s in [m(1, 1, 0, 1), m(2, -1, 1, 0), m(1, 2, 0, 1)] {
            let r = 60;
            let full = limit_two_unipotents(&d, &d, &d, &t, &s, r).unwrap();
            assert_eq!(full.v, [1, 0]);
            let Observable::Grid(dg) = &d else { unreachable!() };
            let reduced = reduced_rectangle_series(dg, full.w, r).unwrap();
            assert!((full.value.re - reduced).abs() < 1e-9, "{s}: {} vs {reduced}", full.value);
            assert!(full.value.im.abs() < 1e-9);
            assert!(reduced > 1.0 / 64.0);
        }
    }

    #[test]
    fn trig_h_has_no_tail() {
        let d = quarter();
        let h = Observable::Trig(TrigPoly::from_terms([
            ([BigInt::from(0), BigInt::from(0)], Complex::new(Ratio::new(1.into(), 4.into()), Ratio::zero())),
            ([BigInt::from(0), BigInt::from(1)], Complex::new(Ratio::new(1.into(), 3.into()), Ratio::zero())),
        ]));
        let out = limit_two_unipotents(&d, &d, &h, &m(1, 0, 1, 1), &m(1, 1, 0, 1), 5).unwrap();
        assert_eq!(out.tail_bound, 0.0);
    }
}
