use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::RectSpec;
use crate::scalar::Real;

/// Finite union of cells `[i/q,(i+1)/q) × [j/q,(j+1)/q)` on the torus.
/// `i` indexes the first coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct GridSet {
    q: u32,
    cells: BTreeSet<(u32, u32)>,
}

#[derive(Deserialize)]
struct RawGrid {
    q: u32,
    cells: Vec<(u32, u32)>,
}

impl TryFrom<RawGrid> for GridSet {
    type Error = Error;
    fn try_from(r: RawGrid) -> Result<Self> {
        GridSet::new(r.q, r.cells)
    }
}

impl GridSet {
    pub fn new(q: u32, cells: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("grid resolution must be positive".into()));
        }
        let cells: BTreeSet<(u32, u32)> = cells.into_iter().collect();
        if let Some(&(i, j)) = cells.iter().find(|&&(i, j)| i >= q || j >= q) {
            return Err(Error::InvalidArgument(format!(
                "cell ({i},{j}) outside the {q}x{q} grid"
            )));
        }
        Ok(GridSet { q, cells })
    }

    pub fn empty(q: u32) -> Result<Self> {
        GridSet::new(q, [])
    }

    pub fn full(q: u32) -> Result<Self> {
        GridSet::new(q, (0..q).flat_map(|i| (0..q).map(move |j| (i, j))))
    }

    /// Cells `cols.0..cols.1` by `rows.0..rows.1`.
    pub fn rect(q: u32, cols: (u32, u32), rows: (u32, u32)) -> Result<Self> {
        GridSet::new(
            q,
            (cols.0..cols.1).flat_map(|i| (rows.0..rows.1).map(move |j| (i, j))),
        )
    }

    pub fn from_rect(r: &RectSpec) -> Result<Self> {
        GridSet::rect(r.q, r.cols, r.rows)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid sets always serialize")
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn cells(&self) -> &BTreeSet<(u32, u32)> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains_cell(&self, i: u32, j: u32) -> bool {
        self.cells.contains(&(i, j))
    }

    /// Exact measure `|cells| / q²`.
    pub fn measure(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.cells.len()),
            BigInt::from(self.q) * BigInt::from(self.q),
        )
    }

    pub fn measure_f64(&self) -> f64 {
        self.cells.len() as f64 / (self.q as f64 * self.q as f64)
    }

    /// Row-major membership table, index `i * q + j`.
    pub fn mask(&self) -> Vec<bool> {
        let q = self.q as usize;
        let mut m = vec![false; q * q];
        for &(i, j) in &self.cells {
            m[i as usize * q + j as usize] = true;
        }
        m
    }

    /// Same set on the finer `(q·factor)`-grid.
    pub fn refine(&self, factor: u32) -> Result<Self> {
        let q = self.q * factor;
        GridSet::new(
            q,
            self.cells.iter().flat_map(|&(i, j)| {
                (0..factor).flat_map(move |a| (0..factor).map(move |b| (i * factor + a, j * factor + b)))
            }),
        )
    }

    /// Cell boundary as `(vertical, horizontal)` edge counts; each edge has length `1/q`.
    /// Neighbors wrap around the torus.
    pub fn boundary_edges(&self) -> (u64, u64) {
        let q = self.q;
        let (mut vert, mut horiz) = (0, 0);
        for &(i, j) in &self.cells {
            if !self.contains_cell((i + 1) % q, j) {
                vert += 1;
            }
            if !self.contains_cell((i + q - 1) % q, j) {
                vert += 1;
            }
            if !self.contains_cell(i, (j + 1) % q) {
                horiz += 1;
            }
            if !self.contains_cell(i, (j + q - 1) % q) {
                horiz += 1;
            }
        }
        (vert, horiz)
    }

    /// `(cols, rows)` when the set is a product `D₁ × D₂` of unions of `1/q` intervals.
    pub fn as_product(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let cols: BTreeSet<u32> = self.cells.iter().map(|c| c.0).collect();
        let rows: BTreeSet<u32> = self.cells.iter().map(|c| c.1).collect();
        (cols.len() * rows.len() == self.cells.len())
            .then(|| (cols.into_iter().collect(), rows.into_iter().collect()))
    }
}

/// `∫_{i/q}^{(i+1)/q} e^{-2πikt} dt · e^{2πiki/q}`: the cell factor shared by every cell.
pub fn cell_factor<R: Real>(k: i64, q: u32) -> Complex<R> {
    let qf = R::from_f64(q as f64);
    if k == 0 {
        return Complex::new(R::one() / qf, R::zero());
    }
    let r = k.rem_euclid(q as i64);
    let theta = R::TAU() * R::from_f64(r as f64) / qf;
    let denom = R::TAU() * R::from_f64(k as f64);
    Complex::new(theta.sin() / denom, -(R::one() - theta.cos()) / denom)
}

/// `e^{-2πi r/q}`.
pub fn root_of_unity<R: Real>(r: i64, q: u32) -> Complex<R> {
    let theta = R::TAU() * R::from_f64(r.rem_euclid(q as i64) as f64) / R::from_f64(q as f64);
    Complex::new(theta.cos(), -theta.sin())
}

/// `Σ_{cells} e^{-2πi(a·i + b·j)/q}`, with phases reduced in integers.
pub fn cell_sum<R: Real>(g: &GridSet, a: i64, b: i64) -> Complex<R> {
    let q = g.q as i64;
    let (a, b) = (a.rem_euclid(q), b.rem_euclid(q));
    let mut counts = vec![0u64; q as usize];
    for &(i, j) in &g.cells {
        counts[((a * i as i64 + b * j as i64) % q) as usize] += 1;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(Complex::new(R::zero(), R::zero()), |acc, (r, &c)| {
            acc + root_of_unity::<R>(r as i64, g.q) * R::from_f64(c as f64)
        })
}

/// Fourier coefficient `∫_G e^{-2πi⟨x,ξ⟩} dξ` of the indicator of `G`, in closed form.
/// Absolute error is a few ulps times the number of cells.
pub fn grid_fourier<R: Real>(g: &GridSet, x: [i64; 2]) -> Complex<R> {
    cell_factor::<R>(x[0], g.q) * cell_factor::<R>(x[1], g.q) * cell_sum::<R>(g, x[0], x[1])
}
