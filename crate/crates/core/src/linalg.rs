//! Exact kernels over Q and their integer normalization.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::family::IntPoly;
use crate::scalar::IntScalar;

/// Basis of `{v : A v = 0}` from the reduced row echelon form of `A`
/// (`rows`, each of length `ncols`). One basis vector per free column,
/// with a 1 in that column.
pub fn kernel_basis<T: IntScalar>(rows: &[Vec<Ratio<T>>], ncols: usize) -> Vec<Vec<Ratio<T>>> {
    let mut a: Vec<Vec<Ratio<T>>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..ncols {
                    let sub = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Ratio::zero(); ncols];
            v[free] = Ratio::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Clears denominators and divides by the content.
pub fn integerize<T: IntScalar>(v: &[Ratio<T>]) -> Vec<T> {
    let lcm = v.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<T> = v
        .iter()
        .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
        .collect();
    let g = ints.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / g.clone()).collect()
}

/// Of `v` and `-v`, the lexicographically smaller one (first nonzero negative).
pub fn lex_min_sign<T: IntScalar>(v: Vec<T>) -> Vec<T> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_positive() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

/// Canonical primitive integer kernel vector: each basis vector is
/// integerized and sign-normalized by [`lex_min_sign`], then the
/// lexicographically smallest is chosen. `None` for a trivial kernel.
pub fn canonical_kernel_vector<T: IntScalar>(basis: &[Vec<Ratio<T>>]) -> Option<Vec<T>> {
    basis
        .iter()
        .map(|v| lex_min_sign(integerize(v)))
        .min()
}

/// Linear system `Σ_c u_c · column_c(n) ≡ 0` in `Z[n]²`, solved coefficientwise.
#[derive(Clone, Debug, Default)]
pub struct PolyVectorSystem<T> {
    columns: Vec<[IntPoly<T>; 2]>,
}

impl<T: IntScalar> PolyVectorSystem<T> {
    pub fn new() -> Self {
        PolyVectorSystem { columns: Vec::new() }
    }

    pub fn push(&mut self, column: [IntPoly<T>; 2]) {
        self.columns.push(column);
    }

    /// Adds the two columns of a polynomial matrix (its action on an unknown vector).
    pub fn push_matrix(&mut self, m: &crate::algebra::Mat2<IntPoly<T>>) {
        self.push([m.a.clone(), m.c.clone()]);
        self.push([m.b.clone(), m.d.clone()]);
    }

    /// Adds the two unit columns of an unknown constant vector.
    pub fn push_constant_vector(&mut self) {
        let one = IntPoly::constant(T::one());
        self.push([one.clone(), IntPoly::zero()]);
        self.push([IntPoly::zero(), one]);
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> Vec<Vec<Ratio<T>>> {
        let max_deg = self
            .columns
            .iter()
            .flat_map(|c| c.iter().filter_map(IntPoly::degree))
            .max()
            .unwrap_or(0);
        let mut rows = Vec::new();
        for comp in 0..2 {
            for j in 0..=max_deg {
                let row: Vec<Ratio<T>> = self
                    .columns
                    .iter()
                    .map(|c| Ratio::from_integer(c[comp].coeff(j)))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    pub fn kernel(&self) -> Vec<Vec<Ratio<T>>> {
        kernel_basis(&self.rows(), self.ncols())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Ratio<BigInt> {
        Ratio::from_integer(BigInt::from(n))
    }

    fn apply(rows: &[Vec<Ratio<BigInt>>], v: &[Ratio<BigInt>]) -> Vec<Ratio<BigInt>> {
        rows.iter()
            .map(|row| row.iter().zip(v).fold(r(0), |acc, (a, b)| acc + a * b))
            .collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let basis = kernel_basis(&rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(apply(&rows, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let rows = vec![vec![r(1), r(1)], vec![r(1), r(-1)]];
        assert!(kernel_basis(&rows, 2).is_empty());
        assert_eq!(canonical_kernel_vector::<BigInt>(&[]), None);
    }

    #[test]
    fn integerize_and_sign() {
        let v = vec![
            Ratio::new(BigInt::from(1), BigInt::from(2)),
            Ratio::new(BigInt::from(-3), BigInt::from(4)),
            r(0),
        ];
        assert_eq!(integerize(&v), vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        assert_eq!(
            lex_min_sign(integerize(&v)),
            vec![BigInt::from(-2), BigInt::from(3), BigInt::from(0)]
        );
    }

    #[test]
    fn generic_over_i64() {
        let rows = vec![vec![Ratio::from_integer(2i64), Ratio::from_integer(-4i64)]];
        let basis = kernel_basis(&rows, 2);
        assert_eq!(canonical_kernel_vector(&basis), Some(vec![-2, -1]));
    }
}
