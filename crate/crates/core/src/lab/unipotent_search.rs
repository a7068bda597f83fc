//! Breadth-first search for a parabolic element (|trace| = 2, not ±I) in the
//! subgroup generated by a finite set of matrices.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Mat2;
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Generator `index`, or its inverse. Ordered as `(g0,+), (g0,−), (g1,+), …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn inverted(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.generator)
        } else {
            write!(f, "g{}", self.generator)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnipotentSearch<T> {
    Found { word: Vec<Letter>, matrix: Mat2<T> },
    /// No parabolic element among words of length `≤ L`. Not a proof that
    /// the subgroup has none.
    NoneUpTo(usize),
}

pub fn word_to_string(word: &[Letter]) -> String {
    word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn is_parabolic<T: IntScalar>(m: &Mat2<T>) -> bool {
    m.trace().abs() == T::int(2) && !m.is_plus_minus_identity()
}

/// First word in (length, lexicographic) order, among reduced words of
/// length `1..=max_len`, whose matrix is parabolic. Words whose matrix was
/// already produced by an earlier word are not extended.
pub fn find_unipotent<T: IntScalar>(
    generators: &[Mat2<T>],
    max_len: usize,
) -> Result<UnipotentSearch<T>> {
    if generators.is_empty() || max_len == 0 {
        return Err(Error::InvalidArgument(
            "need at least one generator and L ≥ 1".into(),
        ));
    }
    for g in generators {
        g.ensure_unimodular()?;
    }
    let letters: Vec<(Letter, Mat2<T>)> = generators
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [
                (Letter { generator: i, inverse: false }, g.clone()),
                (Letter { generator: i, inverse: true }, g.inverse()),
            ]
        })
        .collect();
    let mut seen: HashSet<Mat2<T>> = HashSet::new();
    seen.insert(Mat2::identity());
    let mut frontier: Vec<(Vec<Letter>, Mat2<T>)> = vec![(Vec::new(), Mat2::identity())];
    for _ in 0..max_len {
        // children in (parent order, letter order) = lexicographic order
        let children: Vec<Vec<(Vec<Letter>, Mat2<T>)>> = frontier
            .par_iter()
            .map(|(word, m)| {
                letters
                    .iter()
                    .filter(|(l, _)| word.last() != Some(&l.inverted()))
                    .map(|(l, g)| {
                        let mut w = word.clone();
                        w.push(*l);
                        (w, m * g)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (word, m) in children.into_iter().flatten() {
            if !seen.insert(m.clone()) {
                continue;
            }
            if is_parabolic(&m) {
                return Ok(UnipotentSearch::Found { word, matrix: m });
            }
            next.push((word, m));
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(UnipotentSearch::NoneUpTo(max_len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Mat2<BigInt>;

    #[test]
    fn shear_found_immediately() {
        let r = find_unipotent(&[M::from_i64(1, 1, 0, 1)], 3).unwrap();
        let UnipotentSearch::Found { word, .. } = r else {
            panic!("expected a word")
        };
        assert_eq!(word, vec![Letter { generator: 0, inverse: false }]);
    }

    #[test]
    fn cyclic_hyperbolic_has_none() {
        for l in 1..=6 {
            assert_eq!(
                find_unipotent(&[M::from_i64(2, 1, 1, 1)], l).unwrap(),
                UnipotentSearch::NoneUpTo(l)
            );
        }
    }

    #[test]
    fn finite_group_terminates() {
        // order 4 element: search ends once the group is exhausted
        let r = find_unipotent(&[M::from_i64(0, -1, 1, 0)], 50).unwrap();
        assert_eq!(r, UnipotentSearch::NoneUpTo(50));
    }
}
