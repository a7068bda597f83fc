#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;

use toral::algebra::Mat2;
use toral::decide::Verdict;
use toral::oracle::char_correlation;
use toral::Mat2Z;

pub fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2Z {
    Mat2::from_i64(a, b, c, d)
}

pub fn big2(v: &[BigInt]) -> [BigInt; 2] {
    [v[0].clone(), v[1].clone()]
}

/// Correlation of the witness `(x_1, …, x_k, y)` at `ms` is 1.
pub fn witness_holds(w: &[Vec<BigInt>], ms: &[Mat2Z]) -> bool {
    let k = ms.len();
    let xs: Vec<[BigInt; 2]> = w[..k].iter().map(|x| big2(x)).collect();
    char_correlation(&xs, &big2(&w[k]), ms).unwrap() == 1
}

/// `1 ≤ n ≤ limit` on the verdict's progression.
pub fn progression(v: &Verdict, limit: i64) -> Vec<i64> {
    let (md, r) = v.progression();
    (1..=limit)
        .filter(|n| n.rem_euclid(md as i64) == r as i64)
        .collect()
}

/// Product of shears `[[1,k],[0,1]]`, `[[1,0],[k,1]]`, optionally negated:
/// every element of SL(2,Z) arises this way.
pub fn sl2() -> impl Strategy<Value = Mat2Z> {
    (
        prop::collection::vec((any::<bool>(), -3i64..=3), 1..6),
        any::<bool>(),
    )
        .prop_map(|(word, neg)| {
            let mut acc = Mat2::identity();
            for (upper, k) in word {
                let g = if upper { m(1, k, 0, 1) } else { m(1, 0, k, 1) };
                acc = &acc * &g;
            }
            if neg {
                -&acc
            } else {
                acc
            }
        })
}

pub fn norm_at_most(t: &Mat2Z, bound: i64) -> bool {
    t.norm() <= BigInt::from(bound)
}

pub fn hyperbolic(bound: i64) -> impl Strategy<Value = Mat2Z> {
    sl2().prop_filter("hyperbolic with small entries", move |t| {
        t.trace().magnitude() > &2u32.into() && norm_at_most(t, bound)
    })
}
