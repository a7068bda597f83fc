mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{hyperbolic, m, progression, sl2, witness_holds};
use toral::decide::{
    check_rokhlin_sufficient, decide_element_mixing, decide_joint_polyfamilies,
    decide_joint_powers, decide_polyfamily_mixing, witness_same_modulus_triple, Answer, Verdict,
};
use toral::family::{family_power, PolyMatFamily};
use toral::parse::{parse_family, parse_poly};
use toral::Mat2Z;

/// Last `n ≤ horizon` where some frequency pair in `[−3,3]²` correlates
/// against a product of zero, plus one.
fn stabilization(ts: &[Mat2Z], horizon: i64) -> i64 {
    let freqs: Vec<[BigInt; 2]> = (-3i64..=3)
        .flat_map(|a| (-3i64..=3).map(move |b| [BigInt::from(a), BigInt::from(b)]))
        .collect();
    let mut last_bad = 0;
    for n in 1..=horizon {
        let moved: Vec<Vec<[BigInt; 2]>> = ts
            .iter()
            .map(|t| {
                let p = t.transpose().pow(n);
                freqs.iter().map(|x| p.apply(x)).collect()
            })
            .collect();
        // Σ ᵗT_iⁿ x_i + y = 0 with some x_i ≠ 0 and |y| ≤ 3
        let mut sums: Vec<([BigInt; 2], bool)> = vec![([BigInt::from(0), BigInt::from(0)], false)];
        for (row, _) in moved.iter().zip(ts) {
            let mut next = Vec::new();
            for (s, nz) in &sums {
                for (x, mx) in freqs.iter().zip(row) {
                    let nonzero = *nz || x.iter().any(|c| c != &BigInt::from(0));
                    next.push(([&s[0] + &mx[0], &s[1] + &mx[1]], nonzero));
                }
            }
            sums = next;
        }
        if sums
            .iter()
            .any(|(s, nz)| *nz && s.iter().all(|c| c.magnitude() <= &3u32.into()))
        {
            last_bad = n;
        }
    }
    last_bad + 1
}

fn check_negative(v: &Verdict, ts: &[Mat2Z]) -> bool {
    let w = v.witness.as_ref().expect("negative verdicts carry a witness");
    progression(v, 100).into_iter().all(|n| {
        let ms: Vec<Mat2Z> = ts.iter().map(|t| t.pow(n)).collect();
        witness_holds(w, &ms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn single_element_agrees_with_joint(t in sl2()) {
        let a = decide_element_mixing(&t).unwrap();
        let b = decide_joint_powers(std::slice::from_ref(&t)).unwrap();
        prop_assert_eq!(a.answer == Answer::Mixing, b.answer == Answer::JointlyMixing);
        if a.answer.is_negative() {
            prop_assert!(check_negative(&a, std::slice::from_ref(&t)));
            prop_assert!(check_negative(&b, &[t]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn joint_powers_witness_or_stabilization(ts in prop::collection::vec(sl2(), 1..4)) {
        let v = decide_joint_powers(&ts).unwrap();
        if v.answer.is_negative() {
            prop_assert!(check_negative(&v, &ts));
        } else if ts.iter().all(|t| common::norm_at_most(t, 6)) && ts.len() <= 2 {
            prop_assert!(stabilization(&ts, 70) <= 60);
        }
    }

    #[test]
    fn permutation_keeps_answer(ts in prop::collection::vec(sl2(), 2..4), rot in 0usize..3) {
        let v = decide_joint_powers(&ts).unwrap();
        let mut perm = ts.clone();
        perm.rotate_left(rot % ts.len());
        perm.reverse();
        prop_assert_eq!(decide_joint_powers(&perm).unwrap().answer, v.answer);
    }

    #[test]
    fn same_trace_triples_cancel(t in hyperbolic(8), a in sl2(), b in sl2()) {
        let conj = |g: &Mat2Z| &(&g.inverse() * &t) * g;
        let triple = [t.clone(), conj(&a), conj(&b)];
        let distinct = (0..3).all(|i| (i + 1..3).all(|j| triple[i] != triple[j] && triple[i] != -&triple[j]));
        prop_assume!(distinct);
        let tw = witness_same_modulus_triple(&triple).unwrap();
        let zero = [BigInt::from(0), BigInt::from(0)];
        for n in 1..=20 {
            let ms: Vec<Mat2Z> = triple.iter().map(|x| x.pow(n)).collect();
            prop_assert_eq!(toral::oracle::char_correlation(&tw.xs, &zero, &ms).unwrap(), 1);
        }
    }
}

fn family_negative_holds(v: &Verdict, fs: &[PolyMatFamily<BigInt>]) -> bool {
    let w = v.witness.as_ref().unwrap();
    (1..=100).all(|n| {
        let ms: Vec<Mat2Z> = fs.iter().map(|f| f.evaluate(&BigInt::from(n))).collect();
        witness_holds(w, &ms)
    })
}

#[test]
fn polynomial_families_against_oracle() {
    let cases = [
        ("[[n,n-1],[1,1]]", Answer::NotMixing),
        ("[[n,n^2-1],[1,n]]", Answer::Mixing),
        ("[[1,n],[0,1]]", Answer::NotMixing),
        ("[[1-n^2,-n],[n,1]]", Answer::Mixing),
        ("[[2,1],[1,1]]", Answer::NotMixing),
    ];
    for (s, expected) in cases {
        let f = parse_family(s).unwrap();
        let v = decide_polyfamily_mixing(&f);
        assert_eq!(v.answer, expected, "{s}");
        if v.answer.is_negative() {
            assert!(family_negative_holds(&v, std::slice::from_ref(&f)), "{s}");
        } else {
            // frequencies in [−3,3]² leave the box for good
            let mut last_bad = 0;
            for n in 1..=80i64 {
                let t = f.evaluate(&BigInt::from(n)).transpose();
                for a in -3i64..=3 {
                    for b in -3i64..=3 {
                        if (a, b) == (0, 0) {
                            continue;
                        }
                        let y = t.apply(&[BigInt::from(a), BigInt::from(b)]);
                        if y.iter().all(|c| c.magnitude() <= &3u32.into()) {
                            last_bad = n;
                        }
                    }
                }
            }
            assert!(last_bad < 60, "{s} stabilizes late: {last_bad}");
        }
    }
}

#[test]
fn joint_families_against_oracle() {
    let g = parse_family("[[n,n^2-1],[1,n]]").unwrap();
    let g2 = family_power(&g, 2).unwrap();
    let v = decide_joint_polyfamilies(&[g.clone(), g2.clone()]);
    assert_eq!(v.answer, Answer::NotJointlyMixing);
    assert!(family_negative_holds(&v, &[g.clone(), g2]));
    let id = PolyMatFamily::identity();
    let v = decide_joint_polyfamilies(&[g.clone(), id.clone()]);
    assert_eq!(v.answer, Answer::NotJointlyMixing);
    assert!(family_negative_holds(&v, &[g, id]));
}

#[test]
fn rokhlin_sufficient_condition() {
    let t = m(2, 1, 1, 1);
    let s = m(3, 1, 2, 1);
    let holds = check_rokhlin_sufficient(
        &[t.clone(), s.clone()],
        &[parse_poly("n").unwrap(), parse_poly("n^2").unwrap()],
    )
    .unwrap();
    assert_eq!(holds.answer, Answer::SufficientConditionHolds);
    // equal weighted logarithms: T^{2n} against (T^2)^n
    let unknown = check_rokhlin_sufficient(
        &[t.clone(), t.pow(2)],
        &[parse_poly("2*n").unwrap(), parse_poly("n").unwrap()],
    )
    .unwrap();
    assert_eq!(unknown.answer, Answer::Unknown);
    assert_eq!(
        check_rokhlin_sufficient(&[m(1, 1, 0, 1)], &[parse_poly("n").unwrap()])
            .unwrap_err()
            .code(),
        "NotHyperbolic"
    );
}
