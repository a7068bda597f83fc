mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::m;
use toral::algebra::Mat2;
use toral::family::{expand_unipotent_products, family_power, IntPoly, PowerFamily};
use toral::parse::{parse_family, parse_power};
use toral::Mat2Z;

fn parabolic_or_sign() -> impl Strategy<Value = Mat2Z> {
    prop::sample::select(vec![
        m(1, 1, 0, 1),
        m(1, 0, 1, 1),
        m(1, -2, 0, 1),
        m(-1, 1, 0, -1),
        m(2, -1, 1, 0),
        m(-1, 0, 0, -1),
        m(1, 0, 0, 1),
    ])
}

fn exponent() -> impl Strategy<Value = IntPoly<BigInt>> {
    prop::collection::vec(-3i64..=3, 0..4).prop_map(|c| IntPoly::from_i64(&c))
}

proptest! {
    #[test]
    fn expansion_matches_pointwise_product(
        factors in prop::collection::vec((parabolic_or_sign(), exponent()), 1..4),
    ) {
        let pf: Vec<PowerFamily<BigInt>> = factors
            .into_iter()
            .map(|(b, e)| PowerFamily::new(b, e).unwrap())
            .collect();
        // (−U)^{a(n)} is polynomial only when a(n) has constant parity
        let parity_ok = pf.iter().all(|p| {
            p.base.trace() != BigInt::from(-2) || p.exponent.constant_parity().is_some()
        });
        let expanded = expand_unipotent_products(&pf);
        prop_assert!(parity_ok || expanded.is_err());
        if !parity_ok {
            return Ok(());
        }
        let f = expanded.unwrap();
        prop_assert_eq!(f.entries().det(), IntPoly::constant(BigInt::from(1)));
        for n in -5i64..=5 {
            let nn = BigInt::from(n);
            let direct = pf
                .iter()
                .fold(Mat2::identity(), |acc: Mat2Z, p| &acc * &p.evaluate(&nn));
            prop_assert_eq!(f.evaluate(&nn), direct);
        }
    }
}

#[test]
fn family_power_matches_matrix_power() {
    for s in ["[[n,n-1],[1,1]]", "[[n,n^2-1],[1,n]]", "[[1,n],[0,1]]", "[[n^2,n^3-1],[1,n]]"] {
        let f = parse_family(s).unwrap();
        for k in 1..=4u32 {
            let fk = family_power(&f, k).unwrap();
            assert_eq!(fk.entries().det(), IntPoly::constant(BigInt::from(1)));
            for n in -5i64..=5 {
                let nn = BigInt::from(n);
                assert_eq!(fk.evaluate(&nn), f.evaluate(&nn).pow(k as i64), "{s}^{k} at {n}");
            }
        }
    }
}

#[test]
fn determinant_must_be_one() {
    assert_eq!(
        parse_family("[[n,1],[1,1]]").unwrap_err().code(),
        "DeterminantNotOne"
    );
}

#[test]
fn hyperbolic_power_is_not_polynomial() {
    let p = parse_power("[[2,1],[1,1]]^n").unwrap();
    assert_eq!(
        expand_unipotent_products(&[p]).unwrap_err().code(),
        "NotPolynomial"
    );
}

#[test]
fn negated_shear_needs_constant_parity() {
    let odd = parse_power("[[-1,1],[0,-1]]^(2*n+1)").unwrap();
    let f = expand_unipotent_products(&[odd]).unwrap();
    for n in -3i64..=3 {
        let nn = BigInt::from(n);
        assert_eq!(f.evaluate(&nn), m(-1, 1, 0, -1).pow(2 * n + 1));
    }
    let mixed = parse_power("[[-1,1],[0,-1]]^n").unwrap();
    assert!(expand_unipotent_products(&[mixed]).is_err());
}
