//! Argument parsing beyond what the core text formats cover.

use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};
use toral::family::Family;
use toral::oracle::{Coef, GridSet, TrigPoly};
use toral::parse::{parse_family, parse_matrix, parse_power, parse_rational, parse_rect, parse_vec};
use toral::{Error, Mat2Z, PolyMatFamilyZ, PowerFamilyZ, Result};

/// A matrix sequence given on the command line.
///
/// * `[[a,b],[c,d]]` is the sequence `Mⁿ`;
/// * a literal with `n` in its entries is a polynomial family;
/// * `[[a,b],[c,d]]^POLY` is a power family.
#[derive(Clone, Debug)]
pub enum SeqInput {
    Matrix(Mat2Z),
    Family(PolyMatFamilyZ),
    Power(PowerFamilyZ),
}

impl SeqInput {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let has_exponent = t
            .rfind("]]")
            .map(|i| !t[i + 2..].trim().is_empty())
            .unwrap_or(false);
        if has_exponent {
            Ok(SeqInput::Power(parse_power(t)?))
        } else if t.contains('n') {
            Ok(SeqInput::Family(parse_family(t)?))
        } else {
            Ok(SeqInput::Matrix(parse_matrix(t)?))
        }
    }

    pub fn sample(&self, n: i64) -> Mat2Z {
        match self {
            SeqInput::Matrix(m) => m.pow(n),
            SeqInput::Family(f) => f.evaluate(&BigInt::from(n)),
            SeqInput::Power(p) => p.evaluate(&BigInt::from(n)),
        }
    }

    pub fn family(&self) -> Family<BigInt> {
        match self {
            SeqInput::Matrix(m) => Family::Power(
                PowerFamilyZ::new(m.clone(), toral::IntPolyZ::var()).expect("matrix was checked"),
            ),
            SeqInput::Family(f) => Family::Poly(f.clone()),
            SeqInput::Power(p) => Family::Power(p.clone()),
        }
    }

    /// Polynomial form, if the sequence has one.
    pub fn polynomial(&self) -> Result<PolyMatFamilyZ> {
        match self {
            SeqInput::Matrix(m) => PowerFamilyZ::new(m.clone(), toral::IntPolyZ::var())?.as_polynomial(),
            SeqInput::Family(f) => Ok(f.clone()),
            SeqInput::Power(p) => p.as_polynomial(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SeqInput::Matrix(m) => format!("{m}^n"),
            SeqInput::Family(f) => f.to_string(),
            SeqInput::Power(p) => format!("{}^({})", p.base, p.exponent),
        }
    }
}

/// `rect x0 x1 y0 y1 @ q` (the `rect` keyword is optional) or a path to a
/// JSON file `{"q": .., "cells": [[i,j], ..]}`.
pub fn parse_set(s: &str) -> Result<GridSet> {
    let t = s.trim();
    if t.contains('@') {
        let body = t.strip_prefix("rect").unwrap_or(t);
        return GridSet::from_rect(&parse_rect(body)?);
    }
    let path = Path::new(t);
    let raw = std::fs::read_to_string(path).map_err(|e| {
        Error::InvalidArgument(format!(
            "`{t}` is neither `x0 x1 y0 y1 @ q` nor a readable grid-set file: {e}"
        ))
    })?;
    GridSet::from_json(&raw)
}

fn real(r: num_rational::BigRational) -> Coef<BigInt> {
    Complex::new(r, Zero::zero())
}

/// Sum of characters with rational coefficients, e.g. `(1,0) + (0,1)`,
/// `2*(1,-1) - 1/3*(0,2)`, `5` (a constant).
pub fn parse_trig(s: &str) -> Result<TrigPoly<BigInt>> {
    // split on top-level signs that start a term
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && !cur.trim().ends_with('*') {
            if !cur.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut cur)));
                negative = false;
            }
            negative ^= ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        terms.push((negative, cur));
    }
    if terms.is_empty() {
        return Err(Error::Parse(format!("empty trigonometric polynomial `{s}`")));
    }
    let mut p = TrigPoly::zero();
    for (neg, term) in terms {
        let term = term.trim();
        let (coef, x) = match term.find(['(', '[']) {
            Some(i) => {
                let c = term[..i].trim().trim_end_matches('*').trim();
                let c = if c.is_empty() { One::one() } else { parse_rational(c)? };
                (c, parse_vec(&term[i..])?)
            }
            None => (parse_rational(term)?, [BigInt::zero(), BigInt::zero()]),
        };
        p.add_term(x, real(if neg { -coef } else { coef }));
    }
    Ok(p)
}

pub fn coef_string(c: &Coef<BigInt>) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}
