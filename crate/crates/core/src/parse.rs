//! Text formats shared by the CLI and file inputs.
//!
//! * matrix literal `[[a,b],[c,d]]`, decimal integers, optional whitespace;
//! * polynomial in `n`, either a coefficient list `[c0,c1,c2]` or an
//!   expression over `n`, integers, `+ - * ^` and parentheses;
//! * family literal: a 2×2 array whose entries are polynomials;
//! * power literal `MATRIX^POLY`, e.g. `[[1,1],[0,1]]^(-n)`;
//! * rectangle `x0 x1 y0 y1 @ q` with rational endpoints on the `1/q` grid.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::Mat2;
use crate::error::{Error, Result};
use crate::family::{IntPoly, PolyMatFamily, PowerFamily};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits on commas that are not nested inside brackets or parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(format!("unbalanced brackets in `{s}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err(format!("unbalanced brackets in `{s}`")));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

fn strip_brackets(s: &str) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err(format!("expected `[...]`, got `{t}`")))
}

/// Splits a `[[x,y],[z,w]]` literal into its four raw entries.
fn split_2x2(s: &str) -> Result<[String; 4]> {
    let rows = split_top_level(strip_brackets(s)?)?;
    if rows.len() != 2 {
        return Err(err(format!("expected two rows in `{s}`")));
    }
    let mut out = Vec::with_capacity(4);
    for row in rows {
        let cols = split_top_level(strip_brackets(row)?)?;
        if cols.len() != 2 {
            return Err(err(format!("expected two entries in row `{row}`")));
        }
        out.extend(cols.into_iter().map(str::to_string));
    }
    Ok(out.try_into().expect("four entries"))
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim().replace('−', "-");
    BigInt::from_str(t.strip_prefix('+').unwrap_or(&t))
        .map_err(|_| err(format!("`{}` is not an integer", s.trim())))
}

pub fn parse_matrix(s: &str) -> Result<Mat2<BigInt>> {
    let [a, b, c, d] = split_2x2(s)?;
    Ok(Mat2::new(parse_int(&a)?, parse_int(&b)?, parse_int(&c)?, parse_int(&d)?))
}

/// Like [`parse_matrix`] but also requires determinant 1.
pub fn parse_sl2(s: &str) -> Result<Mat2<BigInt>> {
    let m = parse_matrix(s)?;
    m.ensure_unimodular()?;
    Ok(m)
}

pub fn parse_poly(s: &str) -> Result<IntPoly<BigInt>> {
    let t = s.trim();
    if t.starts_with('[') {
        let inner = strip_brackets(t)?;
        if inner.trim().is_empty() {
            return Ok(IntPoly::zero());
        }
        let coeffs = split_top_level(inner)?
            .into_iter()
            .map(parse_int)
            .collect::<Result<Vec<_>>>()?;
        return Ok(IntPoly::new(coeffs));
    }
    let mut p = ExprParser {
        chars: t.replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    if p.chars.is_empty() {
        return Err(err("empty polynomial"));
    }
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(err(format!("unexpected `{}` in `{t}`", p.chars[p.pos])));
    }
    Ok(out)
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPoly<BigInt>> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly<BigInt>> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPoly<BigInt>> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPoly<BigInt>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = digits
                .parse()
                .map_err(|_| err("exponent must be a non-negative integer literal"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<IntPoly<BigInt>> {
        match self.peek() {
            Some('n') => {
                self.pos += 1;
                Ok(IntPoly::var())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(err("missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                if matches!(self.peek(), Some('n' | '(')) {
                    return Err(err(format!(
                        "implicit multiplication after `{digits}`; write `{digits}*...`"
                    )));
                }
                Ok(IntPoly::constant(parse_int(&digits)?))
            }
            Some(c) => Err(err(format!("unexpected `{c}` in polynomial"))),
            None => Err(err("polynomial ends unexpectedly")),
        }
    }
}

pub fn parse_family(s: &str) -> Result<PolyMatFamily<BigInt>> {
    let [a, b, c, d] = split_2x2(s)?;
    PolyMatFamily::new(Mat2::new(
        parse_poly(&a)?,
        parse_poly(&b)?,
        parse_poly(&c)?,
        parse_poly(&d)?,
    ))
}

/// `MATRIX^POLY`; the exponent defaults to `n` when omitted.
pub fn parse_power(s: &str) -> Result<PowerFamily<BigInt>> {
    let t = s.trim();
    let close = t
        .rfind("]]")
        .ok_or_else(|| err(format!("expected `[[..]]^exponent`, got `{t}`")))?;
    let (mat, rest) = t.split_at(close + 2);
    let rest = rest.trim();
    let exponent = if rest.is_empty() {
        IntPoly::var()
    } else {
        let e = rest
            .strip_prefix('^')
            .ok_or_else(|| err(format!("expected `^` after matrix in `{t}`")))?;
        parse_poly(e)?
    };
    PowerFamily::new(parse_matrix(mat)?, exponent)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}

/// `x,y`, `(x,y)` or `[x,y]`.
pub fn parse_vec(s: &str) -> Result<[BigInt; 2]> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(t);
    let parts = split_top_level(inner)?;
    if parts.len() != 2 {
        return Err(err(format!("expected two coordinates in `{t}`")));
    }
    Ok([parse_int(parts[0])?, parse_int(parts[1])?])
}

/// Axis-aligned rectangle `[x0,x1) × [y0,y1)` on the `1/q` grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectSpec {
    pub q: u32,
    /// cell index ranges `x0*q .. x1*q`, `y0*q .. y1*q`
    pub cols: (u32, u32),
    pub rows: (u32, u32),
}

pub fn parse_rect(s: &str) -> Result<RectSpec> {
    let (coords, q) = s
        .split_once('@')
        .ok_or_else(|| err(format!("expected `x0 x1 y0 y1 @ q`, got `{s}`")))?;
    let q: u32 = q
        .trim()
        .parse()
        .map_err(|_| err(format!("bad resolution `{}`", q.trim())))?;
    if q == 0 {
        return Err(err("resolution must be positive"));
    }
    let nums = coords
        .split_whitespace()
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    if nums.len() != 4 {
        return Err(err("rectangle needs four endpoints"));
    }
    let qr = BigRational::from_integer(q.into());
    let mut idx = [0u32; 4];
    for (slot, v) in idx.iter_mut().zip(&nums) {
        if *v < BigRational::zero() || *v > BigRational::one() {
            return Err(err(format!("endpoint {v} outside [0,1]")));
        }
        let scaled = v * &qr;
        if !scaled.is_integer() {
            return Err(err(format!("endpoint {v} is not on the 1/{q} grid")));
        }
        *slot = scaled.to_integer().to_u32().expect("bounded by q");
    }
    if idx[0] > idx[1] || idx[2] > idx[3] {
        return Err(err("rectangle endpoints must be ordered"));
    }
    Ok(RectSpec {
        q,
        cols: (idx[0], idx[1]),
        rows: (idx[2], idx[3]),
    })
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let t = s.trim();
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| err(format!("bad range bound `{x}`")))
    };
    let (lo, hi) = match t.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(t)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(err(format!("empty range `{t}`")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        let m = parse_matrix(" [ [2, 1] , [1,1] ] ").unwrap();
        assert_eq!(m, Mat2::from_i64(2, 1, 1, 1));
        assert_eq!(parse_matrix("[[-2,9],[-1,4]]").unwrap(), Mat2::from_i64(-2, 9, -1, 4));
        assert!(parse_matrix("[[1,2,3],[1,1]]").is_err());
        assert!(parse_matrix("[[1,x],[0,1]]").is_err());
        assert!(parse_sl2("[[2,0],[0,1]]").is_err());
    }

    #[test]
    fn polynomials_both_syntaxes_agree() {
        let a = parse_poly("n^2 - 1").unwrap();
        let b = parse_poly("[-1, 0, 1]").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-(n+1)*(n-1)").unwrap(), -a);
        assert_eq!(parse_poly("3*n^3 - 2*n + 7").unwrap(), IntPoly::from_i64(&[7, -2, 0, 3]));
        assert!(parse_poly("2n").is_err());
        assert!(parse_poly("n^").is_err());
        assert!(parse_poly("m+1").is_err());
    }

    #[test]
    fn families_and_powers() {
        let f = parse_family("[[n, n^2-1],[1, n]]").unwrap();
        assert_eq!(f.evaluate(&3.into()), Mat2::from_i64(3, 8, 1, 3));
        let g = parse_family("[[[0,1],[-1,0,1]],[[1],[0,1]]]").unwrap();
        assert_eq!(f, g);
        assert!(parse_family("[[n, n],[1, n]]").is_err());
        let p = parse_power("[[1,1],[0,1]]^(-n)").unwrap();
        assert_eq!(p.exponent, IntPoly::from_i64(&[0, -1]));
        let q = parse_power("[[1,0],[1,1]]^n^2").unwrap();
        assert_eq!(q.exponent, IntPoly::from_i64(&[0, 0, 1]));
        assert_eq!(parse_power("[[1,0],[1,1]]").unwrap().exponent, IntPoly::var());
    }

    #[test]
    fn rectangles_and_ranges() {
        let r = parse_rect("0 1/2 0 1/2 @ 2").unwrap();
        assert_eq!(r, RectSpec { q: 2, cols: (0, 1), rows: (0, 1) });
        assert!(parse_rect("0 1/3 0 1 @ 2").is_err());
        assert_eq!(parse_range("1..6").unwrap(), (1, 6));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("5..1").is_err());
        assert_eq!(parse_vec("(1,-2)").unwrap(), [BigInt::from(1), BigInt::from(-2)]);
    }
}
