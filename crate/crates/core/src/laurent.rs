//! Sparse Laurent polynomials in one variable `u` with integer coefficients.
//!
//! [`LaurentPoly`] is the coefficient ring `Z[u, u^-1]` for everything else in
//! the crate. Terms are kept in a `BTreeMap` keyed by exponent, so the zero
//! polynomial is the empty map and no stored coefficient is ever zero.
//!
//! The textual form accepted by [`LaurentPoly::from_str`] is a signed sum of
//! terms `[sign] [integer] [*] [u [^ signed-integer]]`, whitespace ignored.
//! Printing is canonical: descending exponents, unit coefficients elided,
//! `u^-k` for negative powers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("the Euler class needs a nonzero weight")]
    ZeroWeight,
    #[error("cannot normalize the zero polynomial")]
    ZeroPolynomial,
    #[error("leading coefficient must be 1, got {0}")]
    NotMonic(BigInt),
    #[error("expected a polynomial in u, found the exponent {0}")]
    NegativeExponent(i64),
}

/// An element of `Z[u, u^-1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `u`.
    pub fn u() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `coeff * u^exp`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining like
    /// terms and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    /// Polynomial with coefficients `coeffs[i]` on `u^i`.
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    /// The K-theoretic Euler class `1 - u^-weight` of the weight-`weight` line.
    pub fn euler_class(weight: i64) -> Result<Self, LaurentError> {
        if weight == 0 {
            return Err(LaurentError::ZeroWeight);
        }
        Ok(Self::from_terms([(0, 1), (-weight, -1)]))
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when no exponent is negative (the zero polynomial included).
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Dense ascending coefficients of a polynomial (no negative exponents).
    pub fn to_dense(&self) -> Result<Vec<BigInt>, LaurentError> {
        let Some(top) = self.max_exponent() else {
            return Ok(Vec::new());
        };
        if let Some(low) = self.min_exponent().filter(|&e| e < 0) {
            return Err(LaurentError::NegativeExponent(low));
        }
        let mut out = vec![BigInt::zero(); top as usize + 1];
        for (&e, c) in &self.terms {
            out[e as usize] = c.clone();
        }
        Ok(out)
    }

    /// Rescales by a unit `±u^N` so the result is a polynomial in `u` with
    /// nonzero constant term and, when possible, leading coefficient `+1`.
    pub fn normalize(&self) -> Result<Normalization, LaurentError> {
        let low = self.min_exponent().ok_or(LaurentError::ZeroPolynomial)?;
        let shift = -low;
        let mut coeffs = self.shift(shift).to_dense()?;
        let lead = coeffs.last().expect("nonzero polynomial");
        let flip = lead.is_negative() && lead.abs().is_one();
        if flip {
            for c in &mut coeffs {
                *c = -std::mem::take(c);
            }
        }
        Ok(Normalization {
            coeffs,
            shift,
            sign: if flip { -1 } else { 1 },
        })
    }

    /// LaTeX rendering, e.g. `1-u^{-2}`.
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.abs();
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push('u');
            if e != 1 {
                if latex && !(0..10).contains(&e) {
                    out.push_str(&format!("^{{{e}}}"));
                } else {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}

/// Parses the polynomial text grammar.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly, LaurentError> {
    text.parse()
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

/// Result of [`LaurentPoly::normalize`]: `sign * u^shift * g` as a dense
/// polynomial with nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    coeffs: Vec<BigInt>,
    shift: i64,
    sign: i8,
}

impl Normalization {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Power `N` of `u` the input was multiplied by.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Overall sign `±1` applied.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("normalization is never empty")
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.coeffs.iter().cloned())
    }

    pub fn into_monic(self) -> Option<MonicPoly> {
        self.is_monic().then_some(MonicPoly {
            coeffs: self.coeffs,
            shift: self.shift,
        })
    }
}

/// A polynomial in `u` with leading coefficient 1, used as the modulus of a
/// sector quotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    coeffs: Vec<BigInt>,
    shift: i64,
}

impl MonicPoly {
    /// Builds from ascending coefficients; the last one must be 1.
    pub fn from_coeffs<C: Into<BigInt>>(
        coeffs: impl IntoIterator<Item = C>,
    ) -> Result<Self, LaurentError> {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        match coeffs.last() {
            None => Err(LaurentError::ZeroPolynomial),
            Some(c) if !c.is_one() => Err(LaurentError::NotMonic(c.clone())),
            Some(_) => Ok(Self { coeffs, shift: 0 }),
        }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
            shift: 0,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.coeffs.iter().cloned())
    }

    /// Euclidean division `x = q * self + r` with `deg r < deg self`.
    pub fn divmod(&self, x: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly), LaurentError> {
        let mut rem = x.to_dense()?;
        let d = self.degree();
        if rem.len() <= d {
            return Ok((LaurentPoly::zero(), x.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = std::mem::take(&mut rem[i]);
            if q.is_zero() {
                continue;
            }
            for (j, g) in self.coeffs[..d].iter().enumerate() {
                if !g.is_zero() {
                    rem[i - d + j] -= &q * g;
                }
            }
            quot[i - d] = q;
        }
        rem.truncate(d);
        Ok((LaurentPoly::from_coeffs(quot), LaurentPoly::from_coeffs(rem)))
    }

    /// Remainder of `x` modulo `self`.
    pub fn rem(&self, x: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.divmod(x).map(|(_, r)| r)
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_laurent().fmt(f)
    }
}

/// Division of a polynomial by a monic polynomial.
pub fn divmod_monic(
    x: &LaurentPoly,
    g: &MonicPoly,
) -> Result<(LaurentPoly, LaurentPoly), LaurentError> {
    g.divmod(x)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        if self.peek().is_none() {
            return self.error("empty polynomial");
        }
        let mut out = LaurentPoly::zero();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.sign() {
                Some(neg) => neg,
                None if first => false,
                None => return self.error("expected '+' or '-'"),
            };
            let (exp, coeff) = self.term()?;
            out.add_term(exp, if negative { -coeff } else { coeff });
            first = false;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(i64, BigInt), LaurentError> {
        let coeff = self.digits().map(|d| d.parse::<BigInt>().expect("ascii digits"));
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            if self.peek() != Some('u') {
                return self.error("expected 'u' after '*'");
            }
        }
        let exp = match self.peek() {
            Some('u') => {
                self.pos += 1;
                self.exponent()?
            }
            _ if coeff.is_some() => 0,
            Some(c) => return self.error(format!("unexpected character '{c}'")),
            None => return self.error("unexpected end of input"),
        };
        Ok((exp, coeff.unwrap_or_else(BigInt::one)))
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let negative = self.sign() == Some(true);
        let start = self.pos;
        let Some(digits) = self.digits() else {
            return self.error("expected an integer exponent");
        };
        match digits.parse::<i64>() {
            Ok(e) if negative => Ok(-e),
            Ok(e) => Ok(e),
            Err(_) => {
                self.pos = start;
                self.error("exponent out of range")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn terms(x: &LaurentPoly) -> Vec<(i64, i64)> {
        x.terms()
            .map(|(e, c)| (e, i64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(terms(&p("1 - u^-2")), vec![(-2, -1), (0, 1)]);
        assert_eq!(terms(&p("u^3 + 2u^3")), vec![(3, 3)]);
        assert!(p("0").is_zero());
        assert_eq!(p("u"), LaurentPoly::u());
        assert_eq!(p("-3*u^2 + 4"), LaurentPoly::from_terms([(2, -3), (0, 4)]));
        assert_eq!(p(" - u ^ - 2 "), LaurentPoly::monomial(-2, -1));
        assert_eq!(p("u^+2"), LaurentPoly::monomial(2, 1));
        assert!(p("u - u").is_zero());
    }

    #[test]
    fn parse_big_coefficients() {
        let x = p("123456789012345678901234567890u^-1");
        assert_eq!(
            x.coeff(-1),
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        let cases = [
            ("", 0),
            ("1 +", 3),
            ("u^", 2),
            ("2*", 2),
            ("1 2", 2),
            ("x", 0),
            ("u^-1 u", 5),
            ("--1", 1),
            ("u^99999999999999999999", 2),
        ];
        for (text, pos) in cases {
            match text.parse::<LaurentPoly>() {
                Err(LaurentError::Parse { position, .. }) => {
                    assert_eq!(position, pos, "input {text:?}")
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("1 - u^-2").to_string(), "1-u^-2");
        assert_eq!(p("-u + 2u^3 + 1").to_string(), "2u^3-u+1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("-u^-1").to_string(), "-u^-1");
        assert_eq!(p("1-u^-10").to_latex(), "1-u^{-10}");
        assert_eq!(p("u^3 - u").to_latex(), "u^3-u");
    }

    #[test]
    fn add_examples() {
        assert!((&p("1-u^-1") + &p("u^-1")).is_one());
        let x = p("3u^2-u^-5");
        assert_eq!(&x + &LaurentPoly::zero(), x);
        assert_eq!(p("1-u^-1") + p("1-u^-2"), p("2-u^-1-u^-2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("1-u^-1") * p("1-u^-2"), p("1-u^-1-u^-2+u^-3"));
        let x = p("3u^2-u^-5");
        assert_eq!(&x * &LaurentPoly::one(), x);
    }

    #[test]
    fn euler_class_values() {
        assert_eq!(LaurentPoly::euler_class(4).unwrap(), p("1-u^-4"));
        assert_eq!(LaurentPoly::euler_class(1).unwrap(), p("1-u^-1"));
        assert_eq!(LaurentPoly::euler_class(2).unwrap(), p("1-u^-2"));
        assert_eq!(LaurentPoly::euler_class(-3).unwrap(), p("1-u^3"));
        assert_eq!(LaurentPoly::euler_class(0), Err(LaurentError::ZeroWeight));
    }

    #[test]
    fn normalize_examples() {
        let n = p("1-u^-4").normalize().unwrap();
        assert_eq!(n.to_laurent(), p("u^4-1"));
        assert_eq!(n.shift(), 4);
        assert!(n.is_monic());

        let one = LaurentPoly::one().normalize().unwrap();
        assert_eq!(one.degree(), 0);
        assert_eq!(one.shift(), 0);
        assert!(one.into_monic().unwrap() == MonicPoly::one());

        let n = p("-u^3+2u").normalize().unwrap();
        assert_eq!(n.to_laurent(), p("u^2-2"));
        assert_eq!((n.sign(), n.shift()), (-1, -1));

        let n = p("3u^2+1").normalize().unwrap();
        assert!(!n.is_monic());
        assert_eq!(n.leading(), &BigInt::from(3));
        assert!(n.into_monic().is_none());

        assert_eq!(
            LaurentPoly::zero().normalize(),
            Err(LaurentError::ZeroPolynomial)
        );
    }

    #[test]
    fn divmod_examples() {
        let g = MonicPoly::from_coeffs([-1, 0, 0, 0, 1]).unwrap();
        let (q, r) = divmod_monic(&p("u^4"), &g).unwrap();
        assert!(q.is_one() && r.is_one());

        let g = MonicPoly::from_coeffs([1, -2, 1]).unwrap();
        let (q, r) = divmod_monic(&p("u^2"), &g).unwrap();
        assert!(q.is_one());
        assert_eq!(r, p("2u-1"));

        let (q, r) = divmod_monic(&p("5"), &MonicPoly::one()).unwrap();
        assert_eq!(q, p("5"));
        assert!(r.is_zero());

        assert_eq!(
            divmod_monic(&p("u^-1"), &g),
            Err(LaurentError::NegativeExponent(-1))
        );
    }

    #[test]
    fn monic_constructor_validates() {
        assert_eq!(
            MonicPoly::from_coeffs([1, 2]),
            Err(LaurentError::NotMonic(BigInt::from(2)))
        );
        assert_eq!(
            MonicPoly::from_coeffs([0, 0]),
            Err(LaurentError::ZeroPolynomial)
        );
        assert_eq!(MonicPoly::from_coeffs([3, 1, 0]).unwrap().degree(), 1);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let x = p("1-u^-1");
        assert_eq!(x.pow(3), &(&x * &x) * &x);
        assert!(x.pow(0).is_one());
    }
}
