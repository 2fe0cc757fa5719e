//! Finite Fourier (Laurent) polynomials on a rank-`r` torus with exact
//! rational coefficients.
//!
//! A term `c·e^{i⟨m, θ⟩}` is stored with its exponent `m` *doubled*: the
//! stored integer `2m_k` lets half-integral exponents such as the `α/2` in
//! the Weyl denominator live in integer arithmetic. A polynomial is
//! *integral* when every stored coordinate is even.
//!
//! Terms are kept in a `BTreeMap` keyed by the graded-lexicographic order on
//! exponents, so equality is structural and iteration order is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{bigint_from_value, bigint_to_value};
use crate::Rational;

const MAX_DIVISION_STEPS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("polynomial is not invariant under conjugation")]
    NotReal,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Exponent vector in doubled units.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    /// Wraps already-doubled coordinates.
    pub fn from_doubled(coords: Vec<i64>) -> Self {
        Exponent(coords)
    }

    /// Builds an exponent from true (integral) coordinates.
    pub fn integral(coords: &[i64]) -> Self {
        Exponent(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Exponent(vec![0; rank])
    }

    pub fn doubled(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    /// True coordinates as exact rationals (`stored / 2`).
    pub fn coords(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| Rational::new(c.into(), 2.into())).collect()
    }

    fn grade(&self) -> i64 {
        self.0.iter().sum()
    }

    fn abs_grade(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    /// `true` iff the first nonzero coordinate is positive.
    fn is_positive_representative(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(self.0.iter().map(|c| -c).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusPolynomial {
    rank: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl TorusPolynomial {
    pub fn zero(rank: usize) -> Self {
        TorusPolynomial { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::monomial(Exponent::zero(rank), c)
    }

    pub fn monomial(exponent: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exponent.rank());
        p.accumulate(exponent, c);
        p
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.rank() != rank {
                return Err(PolyError::RankMismatch { left: rank, right: e.rank() });
            }
            p.accumulate(e, c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next()
    }

    fn check_rank(&self, other: &Self) -> Result<(), PolyError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(PolyError::RankMismatch { left: self.rank, right: other.rank })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.accumulate(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        TorusPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Negates every exponent. Coefficients are real, so this is complex
    /// conjugation of the function on the torus.
    pub fn conj(&self) -> Self {
        TorusPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Average over the torus: the coefficient of the zero exponent.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Exponent::zero(self.rank))
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(Exponent::is_integral)
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Largest `|m_k|` over all terms and coordinates, rounded up to an
    /// integer in true units.
    pub fn band_limit(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|e| e.0.iter().map(|c| (c.abs() + 1) / 2))
            .max()
            .unwrap_or(0)
    }

    /// Applies `f` to every exponent, summing terms that collide.
    pub fn map_exponents<F>(&self, f: F) -> Self
    where
        F: Fn(&Exponent) -> Exponent,
    {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.accumulate(f(e), c.clone());
        }
        out
    }

    /// Evaluates `Σ c·exp(i⟨m, θ⟩)` with exponents in true (halved) units.
    pub fn eval_float(&self, theta: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let phase: f64 = e.0.iter().zip(theta).map(|(&m, &t)| 0.5 * m as f64 * t).sum();
                Complex64::from_polar(1.0, phase) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Repeatedly cancels the leading term of the remainder against the
    /// leading term of the divisor. The graded-lex order is translation
    /// invariant, so an exact quotient is recovered term by term from the top;
    /// the result is checked by multiplying back before it is returned.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_rank(divisor)?;
        let (d_lead, d_lead_c) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (d_low, _) = divisor.trailing_term().ok_or(PolyError::DivisionByZero)?;
        let Some((n_low, _)) = self.trailing_term() else {
            return Ok(Self::zero(self.rank));
        };
        let floor = n_low - d_low;
        let mut remainder = self.clone();
        let mut quotient = Self::zero(self.rank);
        let mut steps = 0;
        while let Some((e, c)) = remainder.leading_term() {
            let qe = e - d_lead;
            if qe < floor || steps >= MAX_DIVISION_STEPS {
                return Err(PolyError::InexactDivision);
            }
            steps += 1;
            let qc = c / d_lead_c;
            for (de, dc) in &divisor.terms {
                remainder.accumulate(&qe + de, -(&qc * dc));
            }
            quotient.accumulate(qe, qc);
        }
        if &quotient * divisor != *self {
            return Err(PolyError::InexactDivision);
        }
        Ok(quotient)
    }

    /// Renders a real polynomial as a sum of cosines.
    ///
    /// Pairs `c·e^{iφ} + c·e^{-iφ}` into `2c·cos(φ)`, ordered by absolute
    /// degree then descending lexicographic order of the representative whose
    /// first nonzero coordinate is positive; the constant comes last.
    pub fn render_cosine(&self) -> Result<String, PolyError> {
        if !self.is_real() {
            return Err(PolyError::NotReal);
        }
        let mut reps: Vec<(&Exponent, &Rational)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.is_positive_representative())
            .collect();
        reps.sort_by(|(a, _), (b, _)| a.abs_grade().cmp(&b.abs_grade()).then_with(|| b.0.cmp(&a.0)));

        let mut pieces: Vec<(bool, String)> = reps
            .into_iter()
            .map(|(e, c)| {
                let amp = c * Rational::from_integer(2.into());
                let mag = match amp.abs() {
                    m if m.is_one() => String::new(),
                    m if m.is_integer() => m.to_string(),
                    m => format!("({m})"),
                };
                (amp.is_negative(), format!("{mag}cos({})", render_argument(e)))
            })
            .collect();
        let c0 = self.constant_term();
        if !c0.is_zero() {
            pieces.push((c0.is_negative(), c0.abs().to_string()));
        }
        if pieces.is_empty() {
            return Ok("0".to_string());
        }
        let mut out = String::new();
        for (i, (neg, body)) in pieces.into_iter().enumerate() {
            match (i, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        Ok(out)
    }

    /// Parses the output of [`render_cosine`](Self::render_cosine). Accepts
    /// `θ`, `θk` or `thetak` for the variables and optional `*` between a
    /// coefficient and what follows it.
    pub fn parse_cosine(text: &str, rank: usize) -> Result<Self, PolyError> {
        CosineParser { chars: text.chars().collect(), pos: 0, rank }.parse()
    }

    /// `{"rank": r, "terms": [[[doubled coords...], num, den], ...]}`
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e.0, bigint_to_value(c.numer()), bigint_to_value(c.denom())]))
            .collect();
        json!({ "rank": self.rank, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, PolyError> {
        let bad = |m: &str| PolyError::Json(m.to_string());
        let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(|| bad("missing rank"))? as usize;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("term must be [coords, num, den]"))?;
            let coords = t[0]
                .as_array()
                .ok_or_else(|| bad("coords must be an array"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("coords must be integers")))
                .collect::<Result<Vec<_>, _>>()?;
            let num = bigint_from_value(&t[1]).ok_or_else(|| bad("bad numerator"))?;
            let den = bigint_from_value(&t[2]).ok_or_else(|| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            parsed.push((Exponent(coords), Rational::new(num, den)));
        }
        Self::from_terms(rank, parsed)
    }
}

fn variable_name(rank: usize, k: usize) -> String {
    if rank == 1 {
        "θ".to_string()
    } else {
        format!("θ{}", k + 1)
    }
}

fn render_argument(e: &Exponent) -> String {
    let rank = e.rank();
    let mut out = String::new();
    for (k, &m) in e.0.iter().enumerate() {
        if m == 0 {
            continue;
        }
        if m < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let (whole, half) = (m.abs() / 2, m.abs() % 2 == 1);
        let mult = if half { m.abs() } else { whole };
        if mult != 1 {
            out.push_str(&mult.to_string());
        }
        out.push_str(&variable_name(rank, k));
        if half {
            out.push_str("/2");
        }
    }
    out
}

struct CosineParser {
    chars: Vec<char>,
    pos: usize,
    rank: usize,
}

impl CosineParser {
    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        if self.eat('+') {
            Some(false)
        } else if self.eat('-') || self.eat('−') {
            Some(true)
        } else {
            None
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn coefficient(&mut self) -> Result<Option<Rational>, PolyError> {
        if self.eat('(') {
            self.skip_ws();
            let Some(n) = self.integer() else { return self.err("expected numerator") };
            self.skip_ws();
            let d = if self.eat('/') {
                self.skip_ws();
                match self.integer() {
                    Some(d) if !d.is_zero() => d,
                    _ => return self.err("expected nonzero denominator"),
                }
            } else {
                BigInt::one()
            };
            self.skip_ws();
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            return Ok(Some(Rational::new(n, d)));
        }
        let Some(n) = self.integer() else { return Ok(None) };
        // `3/2` is a fraction, `3θ1/2` is not reached here
        let save = self.pos;
        if self.eat('/') {
            if let Some(d) = self.integer().filter(|d| !d.is_zero()) {
                return Ok(Some(Rational::new(n, d)));
            }
            self.pos = save;
        }
        Ok(Some(Rational::from_integer(n)))
    }

    fn variable(&mut self) -> Result<Option<usize>, PolyError> {
        if !(self.eat('θ') || self.eat_str("theta")) {
            return Ok(None);
        }
        let idx = match self.integer() {
            Some(i) => match i.to_usize() {
                Some(i) if i >= 1 => i - 1,
                _ => return self.err("variable index must be at least 1"),
            },
            None if self.rank == 1 => 0,
            None => return self.err("variable index required for rank > 1"),
        };
        if idx >= self.rank {
            return self.err("variable index exceeds rank");
        }
        Ok(Some(idx))
    }

    fn argument(&mut self) -> Result<Exponent, PolyError> {
        let mut coords = vec![0i64; self.rank];
        let mut first = true;
        loop {
            let neg = match self.sign() {
                Some(neg) => neg,
                None if first => false,
                None => break,
            };
            self.skip_ws();
            let mult = self.integer().map_or(Some(1), |m| m.to_i64());
            let Some(mult) = mult else { return self.err("multiplier too large") };
            self.eat('*');
            let Some(k) = self.variable()? else { return self.err("expected variable") };
            let doubled = if self.eat('/') {
                match self.integer().and_then(|d| d.to_i64()) {
                    Some(2) => mult,
                    Some(1) => 2 * mult,
                    _ => return self.err("only /2 is supported in exponents"),
                }
            } else {
                2 * mult
            };
            coords[k] += if neg { -doubled } else { doubled };
            first = false;
            self.skip_ws();
            if self.peek() == Some(')') {
                break;
            }
        }
        Ok(Exponent(coords))
    }

    fn parse(mut self) -> Result<TorusPolynomial, PolyError> {
        let mut poly = TorusPolynomial::zero(self.rank);
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.chars.len() {
                if first {
                    return self.err("empty input");
                }
                break;
            }
            let neg = match self.sign() {
                Some(neg) => neg,
                None if first => false,
                None => return self.err("expected '+' or '-'"),
            };
            self.skip_ws();
            let coef = self.coefficient()?;
            self.skip_ws();
            self.eat('*');
            let is_cos = self.eat_str("cos");
            let mut c = match (coef, is_cos) {
                (Some(c), _) => c,
                (None, true) => Rational::one(),
                (None, false) => return self.err("expected coefficient or cos(...)"),
            };
            if neg {
                c = -c;
            }
            if is_cos {
                self.skip_ws();
                if !self.eat('(') {
                    return self.err("expected '('");
                }
                let e = self.argument()?;
                self.skip_ws();
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                if e.is_zero() {
                    poly.accumulate(e, c);
                } else {
                    let half = c / Rational::from_integer(2.into());
                    poly.accumulate(-&e, half.clone());
                    poly.accumulate(e, half);
                }
            } else {
                poly.accumulate(Exponent::zero(self.rank), c);
            }
            first = false;
        }
        Ok(poly)
    }
}

impl fmt::Display for TorusPolynomial {
    /// Cosine form when real, otherwise `c·e^(i·(...))` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(s) = self.render_cosine() {
            return f.write_str(&s);
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})e^(i({}))", render_argument(e))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &TorusPolynomial {
    type Output = TorusPolynomial;
    /// Panics on rank mismatch; use [`TorusPolynomial::checked_add`] otherwise.
    fn add(self, rhs: &TorusPolynomial) -> TorusPolynomial {
        self.checked_add(rhs).expect("rank mismatch in polynomial addition")
    }
}

impl Sub for &TorusPolynomial {
    type Output = TorusPolynomial;
    fn sub(self, rhs: &TorusPolynomial) -> TorusPolynomial {
        self.checked_sub(rhs).expect("rank mismatch in polynomial subtraction")
    }
}

impl Mul for &TorusPolynomial {
    type Output = TorusPolynomial;
    fn mul(self, rhs: &TorusPolynomial) -> TorusPolynomial {
        self.checked_mul(rhs).expect("rank mismatch in polynomial multiplication")
    }
}

impl Neg for &TorusPolynomial {
    type Output = TorusPolynomial;
    fn neg(self) -> TorusPolynomial {
        self.scale(&-Rational::one())
    }
}

/// Integer check used by callers that need an exact integer from a rational.
pub(crate) fn rational_to_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().div_floor(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};
    use proptest::prelude::*;

    fn e(c: &[i64]) -> Exponent {
        Exponent::integral(c)
    }

    fn mono(c: &[i64], k: i64) -> TorusPolynomial {
        TorusPolynomial::monomial(e(c), int(k))
    }

    /// 1 + x1 + x2 + (x1x2)^-1 and conjugates, written out by hand.
    fn chi7() -> TorusPolynomial {
        let exps: [[i64; 2]; 7] = [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]];
        TorusPolynomial::from_terms(2, exps.iter().map(|x| (e(x), int(1)))).unwrap()
    }

    #[test]
    fn add_identity_and_inverse() {
        let p = chi7();
        assert_eq!(&p + &TorusPolynomial::zero(2), p);
        assert!((&p + &-&p).is_zero());
        let two_cos = &mono(&[1], 1) + &mono(&[-1], 1);
        assert_eq!(two_cos.len(), 2);
        assert_eq!(two_cos.render_cosine().unwrap(), "2cos(θ)");
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let err = TorusPolynomial::one(1).checked_add(&TorusPolynomial::one(2)).unwrap_err();
        assert_eq!(err, PolyError::RankMismatch { left: 1, right: 2 });
        assert!(TorusPolynomial::one(1).checked_mul(&TorusPolynomial::one(2)).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let a = &mono(&[1], 1) - &mono(&[-1], 1);
        let b = &mono(&[1], 1) + &mono(&[-1], 1);
        assert_eq!(&a * &b, &mono(&[2], 1) - &mono(&[-2], 1));
        assert_eq!(&a * &TorusPolynomial::one(1), a);
    }

    #[test]
    fn chi_squared_matches_brute_force() {
        // brute force: the 7x7 table of exponent sums
        let exps: [[i64; 2]; 7] = [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]];
        let zero_hits = exps
            .iter()
            .flat_map(|a| exps.iter().map(move |b| [a[0] + b[0], a[1] + b[1]]))
            .filter(|s| *s == [0, 0])
            .count();
        assert_eq!(zero_hits, 7);
        let sq = &chi7() * &chi7();
        assert_eq!(sq.constant_term(), int(7));
        assert_eq!(sq.coefficient_sum(), int(49));
    }

    #[test]
    fn conjugation() {
        assert_eq!(TorusPolynomial::constant(2, int(5)).conj(), TorusPolynomial::constant(2, int(5)));
        assert_eq!(mono(&[1], 1).conj(), mono(&[-1], 1));
        assert_eq!(chi7().conj(), chi7());
    }

    #[test]
    fn constant_terms() {
        assert_eq!(chi7().constant_term(), int(1));
        assert_eq!(mono(&[1, 0], 1).constant_term(), int(0));
    }

    #[test]
    fn eval_float_basics() {
        assert!((chi7().eval_float(&[0.0, 0.0]) - Complex64::new(7.0, 0.0)).norm() < 1e-14);
        let c = TorusPolynomial::constant(2, int(5));
        assert!((c.eval_float(&[0.3, -1.2]) - Complex64::new(5.0, 0.0)).norm() < 1e-14);
        // half-angle convention: e^{iθ/2} at θ = π is i
        let half = TorusPolynomial::monomial(Exponent::from_doubled(vec![1]), int(1));
        assert!((half.eval_float(&[std::f64::consts::PI]) - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn render_chi7() {
        assert_eq!(chi7().render_cosine().unwrap(), "2cos(θ1) + 2cos(θ2) + 2cos(θ1+θ2) + 1");
        assert_eq!(TorusPolynomial::zero(2).render_cosine().unwrap(), "0");
        assert_eq!(mono(&[1, 0], 1).render_cosine(), Err(PolyError::NotReal));
    }

    #[test]
    fn render_fractions_and_halves() {
        let p = TorusPolynomial::from_terms(
            2,
            [
                (Exponent::from_doubled(vec![1, -4]), rat(3, 4)),
                (Exponent::from_doubled(vec![-1, 4]), rat(3, 4)),
                (Exponent::zero(2), rat(-1, 3)),
            ],
        )
        .unwrap();
        let s = p.render_cosine().unwrap();
        assert_eq!(s, "(3/2)cos(θ1/2-2θ2) - 1/3");
        assert_eq!(TorusPolynomial::parse_cosine(&s, 2).unwrap(), p);
    }

    #[test]
    fn parse_accepts_variants() {
        let p = TorusPolynomial::parse_cosine("1 + 2*cos(theta1) + 2 cos(θ2)+2cos(θ1 + θ2)", 2).unwrap();
        assert_eq!(p, chi7());
        assert!(TorusPolynomial::parse_cosine("", 2).is_err());
        assert!(TorusPolynomial::parse_cosine("2cos(θ3)", 2).is_err());
        assert!(TorusPolynomial::parse_cosine("2cos(θ1", 2).is_err());
        assert_eq!(TorusPolynomial::parse_cosine("-3cos(0θ1)", 2).unwrap(), TorusPolynomial::constant(2, int(-3)));
    }

    #[test]
    fn division_exact_and_inexact() {
        let a = &mono(&[1], 1) - &mono(&[-1], 1);
        let b = &mono(&[1], 1) + &mono(&[-1], 1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(b.div_exact(&a), Err(PolyError::InexactDivision));
        assert_eq!(a.div_exact(&TorusPolynomial::zero(1)), Err(PolyError::DivisionByZero));
        assert!(TorusPolynomial::zero(1).div_exact(&a).unwrap().is_zero());
    }

    #[test]
    fn json_shape() {
        let p = mono(&[1, -1], 3);
        assert_eq!(p.to_json(), json!({"rank": 2, "terms": [[[2, -2], 3, 1]]}));
        assert!(TorusPolynomial::from_json(&json!({"rank": 2, "terms": [[[2], 3, 1]]})).is_err());
        assert!(TorusPolynomial::from_json(&json!({"rank": 2, "terms": [[[2, 0], 3, 0]]})).is_err());
    }

    #[test]
    fn band_limit_rounds_half_exponents_up() {
        assert_eq!(chi7().band_limit(), 1);
        assert_eq!(TorusPolynomial::monomial(Exponent::from_doubled(vec![3, 0]), int(1)).band_limit(), 2);
        assert_eq!(TorusPolynomial::zero(2).band_limit(), 0);
    }

    fn arb_poly() -> impl Strategy<Value = TorusPolynomial> {
        prop::collection::vec(((-4i64..=4, -4i64..=4), -5i64..=5, 1i64..=3), 0..=8).prop_map(|ts| {
            TorusPolynomial::from_terms(2, ts.into_iter().map(|((a, b), n, d)| (e(&[a, b]), rat(n, d)))).unwrap()
        })
    }

    fn arb_real_poly() -> impl Strategy<Value = TorusPolynomial> {
        arb_poly().prop_map(|p| &p + &p.conj())
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn conj_involution_and_norm(p in arb_poly()) {
            prop_assert_eq!(p.conj().conj(), p.clone());
            let squares: Rational = p.terms().map(|(_, c)| c * c).sum();
            let norm = (&p * &p.conj()).constant_term();
            prop_assert!(norm >= Rational::zero());
            prop_assert_eq!(norm, squares);
        }

        #[test]
        fn division_recovers_factor(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
        }

        #[test]
        fn cosine_roundtrip(p in arb_real_poly()) {
            let s = p.render_cosine().unwrap();
            prop_assert_eq!(TorusPolynomial::parse_cosine(&s, 2).unwrap(), p);
        }

        #[test]
        fn json_roundtrip(p in arb_poly()) {
            prop_assert_eq!(TorusPolynomial::from_json(&p.to_json()).unwrap(), p);
        }

        #[test]
        fn rectangle_rule_is_exact_on_band_limited(p in arb_poly()) {
            // 64x64 grid, exponents bounded by 4 < 32
            let n = 64;
            let step = 2.0 * std::f64::consts::PI / n as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    acc += p.eval_float(&[i as f64 * step, j as f64 * step]);
                }
            }
            acc /= (n * n) as f64;
            let exact = p.constant_term().to_f64().unwrap();
            prop_assert!((acc - Complex64::new(exact, 0.0)).norm() < 1e-9);
        }
    }
}
