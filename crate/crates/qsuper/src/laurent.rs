//! Laurent polynomials in `q` with arbitrary-precision integer coefficients.
//!
//! Exponents are stored as `i32`. Every operation checks exponent arithmetic
//! and panics on overflow; the computations in this crate stay far below
//! `|e| = 10_000`, so the bound is never approached in practice.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Largest exponent magnitude accepted by the parser.
pub const MAX_EXPONENT: i32 = 1 << 24;

/// An element of `Z[q, q^-1]` in canonical form (no zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `c * q^e`.
    pub fn monomial<C: Into<BigInt>>(c: C, e: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    pub fn from_int<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `+1` or `-1`.
    pub fn sign(negative: bool) -> Self {
        Self::from_int(if negative { -1 } else { 1 })
    }

    /// `q - q^-1`.
    pub fn q_minus_qinv() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(1, BigInt::one());
        terms.insert(-1, -BigInt::one());
        Laurent { terms }
    }

    /// `q_a = q^{(-1)^{[a]}}` raised to `power`.
    pub fn q_parity(odd: bool, power: i32) -> Self {
        Self::q_pow(if odd { -power } else { power })
    }

    /// Build from `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut out = Laurent::zero();
        for (e, c) in pairs {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True for `c * q^0`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// True for the units `±q^e` of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.abs().is_one())
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
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

    /// Substitution `q := 1`.
    pub fn eval_q1(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitution `q := q^-1`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (neg_exp(e), c.clone())).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (add_exp(e, k), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Exact quotient `self / d` in `Z[q, q^-1]`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if d.num_terms() == 1 {
            let (&e, c) = d.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            for (&f, x) in &self.terms {
                let (quo, rem) = x.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                terms.insert(sub_exp(f, e), quo);
            }
            return Some(Laurent { terms });
        }
        // Long division from the top degree down; the remainder must vanish
        // before its degree drops below the lowest term of the dividend.
        let (d_top, d_lead) = d.terms.iter().next_back().map(|(&e, c)| (e, c.clone())).unwrap();
        let d_low = d.min_exp().unwrap();
        let stop = sub_exp(self.min_exp().unwrap(), d_low);
        let mut rem = self.clone();
        let mut quo = Laurent::zero();
        while let Some((&top, lead)) = rem.terms.iter().next_back() {
            let qe = sub_exp(top, d_top);
            if qe < stop {
                return None;
            }
            let (qc, r) = lead.div_rem(&d_lead);
            if !r.is_zero() {
                return None;
            }
            for (&e, c) in &d.terms {
                rem.add_term(add_exp(e, qe), -(c * &qc));
            }
            quo.add_term(qe, qc);
        }
        Some(quo)
    }

    /// Product without consuming the operands.
    pub fn mul_ref(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        if other.num_terms() == 1 {
            let (&e, c) = other.terms.iter().next().unwrap();
            return Laurent {
                terms: self.terms.iter().map(|(&f, x)| (add_exp(f, e), x * c)).collect(),
            };
        }
        if self.num_terms() == 1 {
            return other.mul_ref(self);
        }
        let mut out = Laurent::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
        out
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Laurent, b: &Laurent) {
        for (&e1, c1) in &a.terms {
            for (&e2, c2) in &b.terms {
                self.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
    }

    /// `x^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Laurent {
        let mut out = Laurent::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    /// Whether the printed form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

fn add_exp(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("Laurent exponent overflow")
}

fn sub_exp(a: i32, b: i32) -> i32 {
    a.checked_sub(b).expect("Laurent exponent overflow")
}

fn neg_exp(a: i32) -> i32 {
    a.checked_neg().expect("Laurent exponent overflow")
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::from_int(c)
    }
}

impl From<BigInt> for Laurent {
    fn from(c: BigInt) -> Self {
        Laurent::from_int(c)
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(mut self, rhs: Laurent) -> Laurent {
        self -= &rhs;
        self
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.mul_ref(rhs)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        self.mul_ref(&rhs)
    }
}

impl fmt::Display for Laurent {
    /// Highest power first, e.g. `q^2 - 2 + q^-2`, `-3*q`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl FromStr for Laurent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = LaurentParser { src: s, pos: 0 };
        let v = p.parse_sum()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(ParseError::new(p.pos, "unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Parser for sums of `c*q^e` terms. Shared with the element parser.
pub(crate) struct LaurentParser<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> LaurentParser<'a> {
    pub fn skip_ws(&mut self) {
        while let Some(ch) = self.peek() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    pub fn parse_sum(&mut self) -> Result<Laurent, ParseError> {
        let mut acc = Laurent::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            self.skip_ws();
            let start = self.pos;
            let term = self.parse_term()?;
            if term.is_none() {
                return Err(ParseError::new(start, "expected a term like `3*q^-2`"));
            }
            let (e, c) = term.unwrap();
            acc.add_term(e, if neg { -c } else { c });
            first = false;
        }
        if first {
            return Err(ParseError::new(self.pos, "empty Laurent polynomial"));
        }
        Ok(acc)
    }

    /// One unsigned term: `c`, `q`, `q^e`, `c*q`, `c*q^e`.
    pub fn parse_term(&mut self) -> Result<Option<(i32, BigInt)>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let coeff = match self.digits() {
            Some(d) => {
                let c: BigInt = d.parse().map_err(|_| ParseError::new(start, "bad integer"))?;
                let save = self.pos;
                if self.eat('*') {
                    self.skip_ws();
                    if self.peek() != Some('q') {
                        self.pos = save;
                        return Ok(Some((0, c)));
                    }
                } else {
                    return Ok(Some((0, c)));
                }
                c
            }
            None => BigInt::one(),
        };
        if self.peek() != Some('q') {
            if self.pos == start {
                return Ok(None);
            }
            return Err(ParseError::new(self.pos, "expected `q`"));
        }
        self.pos += 1;
        let mut e: i64 = 1;
        if self.eat('^') {
            self.skip_ws();
            let neg = self.eat('-');
            self.skip_ws();
            let at = self.pos;
            let d = self.digits().ok_or_else(|| ParseError::new(at, "expected exponent"))?;
            let v: i64 = d.parse().map_err(|_| ParseError::new(at, "exponent out of range"))?;
            if v > MAX_EXPONENT as i64 {
                return Err(ParseError::new(at, "exponent out of range"));
            }
            e = if neg { -v } else { v };
        }
        Ok(Some((e as i32, coeff)))
    }
}
