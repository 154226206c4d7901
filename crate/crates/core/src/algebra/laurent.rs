use super::serde_num::JsonInt;
use super::{AlgebraError, Int};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exponent pair of `t^t * s^s`. The `s` exponent is unsigned: `s` is never
/// inverted. Ordering is lex on `(t, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub t: i64,
    pub s: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, s: 0 };

    pub fn new(t: i64, s: u32) -> Self {
        Monomial { t, s }
    }

    /// `a + 2b`, the weight used by the m-degree.
    pub fn m_weight(&self) -> i64 {
        self.t + 2 * i64::from(self.s)
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial { t: self.t + other.t, s: self.s + other.s }
    }
}

/// Element of `Z[t, t^-1, s]`, stored sparsely with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Int>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Int::one())
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(t: i64, s: u32, c: impl Into<Int>) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(Monomial::new(t, s), c.into());
        p
    }

    pub fn t_pow(a: i64) -> Self {
        Self::monomial(a, 0, 1)
    }

    pub fn s_pow(b: u32) -> Self {
        Self::monomial(0, b, 1)
    }

    /// `L = t^2`, the class of the affine line.
    pub fn lefschetz() -> Self {
        Self::t_pow(2)
    }

    /// `1 + t^2 + ... + t^{2(r-1)}`.
    pub fn geometric_t2(r: u32) -> Self {
        (0..i64::from(r)).map(|k| Self::t_pow(2 * k)).fold(Self::zero(), |a, b| a + b)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, u32), C)>,
        C: Into<Int>,
    {
        let mut p = LaurentPoly::zero();
        for ((t, s), c) in terms {
            p.add_term(Monomial::new(t, s), c.into());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Int)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, t: i64, s: u32) -> Int {
        self.terms.get(&Monomial::new(t, s)).cloned().unwrap_or_default()
    }

    /// The largest term in lex order, if any.
    pub fn leading(&self) -> Option<(&Monomial, &Int)> {
        self.terms.iter().next_back()
    }

    pub fn is_s_free(&self) -> bool {
        self.terms.keys().all(|m| m.s == 0)
    }

    pub fn max_s(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.s).max()
    }

    pub fn min_t(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.t).min()
    }

    pub fn max_t(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.t).max()
    }

    pub fn min_s(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.s).min()
    }

    /// Constant polynomial value, if this is one.
    pub fn as_constant(&self) -> Option<Int> {
        match self.terms.len() {
            0 => Some(Int::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// Multiply by `t^k s^j`.
    pub fn shift(&self, k: i64, j: u32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, v)| (Monomial::new(m.t + k, m.s + j), v.clone())).collect() }
    }

    /// Divide by `s^j`; `None` if some term has a smaller `s` power.
    pub fn unshift_s(&self, j: u32) -> Option<Self> {
        if self.terms.keys().any(|m| m.s < j) {
            return None;
        }
        Some(LaurentPoly { terms: self.terms.iter().map(|(m, v)| (Monomial::new(m.t, m.s - j), v.clone())).collect() })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `max { a + 2b : q^{a,b} != 0 }`.
    pub fn m_degree(&self) -> Result<i64, AlgebraError> {
        self.terms.keys().map(Monomial::m_weight).max().ok_or(AlgebraError::ZeroPolynomial)
    }

    /// `t^{-m/2} q`, defined when the m-degree is even.
    pub fn flat(&self) -> Result<Self, AlgebraError> {
        let m = self.m_degree()?;
        if m.rem_euclid(2) != 0 {
            return Err(AlgebraError::OddMDegree(m));
        }
        Ok(self.shift(-m / 2, 0))
    }

    /// Gcd of all coefficients, nonnegative. Zero for the zero polynomial.
    pub fn content(&self) -> Int {
        use num_integer::Integer;
        self.terms.values().fold(Int::zero(), |g, c| g.gcd(c))
    }

    /// Coefficients of `s^j` as polynomials in `t` alone.
    pub fn s_slices(&self) -> BTreeMap<u32, LaurentPoly> {
        let mut out: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.s).or_default().add_term(Monomial::new(m.t, 0), c.clone());
        }
        out
    }

    /// Ordering used for printing: descending in `a + 2b`, then descending lex.
    fn print_order(a: &Monomial, b: &Monomial) -> Ordering {
        b.m_weight().cmp(&a.m_weight()).then_with(|| b.cmp(a))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Monomial, &Int)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| LaurentPoly::print_order(a.0, b.0));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            match m.t {
                0 => {}
                1 => factors.push("t".to_string()),
                a => factors.push(format!("t^{a}")),
            }
            match m.s {
                0 => {}
                1 => factors.push("s".to_string()),
                b => factors.push(format!("s^{b}")),
            }
            let abs = c.abs();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;

    /// Accepts sums of terms such as `s^2 + t^2`, `3*t^-2*s`, `st^2 - 1`.
    fn from_str(input: &str) -> Result<Self, AlgebraError> {
        Parser { src: input, chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }.poly()
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> AlgebraError {
        AlgebraError::Parse { input: self.src.to_string(), reason: reason.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self, allow_sign: bool) -> Result<Int, AlgebraError> {
        let start = self.pos;
        if allow_sign && matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.err("expected an integer"))
    }

    fn poly(mut self) -> Result<LaurentPoly, AlgebraError> {
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut acc = LaurentPoly::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Int::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Int::one()
                }
                _ if first => Int::one(),
                _ => return Err(self.err("expected `+` or `-` between terms")),
            };
            first = false;
            let term = self.term()?;
            acc += &term.scale(&sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let mut coeff = Int::one();
        let mut mono = Monomial::ONE;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.integer(false)?;
                }
                Some('t') => {
                    self.pos += 1;
                    mono.t += if self.peek() == Some('^') {
                        self.pos += 1;
                        let e = self.integer(true)?;
                        i64::try_from(e).map_err(|_| self.err("t exponent out of range"))?
                    } else {
                        1
                    };
                }
                Some('s') => {
                    self.pos += 1;
                    mono.s += if self.peek() == Some('^') {
                        self.pos += 1;
                        let e = self.integer(false)?;
                        u32::try_from(e).map_err(|_| self.err("s exponent out of range"))?
                    } else {
                        1
                    };
                }
                _ => return Err(self.err("expected a coefficient, `t` or `s`")),
            }
            match self.peek() {
                Some('*') => self.pos += 1,
                Some('t') | Some('s') => {}
                Some(c) if c.is_ascii_digit() => {}
                _ => break,
            }
        }
        let mut p = LaurentPoly::zero();
        p.add_term(mono, coeff);
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<(i64, u32, String)> = self.terms.iter().map(|(m, c)| (m.t, m.s, c.to_string())).collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples: Vec<(i64, u32, JsonInt)> = Vec::deserialize(d)?;
        Ok(LaurentPoly::from_terms(triples.into_iter().map(|(a, b, c)| ((a, b), c.0))))
    }
}
