use super::{AlgebraError, Int, LaurentPoly, Monomial, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of `Q(t, s)` stored as a quotient of integer Laurent polynomials.
///
/// Normal form: the denominator has minimal `t` power zero, numerator and
/// denominator share no power of `s`, no integer content, and the lex-leading
/// coefficient of the denominator is positive. Common factors are cancelled
/// when the denominator divides the numerator exactly, and in full whenever
/// the denominator is free of `s` (gcd of univariate contractions). Equality
/// is decided by cross-multiplication, so a missed cancellation never changes
/// semantics.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        normalize(num, den)
    }

    pub fn zero() -> Self {
        RationalFn { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RationalFn { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_rat(r: &Rat) -> Self {
        normalize(LaurentPoly::constant(r.numer().clone()), LaurentPoly::constant(r.denom().clone()))
            .expect("reduced rationals have nonzero denominators")
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial, if it is one.
    pub fn as_polynomial(&self) -> Option<LaurentPoly> {
        if self.den.len() != 1 {
            return None;
        }
        let (m, c) = self.den.leading().expect("nonzero denominator");
        if m.s != 0 {
            return None;
        }
        let mut out = LaurentPoly::zero();
        for (mn, v) in self.num.terms() {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.add_term(Monomial::new(mn.t - m.t, mn.s), q);
        }
        Some(out)
    }

    pub fn try_into_polynomial(&self) -> Result<LaurentPoly, AlgebraError> {
        self.as_polynomial().ok_or(AlgebraError::NotPolynomial)
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self * &RationalFn::from_rat(r)
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn { num: p, den: LaurentPoly::one() }
    }
}

impl From<&LaurentPoly> for RationalFn {
    fn from(p: &LaurentPoly) -> Self {
        p.clone().into()
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return normalize(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        normalize(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        &self + &rhs
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Sub for RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: RationalFn) -> RationalFn {
        &self - &rhs
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        normalize(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Mul for RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: RationalFn) -> RationalFn {
        &self * &rhs
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_polynomial() {
            return write!(f, "{p}");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalFnDoc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalFnDoc { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = RationalFnDoc::deserialize(d)?;
        RationalFn::new(doc.num, doc.den).map_err(serde::de::Error::custom)
    }
}

fn normalize(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFn, AlgebraError> {
    if den.is_zero() {
        return Err(AlgebraError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFn::zero());
    }
    let shift = den.min_t().expect("nonzero");
    let mut num = num.shift(-shift, 0);
    let mut den = den.shift(-shift, 0);
    let common_s = num.min_s().unwrap().min(den.min_s().unwrap());
    if common_s > 0 {
        num = num.unshift_s(common_s).unwrap();
        den = den.unshift_s(common_s).unwrap();
    }

    if den.len() > 1 {
        if let Some(q) = exact_quotient(&num, &den) {
            let (n, d) = clear_denominators(&q, &QPoly::one());
            return Ok(finish(n, d));
        }
        if den.is_s_free() {
            let mut g = UPoly::from_t_poly(&den);
            for slice in num.s_slices().values() {
                if g.degree() == 0 {
                    break;
                }
                g = g.gcd(&UPoly::from_t_poly(slice));
            }
            if g.degree() > 0 {
                let gq = g.to_qpoly();
                let nq = exact_quotient_q(&QPoly::from_int(&num), &gq).expect("gcd divides numerator");
                let dq = exact_quotient_q(&QPoly::from_int(&den), &gq).expect("gcd divides denominator");
                let (n, d) = clear_denominators(&nq, &dq);
                let shift = d.min_t().unwrap();
                return Ok(finish(n.shift(-shift, 0), d.shift(-shift, 0)));
            }
        }
    }
    Ok(finish(num, den))
}

fn finish(mut num: LaurentPoly, mut den: LaurentPoly) -> RationalFn {
    let g = num.content().gcd(&den.content());
    if !g.is_one() && !g.is_zero() {
        num = divide_content(&num, &g);
        den = divide_content(&den, &g);
    }
    if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
        num = -num;
        den = -den;
    }
    RationalFn { num, den }
}

fn divide_content(p: &LaurentPoly, g: &Int) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(m, c)| ((m.t, m.s), c / g)))
}

/// Sparse polynomial with rational coefficients, used only for division.
#[derive(Debug, Clone, Default)]
struct QPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl QPoly {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::ONE, Rat::one());
        QPoly { terms }
    }

    fn from_int(p: &LaurentPoly) -> Self {
        QPoly { terms: p.terms().map(|(m, c)| (*m, Rat::from_integer(c.clone()))).collect() }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Leading term for the lex order on `(s, t)`.
    fn leading_st(&self) -> Option<(Monomial, Rat)> {
        self.terms.iter().max_by(|a, b| (a.0.s, a.0.t).cmp(&(b.0.s, b.0.t))).map(|(m, c)| (*m, c.clone()))
    }

    fn min_t(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.t).min()
    }
}

fn exact_quotient(num: &LaurentPoly, den: &LaurentPoly) -> Option<QPoly> {
    exact_quotient_q(&QPoly::from_int(num), &QPoly::from_int(den))
}

/// Exact division in `Q[t, t^-1, s]`, `None` when the division leaves a remainder.
///
/// Both sides are shifted to have minimal `t` power zero; an exact quotient
/// of such polynomials is itself a polynomial, so ordinary division with the
/// lex order on `(s, t)` terminates.
fn exact_quotient_q(num: &QPoly, den: &QPoly) -> Option<QPoly> {
    let nshift = num.min_t()?;
    let dshift = den.min_t()?;
    let mut rem =
        QPoly { terms: num.terms.iter().map(|(m, c)| (Monomial::new(m.t - nshift, m.s), c.clone())).collect() };
    let d = QPoly { terms: den.terms.iter().map(|(m, c)| (Monomial::new(m.t - dshift, m.s), c.clone())).collect() };
    let (lm, lc) = d.leading_st()?;
    let mut quot = QPoly::default();
    while let Some((rm, rc)) = rem.leading_st() {
        if rm.s < lm.s || rm.t < lm.t {
            return None;
        }
        let qm = Monomial::new(rm.t - lm.t, rm.s - lm.s);
        let qc = &rc / &lc;
        for (m, c) in &d.terms {
            rem.add_term(Monomial::new(m.t + qm.t, m.s + qm.s), -(c * &qc));
        }
        quot.add_term(qm, qc);
    }
    let shift = nshift - dshift;
    Some(QPoly { terms: quot.terms.into_iter().map(|(m, c)| (Monomial::new(m.t + shift, m.s), c)).collect() })
}

/// Scale `n / d` by the lcm of all coefficient denominators.
fn clear_denominators(n: &QPoly, d: &QPoly) -> (LaurentPoly, LaurentPoly) {
    let l = n.terms.values().chain(d.terms.values()).fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let conv = |p: &QPoly| {
        LaurentPoly::from_terms(
            p.terms.iter().map(|(m, c)| ((m.t, m.s), (c * Rat::from_integer(l.clone())).to_integer())),
        )
    };
    (conv(n), conv(d))
}

/// Dense univariate polynomial in `t` over `Q`, coefficients ascending.
#[derive(Debug, Clone)]
struct UPoly(Vec<Rat>);

impl UPoly {
    fn from_t_poly(p: &LaurentPoly) -> Self {
        let lo = p.min_t().unwrap_or(0);
        let hi = p.max_t().unwrap_or(0);
        let mut c = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (m, v) in p.terms() {
            c[(m.t - lo) as usize] = Rat::from_integer(v.clone());
        }
        UPoly(c).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().unwrap().is_zero() {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn rem(&self, d: &UPoly) -> UPoly {
        let mut r = self.0.clone();
        let dl = d.0.last().unwrap().clone();
        while r.len() >= d.0.len() && !(r.len() == 1 && r[0].is_zero()) {
            let q = r.last().unwrap() / &dl;
            let off = r.len() - d.0.len();
            for (i, c) in d.0.iter().enumerate() {
                r[off + i] -= c * &q;
            }
            r.pop();
            if r.is_empty() {
                r.push(Rat::zero());
            }
        }
        UPoly(r).trimmed()
    }

    fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        let lead = a.0.last().unwrap().clone();
        UPoly(a.0.into_iter().map(|c| c / &lead).collect())
    }

    fn to_qpoly(&self) -> QPoly {
        let mut q = QPoly::default();
        for (i, c) in self.0.iter().enumerate() {
            q.add_term(Monomial::new(i as i64, 0), c.clone());
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn f(n: &str, d: &str) -> RationalFn {
        RationalFn::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn cancels_exact_divisor() {
        let x = f("t^4 - 1", "t^2 - 1");
        assert_eq!(x.as_polynomial(), Some(p("t^2 + 1")));
        let y = f("s*t^2 - s", "t - 1");
        assert_eq!(y.as_polynomial(), Some(p("s*t + s")));
    }

    #[test]
    fn cancels_univariate_gcd() {
        let x = f("t^2*s + s + t^3 + t", "t^4 - 1");
        assert_eq!(x.numer(), &p("s + t"));
        assert_eq!(x.denom(), &p("t^2 - 1"));
    }

    #[test]
    fn normal_form_sign_and_content() {
        let x = f("-4*s", "-6*s*t^3 - 2*s*t");
        assert_eq!(x.numer(), &p("2*t^-1"));
        assert_eq!(x.denom(), &p("3*t^2 + 1"));
    }

    #[test]
    fn s_is_never_inverted_in_polynomial_view() {
        let x = f("1", "s");
        assert_eq!(x.as_polynomial(), None);
        assert_eq!(f("t^3", "t").as_polynomial(), Some(p("t^2")));
        assert_eq!(f("1", "t").as_polynomial(), Some(p("t^-1")));
        assert_eq!(f("1", "2").as_polynomial(), None);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFn::new(p("1"), LaurentPoly::zero()).unwrap_err(), AlgebraError::ZeroDenominator);
        assert!(RationalFn::zero().inverse().is_err());
    }

    #[test]
    fn gm_cancellation() {
        let gm = p("t^2 - 1");
        let x = RationalFn::new(p("t^6 + 3*t^3 + 1"), gm.clone()).unwrap();
        let back = &x * &RationalFn::from(gm);
        assert_eq!(back.as_polynomial(), Some(p("t^6 + 3*t^3 + 1")));
    }

    fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
        let n = rng.gen_range(1..4);
        LaurentPoly::from_terms(
            (0..n).map(|_| ((rng.gen_range(-2i64..3), rng.gen_range(0u32..2)), rng.gen_range(-3i64..4))),
        )
    }

    fn random_fraction(rng: &mut ChaCha8Rng) -> (LaurentPoly, LaurentPoly) {
        loop {
            let n = random_poly(rng);
            let d = random_poly(rng);
            if !d.is_zero() {
                return (n, d);
            }
        }
    }

    #[test]
    fn arithmetic_agrees_with_cross_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let (n1, d1) = random_fraction(&mut rng);
            let (n2, d2) = random_fraction(&mut rng);
            let x = RationalFn::new(n1.clone(), d1.clone()).unwrap();
            let y = RationalFn::new(n2.clone(), d2.clone()).unwrap();
            // normal form represents the same fraction
            assert_eq!(x.numer() * &d1, &n1 * x.denom());
            // sum and product against the unnormalized formulas
            let sum = &x + &y;
            assert_eq!(sum.numer() * &(&d1 * &d2), &(&(&n1 * &d2) + &(&n2 * &d1)) * sum.denom());
            let prod = &x * &y;
            assert_eq!(prod.numer() * &(&d1 * &d2), &(&n1 * &n2) * prod.denom());
            assert_eq!(&(&x - &y) + &y, x);
        }
    }
}
