use super::lattice::{NumClass, Stability};
use super::CountingError;
use crate::algebra::Rat;
use crate::par;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which generators the letters of a [`FreeHallElement`] stand for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Delta,
    Epsilon,
}

impl Alphabet {
    fn symbol(self) -> &'static str {
        match self {
            Alphabet::Delta => "delta",
            Alphabet::Epsilon => "eps",
        }
    }
}

/// Rational combination of words in `delta^(v)` or `eps^(v)`; the product is
/// concatenation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeHallElement {
    alphabet: Alphabet,
    terms: BTreeMap<Vec<NumClass>, Rat>,
}

impl FreeHallElement {
    pub fn zero(alphabet: Alphabet) -> Self {
        FreeHallElement { alphabet, terms: BTreeMap::new() }
    }

    pub fn letter(alphabet: Alphabet, v: NumClass) -> Self {
        Self::word(alphabet, vec![v], Rat::one())
    }

    pub fn word(alphabet: Alphabet, word: Vec<NumClass>, c: Rat) -> Self {
        let mut f = Self::zero(alphabet);
        f.add_word(word, c);
        f
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn add_word(&mut self, word: Vec<NumClass>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(word.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<NumClass>, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[NumClass]) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &FreeHallElement) -> FreeHallElement {
        assert_eq!(self.alphabet, other.alphabet, "adding words over different alphabets");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> FreeHallElement {
        let mut out = Self::zero(self.alphabet);
        for (w, x) in &self.terms {
            out.add_word(w.clone(), x * c);
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &FreeHallElement) -> FreeHallElement {
        assert_eq!(self.alphabet, other.alphabet, "multiplying words over different alphabets");
        let mut out = Self::zero(self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_word(w, c1 * c2);
            }
        }
        out
    }

    /// `f * g - g * f`.
    pub fn commutator(&self, other: &FreeHallElement) -> FreeHallElement {
        self.mul(other).add(&other.mul(self).scale(&-Rat::one()))
    }

    /// Replace every letter `x^(v)` by `table(v)` and expand.
    pub fn substitute<F>(&self, table: F) -> Result<FreeHallElement, CountingError>
    where
        F: Fn(&NumClass) -> Result<FreeHallElement, CountingError> + Sync + Send,
    {
        let words: Vec<(&Vec<NumClass>, &Rat)> = self.terms.iter().collect();
        let expanded = par::map(&words, |(w, c)| -> Result<FreeHallElement, CountingError> {
            let mut acc: Option<FreeHallElement> = None;
            for v in w.iter() {
                let x = table(v)?;
                acc = Some(match acc {
                    None => x,
                    Some(a) => a.mul(&x),
                });
            }
            Ok(acc.expect("words are nonempty").scale(c))
        });
        let mut out: Option<FreeHallElement> = None;
        for e in expanded {
            let e = e?;
            out = Some(match out {
                None => e,
                Some(o) => o.add(&e),
            });
        }
        Ok(out.unwrap_or_else(|| Self::zero(self.alphabet)))
    }
}

impl fmt::Display for FreeHallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = self.alphabet.symbol();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let a = c.abs();
            let letters: Vec<String> = w.iter().map(|v| format!("{sym}({v})")).collect();
            if a.is_one() {
                write!(f, "{sep}{}", letters.join("*"))?;
            } else {
                write!(f, "{sep}{a}*{}", letters.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Default cap on the number of ordered decompositions enumerated per class.
pub const DEFAULT_MAX_COMPOSITIONS: usize = 1_000_000;

/// Ordered decompositions `v = v_1 + ... + v_n` into classes in the effective
/// range that share the phase of `v`, including the trivial one.
pub fn same_phase_decompositions(
    stab: &Stability,
    v: &NumClass,
    cap: usize,
) -> Result<Vec<Vec<NumClass>>, CountingError> {
    if !stab.in_effective_range(v) {
        return Err(CountingError::NotEffective(v.clone()));
    }
    stab.phase(v)?;
    if v.beta_is_zero() {
        return point_compositions(v, cap);
    }
    // every same-phase piece (x, k_x) has k_x = B.x - (w.x / w.beta)(B.beta - k)
    let (re, im) = stab.z(v);
    let mut pieces: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for x in stab.effective_below(&v.beta) {
        let lambda = stab.omega_degree(&x) / &im;
        let kx = stab.b_degree(&x) - lambda * &re;
        if kx.is_integer() {
            let kx: i64 = kx.to_integer().try_into().map_err(|_| CountingError::ResourceLimit(cap))?;
            pieces.insert(x, kx);
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_compositions(&v.beta, &pieces, &mut prefix, &mut out, cap)?;
    Ok(out)
}

fn extend_compositions(
    rest: &[i64],
    pieces: &BTreeMap<Vec<i64>, i64>,
    prefix: &mut Vec<NumClass>,
    out: &mut Vec<Vec<NumClass>>,
    cap: usize,
) -> Result<(), CountingError> {
    for (x, &kx) in pieces {
        let remaining: Vec<i64> = rest.iter().zip(x).map(|(a, b)| a - b).collect();
        let done = remaining.iter().all(|&c| c == 0);
        if !done && !pieces.contains_key(&remaining) {
            continue;
        }
        prefix.push(NumClass::new(x.clone(), kx));
        if done {
            if out.len() >= cap {
                return Err(CountingError::ResourceLimit(cap));
            }
            out.push(prefix.clone());
        } else {
            extend_compositions(&remaining, pieces, prefix, out, cap)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Compositions of `k` into positive parts, as classes `(0, k_i)`.
fn point_compositions(v: &NumClass, cap: usize) -> Result<Vec<Vec<NumClass>>, CountingError> {
    let k = v.k as u64;
    if k > u64::from(usize::BITS) || (1usize << (k - 1)) > cap {
        return Err(CountingError::ResourceLimit(cap));
    }
    let zero = vec![0; v.beta.len()];
    let mut out = Vec::with_capacity(1 << (k - 1));
    for mask in 0u64..(1 << (k - 1)) {
        // bit i set: cut after position i + 1
        let mut word = Vec::new();
        let mut last = 0i64;
        for i in 0..k - 1 {
            if mask >> i & 1 == 1 {
                word.push(NumClass::new(zero.clone(), i as i64 + 1 - last));
                last = i as i64 + 1;
            }
        }
        word.push(NumClass::new(zero.clone(), k as i64 - last));
        out.push(word);
    }
    Ok(out)
}

fn factorial(n: usize) -> Rat {
    Rat::from_integer((1..=n).fold(num_bigint::BigInt::one(), |a, i| a * i))
}

/// `eps^(v) = sum (-1)^{n-1}/n delta^(v_1) * ... * delta^(v_n)` over same-phase
/// decompositions.
pub fn epsilon_formal(stab: &Stability, v: &NumClass, cap: usize) -> Result<FreeHallElement, CountingError> {
    let mut f = FreeHallElement::zero(Alphabet::Delta);
    for w in same_phase_decompositions(stab, v, cap)? {
        let n = w.len() as i64;
        let sign = if n.is_odd() { 1 } else { -1 };
        f.add_word(w, Rat::new(sign.into(), n.into()));
    }
    Ok(f)
}

/// `delta^(v) = sum 1/n! eps^(v_1) * ... * eps^(v_n)`, the inverse of [`epsilon_formal`].
pub fn delta_from_epsilon(stab: &Stability, v: &NumClass, cap: usize) -> Result<FreeHallElement, CountingError> {
    let mut f = FreeHallElement::zero(Alphabet::Epsilon);
    for w in same_phase_decompositions(stab, v, cap)? {
        let n = w.len();
        f.add_word(w, factorial(n).recip());
    }
    Ok(f)
}

/// Substitute each expansion into the other and compare with the single letter.
pub fn log_exp_round_trip(stab: &Stability, v: &NumClass, cap: usize) -> Result<bool, CountingError> {
    let d = delta_from_epsilon(stab, v, cap)?.substitute(|w| epsilon_formal(stab, w, cap))?;
    let e = epsilon_formal(stab, v, cap)?.substitute(|w| delta_from_epsilon(stab, w, cap))?;
    Ok(d == FreeHallElement::letter(Alphabet::Delta, v.clone())
        && e == FreeHallElement::letter(Alphabet::Epsilon, v.clone()))
}
