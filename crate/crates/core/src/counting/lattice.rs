use super::CountingError;
use crate::algebra::serde_num::JsonRat;
use crate::algebra::Rat;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// Numerical class `v = (beta, k)`: a curve class and the Euler pairing.
///
/// Written as `"b1,b2,...;k"`, which is also its JSON form and the key used
/// in model documents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NumClass {
    pub beta: Vec<i64>,
    pub k: i64,
}

impl NumClass {
    pub fn new(beta: Vec<i64>, k: i64) -> Self {
        NumClass { beta, k }
    }

    pub fn beta_is_zero(&self) -> bool {
        self.beta.iter().all(|&b| b == 0)
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.beta.iter().map(i64::to_string).collect();
        write!(f, "{};{}", b.join(","), self.k)
    }
}

impl FromStr for NumClass {
    type Err = CountingError;
    fn from_str(s: &str) -> Result<Self, CountingError> {
        let bad = || CountingError::Schema(format!("class key `{s}` is not of the form `b1,...,br;k`"));
        let (b, k) = s.split_once(';').ok_or_else(bad)?;
        let beta = b.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
        let k = k.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(NumClass { beta, k })
    }
}

impl Serialize for NumClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NumClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add<&NumClass> for &NumClass {
    type Output = NumClass;
    fn add(self, rhs: &NumClass) -> NumClass {
        NumClass { beta: self.beta.iter().zip(&rhs.beta).map(|(a, b)| a + b).collect(), k: self.k + rhs.k }
    }
}

impl Sub<&NumClass> for &NumClass {
    type Output = NumClass;
    fn sub(self, rhs: &NumClass) -> NumClass {
        self + &(-rhs)
    }
}

impl Neg for &NumClass {
    type Output = NumClass;
    fn neg(self) -> NumClass {
        NumClass { beta: self.beta.iter().map(|b| -b).collect(), k: -self.k }
    }
}

/// `N_1(X)` of rank `rank` with the effective monoid spanned by `generators`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassLattice {
    pub rank: usize,
    pub generators: Vec<Vec<i64>>,
}

impl ClassLattice {
    pub fn validate(&self) -> Result<(), CountingError> {
        if self.rank == 0 {
            return Err(CountingError::Schema("lattice rank must be positive".into()));
        }
        for g in &self.generators {
            if g.len() != self.rank {
                return Err(CountingError::Schema(format!("generator {g:?} does not have length {}", self.rank)));
            }
            if g.iter().all(|&x| x == 0) {
                return Err(CountingError::Schema("effective generators must be nonzero".into()));
            }
        }
        Ok(())
    }
}

/// `Z(beta, k) = -k + (B + i omega) . beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralCharge {
    #[serde(rename = "B")]
    pub b: Vec<JsonRat>,
    pub omega: Vec<JsonRat>,
}

impl CentralCharge {
    pub fn new(b: Vec<Rat>, omega: Vec<Rat>) -> Self {
        CentralCharge { b: b.into_iter().map(JsonRat).collect(), omega: omega.into_iter().map(JsonRat).collect() }
    }
}

fn dot(x: &[JsonRat], beta: &[i64]) -> Rat {
    x.iter().zip(beta).map(|(a, &b)| &a.0 * Rat::from_integer(b.into())).sum()
}

/// Exact phase `phi in (0, 2]` of a nonzero central charge value, kept as the
/// charge itself: two phases are equal iff the values are positive multiples.
#[derive(Debug, Clone)]
pub struct Phase {
    re: Rat,
    im: Rat,
}

impl Phase {
    /// `phi in (0, 1]`.
    pub fn in_upper_half(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    pub fn is_half(&self) -> bool {
        self.re.is_zero() && self.im.is_positive()
    }

    fn cross(&self, other: &Phase) -> Rat {
        &self.re * &other.im - &self.im * &other.re
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Phase) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Phase {}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Phase) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Phase) -> Ordering {
        // (0, 1] before (1, 2]; inside a half-turn the cross product orders angles
        let half = |p: &Phase| u8::from(!p.in_upper_half());
        half(self).cmp(&half(other)).then_with(|| Rat::zero().cmp(&self.cross(other)))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, _) if self.im.is_positive() => f.write_str("1/2"),
            (true, _) => f.write_str("3/2"),
            (_, true) if self.re.is_negative() => f.write_str("1"),
            (_, true) => f.write_str("2"),
            _ => write!(f, "arg({} + {}i)/pi", self.re, self.im),
        }
    }
}

/// A lattice with a central charge that is positive on every effective generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stability {
    lattice: ClassLattice,
    charge: CentralCharge,
}

impl Stability {
    pub fn new(lattice: ClassLattice, charge: CentralCharge) -> Result<Self, CountingError> {
        lattice.validate()?;
        if charge.b.len() != lattice.rank || charge.omega.len() != lattice.rank {
            return Err(CountingError::Schema(format!("B and omega must have length {}", lattice.rank)));
        }
        for g in &lattice.generators {
            if !dot(&charge.omega, g).is_positive() {
                return Err(CountingError::ConeNotPointed(format!("omega is not positive on generator {g:?}")));
            }
        }
        Ok(Stability { lattice, charge })
    }

    pub fn lattice(&self) -> &ClassLattice {
        &self.lattice
    }

    pub fn charge(&self) -> &CentralCharge {
        &self.charge
    }

    fn check_rank(&self, v: &NumClass) -> Result<(), CountingError> {
        if v.beta.len() == self.lattice.rank {
            Ok(())
        } else {
            Err(CountingError::Schema(format!("class {v} does not have rank {}", self.lattice.rank)))
        }
    }

    pub fn omega_degree(&self, beta: &[i64]) -> Rat {
        dot(&self.charge.omega, beta)
    }

    pub fn b_degree(&self, beta: &[i64]) -> Rat {
        dot(&self.charge.b, beta)
    }

    /// `(Re Z, Im Z)`.
    pub fn z(&self, v: &NumClass) -> (Rat, Rat) {
        (self.b_degree(&v.beta) - Rat::from_integer(v.k.into()), self.omega_degree(&v.beta))
    }

    pub fn phase(&self, v: &NumClass) -> Result<Phase, CountingError> {
        self.check_rank(v)?;
        let (re, im) = self.z(v);
        if re.is_zero() && im.is_zero() {
            return Err(CountingError::ZeroCharge(v.clone()));
        }
        Ok(Phase { re, im })
    }

    /// Monoid elements of `omega`-degree at most `bound`, zero included.
    fn monoid_up_to(&self, bound: &Rat) -> BTreeSet<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut frontier = vec![vec![0; self.lattice.rank]];
        seen.insert(frontier[0].clone());
        while let Some(x) = frontier.pop() {
            for g in &self.lattice.generators {
                let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
                if self.omega_degree(&y) <= *bound && seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// Whether `beta` lies in the monoid spanned by the generators (zero included).
    pub fn is_effective(&self, beta: &[i64]) -> bool {
        if beta.len() != self.lattice.rank {
            return false;
        }
        let deg = self.omega_degree(beta);
        if deg.is_negative() {
            return false;
        }
        self.monoid_up_to(&deg).contains(beta)
    }

    /// Nonzero effective `x` with `beta - x` effective or zero.
    pub fn effective_below(&self, beta: &[i64]) -> BTreeSet<Vec<i64>> {
        let monoid = self.monoid_up_to(&self.omega_degree(beta));
        monoid
            .iter()
            .filter(|x| x.iter().any(|&c| c != 0))
            .filter(|x| {
                let rest: Vec<i64> = beta.iter().zip(x.iter()).map(|(a, b)| a - b).collect();
                monoid.contains(&rest)
            })
            .cloned()
            .collect()
    }

    /// `v` has phase in `(0, 1]` as a class of sheaves: `beta` effective and
    /// nonzero, or `beta = 0` with `k > 0`.
    pub fn in_effective_range(&self, v: &NumClass) -> bool {
        if v.beta.len() != self.lattice.rank {
            return false;
        }
        if v.beta_is_zero() {
            v.k > 0
        } else {
            self.is_effective(&v.beta)
        }
    }
}
