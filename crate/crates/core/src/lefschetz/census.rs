use crate::algebra::serde_num::JsonInt;
use crate::algebra::{binomial, sign_of_parity, Int, LaurentPoly, Monomial};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Jordan cell census: `(alpha, l) -> nu_l^alpha`, the number of `e_R`-strings
/// of length `l` starting in degree `alpha`.
///
/// Counts are nonnegative for geometric data; negative counts appear when a
/// census is read off a virtual polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct JordanCensus {
    cells: BTreeMap<(i64, u32), Int>,
}

impl JordanCensus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cells<C: Into<Int>>(cells: impl IntoIterator<Item = ((i64, u32), C)>) -> Self {
        let mut c = Self::new();
        for ((alpha, l), n) in cells {
            c.add(alpha, l, n.into());
        }
        c
    }

    /// Adds `n` cells of length `l >= 1` at minimal degree `alpha`.
    pub fn add(&mut self, alpha: i64, l: u32, n: Int) {
        assert!(l >= 1, "Jordan cells have positive length");
        if n.is_zero() {
            return;
        }
        let e = self.cells.entry((alpha, l)).or_default();
        *e += n;
        if e.is_zero() {
            self.cells.remove(&(alpha, l));
        }
    }

    pub fn get(&self, alpha: i64, l: u32) -> Int {
        self.cells.get(&(alpha, l)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u32, &Int)> {
        self.cells.iter().map(|(&(a, l), n)| (a, l, n))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn has_negative(&self) -> bool {
        self.cells.values().any(Signed::is_negative)
    }

    /// `sum l * nu_l^alpha`.
    pub fn total_dimension(&self) -> Int {
        self.iter().map(|(_, l, n)| n * Int::from(l)).sum()
    }

    /// `sum nu_l^alpha t^alpha s^{l-1}`.
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.iter().map(|(a, l, n)| ((a, l - 1), n.clone())))
    }

    /// Inverse of [`JordanCensus::to_poly`]: `t^a s^b` becomes a cell of length `b + 1` at `a`.
    pub fn from_poly(p: &LaurentPoly) -> Self {
        Self::from_cells(p.terms().map(|(m, c): (&Monomial, &Int)| ((m.t, m.s + 1), c.clone())))
    }

    /// Shift every minimal degree by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self::from_cells(self.iter().map(|(a, l, n)| ((a + k, l), n.clone())))
    }
}

impl Serialize for JordanCensus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, u32, JsonInt)> = self.iter().map(|(a, l, n)| (a, l, JsonInt(n.clone()))).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JordanCensus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(i64, u32, JsonInt)> = Vec::deserialize(d)?;
        if v.iter().any(|(_, l, _)| *l == 0) {
            return Err(serde::de::Error::custom("Jordan cells must have length >= 1"));
        }
        Ok(JordanCensus::from_cells(v.into_iter().map(|(a, l, n)| ((a, l), n.0))))
    }
}

/// Genus-`g` invariant from a Jordan census:
///
/// `sum_{alpha + l >= 1} (-1)^{alpha+g} l nu_l^alpha (C(alpha+l+g, 2g+1) - C(alpha+l+g-2, 2g+1))`
///
/// with `C(n, k) = 0` unless `0 <= k <= n`.
pub fn alt_ng(census: &JordanCensus, g: u32) -> Int {
    let g = i64::from(g);
    let mut total = Int::zero();
    for (alpha, l, nu) in census.iter() {
        let l = i64::from(l);
        if alpha + l < 1 {
            continue;
        }
        let bracket = binomial(alpha + l + g, 2 * g + 1) - binomial(alpha + l + g - 2, 2 * g + 1);
        if bracket.is_zero() {
            continue;
        }
        total += sign_of_parity(alpha + g) * Int::from(l) * nu * bracket;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_gives_one() {
        let c = JordanCensus::from_cells([((0, 1), 1)]);
        assert_eq!(alt_ng(&c, 0), Int::from(1));
        assert_eq!(alt_ng(&c, 1), Int::from(0));
    }

    #[test]
    fn left_spin_one_over_a_point() {
        let c = JordanCensus::from_cells([((-2, 1), 1), ((0, 1), 1), ((2, 1), 1)]);
        let got: Vec<Int> = (0..3).map(|g| alt_ng(&c, g)).collect();
        assert_eq!(got, vec![Int::from(3), Int::from(-4), Int::from(1)]);
        assert_eq!(alt_ng(&c, 3), Int::from(0));
    }

    #[test]
    fn empty_census_vanishes() {
        for g in 0..5 {
            assert_eq!(alt_ng(&JordanCensus::new(), g), Int::from(0));
        }
    }

    #[test]
    fn poly_round_trip() {
        let c = JordanCensus::from_cells([((-2, 3), 1), ((1, 1), -2)]);
        assert_eq!(c.to_poly().to_string(), "t^-2*s^2 - 2*t");
        assert_eq!(JordanCensus::from_poly(&c.to_poly()), c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "[[-2,3,1],[1,1,-2]]");
        assert_eq!(serde_json::from_str::<JordanCensus>(&json).unwrap(), c);
        assert!(serde_json::from_str::<JordanCensus>("[[0,0,1]]").is_err());
    }
}
