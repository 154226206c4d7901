use super::census::JordanCensus;
use super::spin::{i_g_table, tensor, SpinMultiset};
use super::RepError;
use crate::algebra::{sign_of_parity, Int};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `(sl2)_L x (sl2)_R` content `sum m_{jL,jR} (jL) (x) (jR)`, keyed by doubled spins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(u32, u32, i64)>", into = "Vec<(u32, u32, i64)>")]
pub struct BispinContent {
    mult: BTreeMap<(u32, u32), i64>,
}

impl From<Vec<(u32, u32, i64)>> for BispinContent {
    fn from(v: Vec<(u32, u32, i64)>) -> Self {
        BispinContent::from_triples(v)
    }
}

impl From<BispinContent> for Vec<(u32, u32, i64)> {
    fn from(b: BispinContent) -> Self {
        b.iter().collect()
    }
}

impl BispinContent {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Triples `(2jL, 2jR, multiplicity)`.
    pub fn from_triples(triples: impl IntoIterator<Item = (u32, u32, i64)>) -> Self {
        let mut b = Self::zero();
        for (l, r, m) in triples {
            b.add(l, r, m);
        }
        b
    }

    pub fn add(&mut self, two_jl: u32, two_jr: u32, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mult.entry((two_jl, two_jr)).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mult.remove(&(two_jl, two_jr));
        }
    }

    pub fn get(&self, two_jl: u32, two_jr: u32) -> i64 {
        self.mult.get(&(two_jl, two_jr)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.mult.iter().map(|(&(l, r), &m)| (l, r, m))
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.mult.values().all(|&m| m >= 0)
    }

    pub fn dimension(&self) -> i64 {
        self.iter().map(|(l, r, m)| m * (i64::from(l) + 1) * (i64::from(r) + 1)).sum()
    }

    pub fn max_left(&self) -> Option<u32> {
        self.mult.keys().map(|&(l, _)| l).max()
    }

    /// Left content attached to each right spin.
    fn left_by_right(&self) -> BTreeMap<u32, SpinMultiset> {
        let mut out: BTreeMap<u32, SpinMultiset> = BTreeMap::new();
        for (l, r, m) in self.iter() {
            out.entry(r).or_default().add_spin(l, m);
        }
        out
    }

    /// `sum_g I_g (x)_L R_g`, the inverse of [`hst_decompose`].
    pub fn from_decomposition(parts: &BTreeMap<u32, SpinMultiset>) -> Self {
        let max_g = parts.keys().copied().max().unwrap_or(0);
        let ig = i_g_table(max_g);
        let mut out = Self::zero();
        for (&g, right) in parts {
            for (jl, ml) in ig[g as usize].iter() {
                for (jr, mr) in right.iter() {
                    out.add(jl, jr, ml * mr);
                }
            }
        }
        out
    }
}

/// Write `v` as `sum_g I_g (x) R_g(v)` with virtual right representations.
///
/// For each right spin the left content is expanded in the basis
/// `I_0, I_1, ...` by a triangular solve from the top left spin down: `I_g`
/// has top doubled spin `g` with multiplicity one.
pub fn hst_decompose(v: &BispinContent) -> BTreeMap<u32, SpinMultiset> {
    let max_g = v.max_left().unwrap_or(0);
    let ig = i_g_table(max_g);
    let mut out: BTreeMap<u32, SpinMultiset> = BTreeMap::new();
    for (jr, left) in v.left_by_right() {
        let mut rem = left;
        for g in (0..=max_g).rev() {
            let c = rem.get(g);
            if c == 0 {
                continue;
            }
            rem = &rem - &ig[g as usize].scaled(c);
            out.entry(g).or_default().add_spin(jr, c);
        }
        debug_assert!(rem.is_zero(), "I-basis solve left a remainder");
    }
    out.retain(|_, r| !r.is_zero());
    out
}

/// `sum_j (-1)^{2j} (2j + 1) N_j` for `R_g = sum N_j (j)`.
pub fn hst_ng(v: &BispinContent, g: u32) -> Int {
    hst_decompose(v).get(&g).map(signed_trace).unwrap_or_default()
}

/// All `hst_ng(v, g)` for `g = 0..=max_g` from a single decomposition.
pub fn hst_ng_range(v: &BispinContent, max_g: u32) -> Vec<Int> {
    let parts = hst_decompose(v);
    (0..=max_g).map(|g| parts.get(&g).map(signed_trace).unwrap_or_default()).collect()
}

fn signed_trace(r: &SpinMultiset) -> Int {
    r.iter().map(|(j, n)| sign_of_parity(i64::from(j)) * Int::from(i64::from(j) + 1) * Int::from(n)).sum()
}

/// Jordan cells of `e_R` with respect to the grading by `h_L + h_R`.
///
/// Each `(jL, jR, m)` gives, for every left weight `w`, `m` cells of length
/// `2jR + 1` starting in degree `w - 2jR`.
pub fn census_from_bispin(v: &BispinContent) -> Result<JordanCensus, RepError> {
    if !v.is_nonnegative() {
        return Err(RepError::VirtualInput);
    }
    let mut c = JordanCensus::new();
    for (jl, jr, m) in v.iter() {
        let jl = i64::from(jl);
        for w in (-jl..=jl).step_by(2) {
            c.add(w - i64::from(jr), jr + 1, Int::from(m));
        }
    }
    Ok(c)
}

/// Tensor two bispin contents factorwise.
pub fn bispin_tensor(x: &BispinContent, y: &BispinContent) -> BispinContent {
    let mut out = BispinContent::zero();
    for (l1, r1, m1) in x.iter() {
        for (l2, r2, m2) in y.iter() {
            let left = tensor(&SpinMultiset::irreducible(l1), &SpinMultiset::irreducible(l2));
            let right = tensor(&SpinMultiset::irreducible(r1), &SpinMultiset::irreducible(r2));
            for (a, ma) in left.iter() {
                for (b, mb) in right.iter() {
                    out.add(a, b, m1 * m2 * ma * mb);
                }
            }
        }
    }
    out
}
