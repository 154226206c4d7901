use super::RepError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

/// Multiset of `sl2` irreducibles, keyed by doubled spin `2j`.
///
/// Multiplicities may be negative (virtual representations). Zero entries are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(u32, i64)>", into = "Vec<(u32, i64)>")]
pub struct SpinMultiset {
    mult: BTreeMap<u32, i64>,
}

impl From<Vec<(u32, i64)>> for SpinMultiset {
    fn from(v: Vec<(u32, i64)>) -> Self {
        SpinMultiset::from_pairs(v)
    }
}

impl From<SpinMultiset> for Vec<(u32, i64)> {
    fn from(s: SpinMultiset) -> Self {
        s.mult.into_iter().collect()
    }
}

impl SpinMultiset {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A single copy of the spin `two_j / 2` irreducible.
    pub fn irreducible(two_j: u32) -> Self {
        Self::from_pairs([(two_j, 1)])
    }

    /// The trivial representation, the unit for [`tensor`].
    pub fn trivial() -> Self {
        Self::irreducible(0)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut s = Self::zero();
        for (j, m) in pairs {
            s.add_spin(j, m);
        }
        s
    }

    pub fn add_spin(&mut self, two_j: u32, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mult.entry(two_j).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mult.remove(&two_j);
        }
    }

    pub fn get(&self, two_j: u32) -> i64 {
        self.mult.get(&two_j).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.mult.iter().map(|(&j, &m)| (j, m))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn top_spin(&self) -> Option<u32> {
        self.mult.keys().next_back().copied()
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self::from_pairs(self.iter().map(|(j, m)| (j, m * c)))
    }

    /// `sum mult(j) (2j + 1)`; signed for virtual representations.
    pub fn dimension(&self) -> i64 {
        self.iter().map(|(j, m)| m * (i64::from(j) + 1)).sum()
    }

    /// Weight-space dimensions: spin `j` contributes to weights `-2j, -2j+2, ..., 2j`.
    pub fn weight_dims(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (j, m) in self.iter() {
            let j = i64::from(j);
            for w in (-j..=j).step_by(2) {
                *out.entry(w).or_insert(0) += m;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

impl Add<&SpinMultiset> for &SpinMultiset {
    type Output = SpinMultiset;
    fn add(self, rhs: &SpinMultiset) -> SpinMultiset {
        let mut out = self.clone();
        for (j, m) in rhs.iter() {
            out.add_spin(j, m);
        }
        out
    }
}

impl Sub<&SpinMultiset> for &SpinMultiset {
    type Output = SpinMultiset;
    fn sub(self, rhs: &SpinMultiset) -> SpinMultiset {
        self + &(-rhs)
    }
}

impl Neg for &SpinMultiset {
    type Output = SpinMultiset;
    fn neg(self) -> SpinMultiset {
        self.scaled(-1)
    }
}

/// Dimensions of a graded vector space, keyed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(pub BTreeMap<i64, u64>);

impl GradedDims {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        GradedDims(pairs.into_iter().filter(|(_, d)| *d != 0).collect())
    }

    pub fn get(&self, deg: i64) -> u64 {
        self.0.get(&deg).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

/// Primitive decomposition of an `sl2`-graded space: `mult(j) = dim(2j) - dim(2j + 2)`.
///
/// The dimensions must be symmetric about zero and non-increasing away from
/// zero within each parity; otherwise no Lefschetz operator exists.
pub fn spin_decompose(d: &GradedDims) -> Result<SpinMultiset, RepError> {
    for (&k, &v) in &d.0 {
        if d.get(-k) != v {
            return Err(RepError::NotRepresentation(format!("dim({k}) = {v} but dim({}) = {}", -k, d.get(-k))));
        }
    }
    let top = d.0.keys().map(|k| k.abs()).max().unwrap_or(0);
    let mut out = SpinMultiset::zero();
    for w in 0..=top {
        let here = d.get(w);
        let above = d.get(w + 2);
        if above > here {
            return Err(RepError::NotRepresentation(format!("dim({}) = {above} exceeds dim({w}) = {here}", w + 2)));
        }
        let m = here - above;
        if m > 0 {
            out.add_spin(w as u32, m as i64);
        }
    }
    Ok(out)
}

/// Clebsch-Gordan product, extended bilinearly to virtual multisets.
pub fn tensor(x: &SpinMultiset, y: &SpinMultiset) -> SpinMultiset {
    let mut out = SpinMultiset::zero();
    for (a, ma) in x.iter() {
        for (b, mb) in y.iter() {
            let lo = a.abs_diff(b);
            for c in (lo..=a + b).step_by(2) {
                out.add_spin(c, ma * mb);
            }
        }
    }
    out
}

/// `I_g = [(1/2) + 2(0)]^{tensor g}`, the cohomology of a `g`-dimensional torus.
pub fn i_g(g: u32) -> SpinMultiset {
    let base = SpinMultiset::from_pairs([(1, 1), (0, 2)]);
    (0..g).fold(SpinMultiset::trivial(), |acc, _| tensor(&acc, &base))
}

/// `I_0, ..., I_{max_g}` computed incrementally.
pub fn i_g_table(max_g: u32) -> Vec<SpinMultiset> {
    let base = SpinMultiset::from_pairs([(1, 1), (0, 2)]);
    let mut out = vec![SpinMultiset::trivial()];
    for g in 1..=max_g as usize {
        let next = tensor(&out[g - 1], &base);
        out.push(next);
    }
    out
}
