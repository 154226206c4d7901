use super::bispin::BispinContent;
use super::census::JordanCensus;
use super::spin::{GradedDims, SpinMultiset};
use super::RepError;
use crate::algebra::serde_num::JsonRat;
use crate::algebra::{Int, Matrix, Rat};
use crate::par;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// A degree-`+2` operator on a finite graded space over `Q`.
///
/// `maps[alpha]` is the matrix of `V_alpha -> V_{alpha+2}` acting on column
/// vectors (`dim V_{alpha+2}` rows, `dim V_alpha` columns). Missing maps are
/// zero. Finite support makes the operator nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedNilpotent {
    dims: GradedDims,
    maps: BTreeMap<i64, Matrix>,
}

impl GradedNilpotent {
    pub fn new(dims: GradedDims, maps: BTreeMap<i64, Matrix>) -> Result<Self, RepError> {
        for (&alpha, m) in &maps {
            let (src, dst) = (dims.get(alpha) as usize, dims.get(alpha + 2) as usize);
            if m.cols() != src || m.rows() != dst {
                return Err(RepError::ShapeMismatch(format!(
                    "map at degree {alpha} is {}x{}, expected {dst}x{src}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let maps = maps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(GradedNilpotent { dims, maps })
    }

    pub fn dims(&self) -> &GradedDims {
        &self.dims
    }

    pub fn map_at(&self, alpha: i64) -> Matrix {
        self.maps
            .get(&alpha)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dims.get(alpha + 2) as usize, self.dims.get(alpha) as usize))
    }

    /// Realize `e_R` on a nonnegative bispin content: one identity-chained
    /// string per Jordan cell, graded by `h_L + h_R`.
    pub fn realize(v: &BispinContent) -> Result<Self, RepError> {
        let census = super::census_from_bispin(v)?;
        let mut dims: BTreeMap<i64, u64> = BTreeMap::new();
        // (start degree, length) per string, in census order
        let mut strings = Vec::new();
        for (alpha, l, n) in census.iter() {
            let n: u64 = n.try_into().expect("census counts from bispin content fit in u64");
            for _ in 0..n {
                strings.push((alpha, l));
            }
        }
        let mut index: Vec<Vec<usize>> = Vec::with_capacity(strings.len());
        for &(alpha, l) in &strings {
            let mut idx = Vec::with_capacity(l as usize);
            for k in 0..i64::from(l) {
                let d = dims.entry(alpha + 2 * k).or_insert(0);
                idx.push(*d as usize);
                *d += 1;
            }
            index.push(idx);
        }
        let dims = GradedDims(dims);
        let mut maps: BTreeMap<i64, Matrix> = BTreeMap::new();
        for (&(alpha, l), idx) in strings.iter().zip(&index) {
            for k in 0..(l as usize).saturating_sub(1) {
                let deg = alpha + 2 * k as i64;
                let m = maps
                    .entry(deg)
                    .or_insert_with(|| Matrix::zeros(dims.get(deg + 2) as usize, dims.get(deg) as usize));
                m[(idx[k + 1], idx[k])] = Rat::one();
            }
        }
        Self::new(dims, maps)
    }

    /// `P_{alpha+2} M_alpha P_alpha^{-1}` for invertible degree-preserving `P`.
    /// Degrees without an entry in `change` keep the identity.
    pub fn conjugated(&self, change: &BTreeMap<i64, Matrix>) -> Result<Self, RepError> {
        let mut inverses = BTreeMap::new();
        for (&deg, p) in change {
            let n = self.dims.get(deg) as usize;
            if p.rows() != n || p.cols() != n {
                return Err(RepError::ShapeMismatch(format!("basis change at degree {deg} is not {n}x{n}")));
            }
            let inv = p
                .inverse()
                .map_err(|_| RepError::ShapeMismatch(format!("basis change at degree {deg} is singular")))?;
            inverses.insert(deg, inv);
        }
        let mut maps = BTreeMap::new();
        for (&alpha, m) in &self.maps {
            let mut out = m.clone();
            if let Some(inv) = inverses.get(&alpha) {
                out = &out * inv;
            }
            if let Some(p) = change.get(&(alpha + 2)) {
                out = p * &out;
            }
            maps.insert(alpha, out);
        }
        Self::new(self.dims.clone(), maps)
    }

    /// Ranks of `e^k` restricted to `V_alpha`, for `k = 0, 1, ...` until zero.
    fn power_ranks(&self, alpha: i64) -> Vec<usize> {
        let mut ranks = vec![self.dims.get(alpha) as usize];
        let mut acc: Option<Matrix> = None;
        let mut deg = alpha;
        while let Some(m) = self.maps.get(&deg) {
            let next = match &acc {
                None => m.clone(),
                Some(a) => m * a,
            };
            let r = next.rank();
            if r == 0 {
                break;
            }
            ranks.push(r);
            acc = Some(next);
            deg += 2;
        }
        ranks
    }
}

/// Jordan census of a graded nilpotent operator from exact ranks of its powers.
///
/// With `r(alpha, k)` the rank of `e^k` on `V_alpha`, the number of cells that
/// start at `alpha` with length at least `l` is `r(alpha, l-1) - r(alpha-2, l)`.
pub fn jordan_census(x: &GradedNilpotent) -> JordanCensus {
    let degrees: Vec<i64> = x.dims.0.keys().copied().collect();
    let ranks: BTreeMap<i64, Vec<usize>> =
        degrees.iter().copied().zip(par::map(&degrees, |&a| x.power_ranks(a))).collect();
    let rank = |alpha: i64, k: usize| -> usize { ranks.get(&alpha).and_then(|r| r.get(k).copied()).unwrap_or(0) };
    let at_least = |alpha: i64, l: usize| -> usize { rank(alpha, l - 1) - rank(alpha - 2, l) };
    let mut census = JordanCensus::new();
    for &alpha in &degrees {
        let max_l = ranks[&alpha].len();
        for l in 1..=max_l {
            let n = at_least(alpha, l) - at_least(alpha, l + 1);
            if n > 0 {
                census.add(alpha, l as u32, Int::from(n));
            }
        }
    }
    census
}

/// `sl2` content of a Lefschetz operator: every Jordan cell must be centred at
/// degree zero, and a cell of length `l` is a spin `(l - 1) / 2` string.
pub fn spin_from_lefschetz(x: &GradedNilpotent) -> Result<SpinMultiset, RepError> {
    let mut out = SpinMultiset::zero();
    for (alpha, l, n) in jordan_census(x).iter() {
        if alpha + 2 * (i64::from(l) - 1) != -alpha {
            return Err(RepError::NotRepresentation(format!(
                "cell of length {l} starting at {alpha} is not symmetric about degree 0"
            )));
        }
        let n: i64 = n.try_into().expect("cell counts are bounded by the dimension");
        out.add_spin(l - 1, n);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedNilpotentDoc {
    dims: BTreeMap<i64, u64>,
    #[serde(default)]
    maps: BTreeMap<i64, Vec<Vec<JsonRat>>>,
}

impl Serialize for GradedNilpotent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let maps = self
            .maps
            .iter()
            .map(|(&a, m)| (a, (0..m.rows()).map(|r| m.row(r).iter().cloned().map(JsonRat).collect()).collect()))
            .collect();
        GradedNilpotentDoc { dims: self.dims.0.clone(), maps }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedNilpotent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = GradedNilpotentDoc::deserialize(d)?;
        let dims = GradedDims::from_pairs(doc.dims);
        let mut maps = BTreeMap::new();
        for (alpha, rows) in doc.maps {
            let cols = dims.get(alpha) as usize;
            let m = Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect(), cols)
                .map_err(|e| D::Error::custom(format!("map at degree {alpha}: {e}")))?;
            maps.insert(alpha, m);
        }
        GradedNilpotent::new(dims, maps).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;
    use crate::lefschetz::spin_decompose;
    use proptest::prelude::*;

    fn chain(dims: &[(i64, u64)]) -> GradedNilpotent {
        let dims = GradedDims::from_pairs(dims.iter().copied());
        let mut maps = BTreeMap::new();
        for (&a, &d) in &dims.0 {
            if dims.get(a + 2) == d && d > 0 {
                maps.insert(a, Matrix::identity(d as usize));
            }
        }
        GradedNilpotent::new(dims, maps).unwrap()
    }

    #[test]
    fn zero_operator_has_unit_cells() {
        let x = GradedNilpotent::new(GradedDims::from_pairs([(0, 4)]), BTreeMap::new()).unwrap();
        assert_eq!(jordan_census(&x), JordanCensus::from_cells([((0, 1), 4)]));
    }

    #[test]
    fn identity_chain_is_one_string() {
        let x = chain(&[(-2, 1), (0, 1), (2, 1)]);
        assert_eq!(jordan_census(&x), JordanCensus::from_cells([((-2, 3), 1)]));
        assert_eq!(spin_from_lefschetz(&x).unwrap(), SpinMultiset::irreducible(2));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let dims = GradedDims::from_pairs([(0, 2), (2, 1)]);
        let mut maps = BTreeMap::new();
        maps.insert(0, Matrix::identity(2));
        assert!(matches!(GradedNilpotent::new(dims, maps), Err(RepError::ShapeMismatch(_))));
    }

    #[test]
    fn realize_round_trips_census() {
        let v = BispinContent::from_triples([(2, 1, 2), (0, 2, 1), (1, 0, 3)]);
        let x = GradedNilpotent::realize(&v).unwrap();
        assert_eq!(jordan_census(&x), super::super::census_from_bispin(&v).unwrap());
    }

    #[test]
    fn asymmetric_cells_are_not_lefschetz() {
        let x = chain(&[(0, 1), (2, 1)]);
        assert!(spin_from_lefschetz(&x).is_err());
    }

    #[test]
    fn json_shape() {
        let x = chain(&[(-1, 1), (1, 1)]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"dims":{"-1":1,"1":1},"maps":{"-1":[["1"]]}}"#);
        let back: GradedNilpotent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        let bad = r#"{"dims":{"0":1,"2":1},"maps":{"0":[["1","2"]]}}"#;
        assert!(serde_json::from_str::<GradedNilpotent>(bad).is_err());
        let extra = r#"{"dims":{"0":1},"maps":{},"junk":1}"#;
        assert!(serde_json::from_str::<GradedNilpotent>(extra).is_err());
    }

    #[test]
    fn conjugation_keeps_census() {
        let v = BispinContent::from_triples([(1, 1, 1), (0, 0, 2)]);
        let x = GradedNilpotent::realize(&v).unwrap();
        let mut change = BTreeMap::new();
        for (&deg, &d) in &x.dims().0 {
            let mut p = Matrix::identity(d as usize);
            for i in 0..d as usize {
                for j in i + 1..d as usize {
                    p[(i, j)] = rat_int((i + 2 * j) as i64);
                }
            }
            change.insert(deg, p);
        }
        let y = x.conjugated(&change).unwrap();
        assert_eq!(jordan_census(&y), jordan_census(&x));
    }

    /// The operator as one dense matrix on the direct sum of all degrees.
    fn dense(x: &GradedNilpotent) -> Matrix {
        let mut offset = BTreeMap::new();
        let mut n = 0usize;
        for (&a, &d) in &x.dims().0 {
            offset.insert(a, n);
            n += d as usize;
        }
        let mut m = Matrix::zeros(n, n);
        for (&a, &src) in &offset {
            let Some(&dst) = offset.get(&(a + 2)) else { continue };
            let block = x.map_at(a);
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    m[(dst + i, src + j)] = block[(i, j)].clone();
                }
            }
        }
        m
    }

    /// Number of Jordan blocks of each length, from ranks of powers of the whole matrix.
    fn dense_block_lengths(m: &Matrix) -> BTreeMap<u32, u64> {
        let mut ranks = vec![m.rows()];
        let mut p = Matrix::identity(m.rows());
        while *ranks.last().unwrap() > 0 {
            p = &p * m;
            ranks.push(p.rank());
        }
        let at_least = |k: usize| ranks[k - 1] - ranks.get(k).copied().unwrap_or(0);
        let mut out = BTreeMap::new();
        for k in 1..ranks.len() {
            let exact = at_least(k) - if k + 1 < ranks.len() { at_least(k + 1) } else { 0 };
            if exact > 0 {
                out.insert(k as u32, exact as u64);
            }
        }
        out
    }

    fn arb_operator() -> impl Strategy<Value = GradedNilpotent> {
        prop::collection::vec(0u64..4, 1..5)
            .prop_flat_map(|ds| {
                let dims = GradedDims::from_pairs(ds.iter().enumerate().map(|(i, &d)| (2 * i as i64 - 2, d)));
                let sizes: Vec<usize> = ds.windows(2).map(|w| (w[0] * w[1]) as usize).collect();
                let entries = sizes.into_iter().map(|n| prop::collection::vec(-2i64..3, n)).collect::<Vec<_>>();
                (Just(dims), entries)
            })
            .prop_map(|(dims, entries)| {
                let mut maps = BTreeMap::new();
                for (i, e) in entries.into_iter().enumerate() {
                    let a = 2 * i as i64 - 2;
                    let (src, dst) = (dims.get(a) as usize, dims.get(a + 2) as usize);
                    let rows = (0..dst).map(|r| (0..src).map(|c| rat_int(e[r * src + c])).collect()).collect();
                    maps.insert(a, Matrix::from_rows(rows, src).unwrap());
                }
                GradedNilpotent::new(dims, maps).unwrap()
            })
    }

    proptest! {
        #[test]
        fn census_lengths_match_dense_jordan_type(x in arb_operator()) {
            let census = jordan_census(&x);
            let mut lengths: BTreeMap<u32, u64> = BTreeMap::new();
            for (_, l, n) in census.iter() {
                *lengths.entry(l).or_default() += u64::try_from(n).unwrap();
            }
            prop_assert_eq!(lengths, dense_block_lengths(&dense(&x)));
            prop_assert_eq!(census.total_dimension(), Int::from(x.dims().total()));
        }

        #[test]
        fn any_lefschetz_operator_gives_the_same_spins(
            top in 1u64..4,
            entries in prop::collection::vec(-3i64..4, 64),
        ) {
            // unimodal symmetric dims top-1, top, top-1 in degrees -2, 0, 2
            let dims = GradedDims::from_pairs([(-2, top - 1), (0, top), (2, top - 1)]);
            let (a, b) = ((top - 1) as usize, top as usize);
            let mut it = entries.into_iter().cycle();
            let mut take = |rows: usize, cols: usize| {
                let r = (0..rows).map(|_| (0..cols).map(|_| rat_int(it.next().unwrap())).collect()).collect();
                Matrix::from_rows(r, cols).unwrap()
            };
            let mut maps = BTreeMap::new();
            maps.insert(-2, take(b, a));
            maps.insert(0, take(a, b));
            let x = GradedNilpotent::new(dims.clone(), maps).unwrap();
            if let Ok(spins) = spin_from_lefschetz(&x) {
                prop_assert_eq!(spins, spin_decompose(&dims).unwrap());
            }
        }
    }

    #[test]
    fn two_operators_on_a_quadric() {
        let dims = GradedDims::from_pairs([(-2, 1), (0, 2), (2, 1)]);
        let col = |v: [i64; 2]| Matrix::from_rows(vec![vec![rat_int(v[0])], vec![rat_int(v[1])]], 1).unwrap();
        let row = |v: [i64; 2]| Matrix::from_rows(vec![vec![rat_int(v[0]), rat_int(v[1])]], 2).unwrap();
        let x1 = GradedNilpotent::new(dims.clone(), BTreeMap::from([(-2, col([1, 0])), (0, row([1, 0]))])).unwrap();
        let x2 = GradedNilpotent::new(dims.clone(), BTreeMap::from([(-2, col([1, 1])), (0, row([2, 3]))])).unwrap();
        let want = SpinMultiset::from_pairs([(2, 1), (0, 1)]);
        assert_eq!(spin_from_lefschetz(&x1).unwrap(), want);
        assert_eq!(spin_from_lefschetz(&x2).unwrap(), want);
        // L^2 = 0 here, so this one is not Lefschetz
        let x3 = GradedNilpotent::new(dims, BTreeMap::from([(-2, col([1, 1])), (0, row([1, -1]))])).unwrap();
        assert!(spin_from_lefschetz(&x3).is_err());
    }
}
