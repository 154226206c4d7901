//! The Gopakumar-Vafa / Gromov-Witten transform on truncated exact series:
//!
//! `sum N_g^beta q^beta lambda^{2g-2} = sum n_g^beta / k (2 sin(k lambda / 2))^{2g-2} q^{k beta}`.
//!
//! Classes are truncated by the degree `omega . beta` for a positive integer
//! functional `omega` (all ones unless given).

use crate::algebra::serde_num::{format_rat, JsonInt, JsonRat};
use crate::algebra::{Int, Rat};
use crate::par;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("degree functional is not positive on {0:?}; the cone is not pointed")]
    ConeNotPointed(Vec<i64>),
    #[error("{0}")]
    OutsideCuts(String),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("non-integral invariants: {}", .0.join(", "))]
    NonIntegral(Vec<String>),
    #[error("{0}")]
    Schema(String),
}

/// Coefficients of `(sin u / u)^p` in `y = u^2`, up to `y^order`.
///
/// Uses `b_n = (1/n) sum_{k=1}^n (k(p+1) - n) a_k b_{n-k}` for `b = a^p`, `a_0 = 1`.
pub fn sinc_power(p: i64, order: usize) -> Vec<Rat> {
    let mut a = vec![Rat::one()];
    let mut fact = Int::one();
    for j in 1..=order {
        fact *= Int::from(2 * j) * Int::from(2 * j + 1);
        let sign = if j % 2 == 0 { Int::one() } else { -Int::one() };
        a.push(Rat::new(sign, fact.clone()));
    }
    let mut b = vec![Rat::one()];
    for n in 1..=order {
        let mut acc = Rat::zero();
        for k in 1..=n {
            let w = Int::from(k as i64 * (p + 1) - n as i64);
            acc += Rat::from_integer(w) * &a[k] * &b[n - k];
        }
        b.push(acc / Rat::from_integer(Int::from(n)));
    }
    b
}

/// `[lambda^e] (2 sin(k lambda / 2))^{2g-2}`.
pub fn two_sin_coeff(g: u32, k: u64, e: i64) -> Rat {
    let p = 2 * i64::from(g) - 2;
    if e < p || (e - p) % 2 != 0 {
        return Rat::zero();
    }
    let m = ((e - p) / 2) as usize;
    let c = &sinc_power(p, m)[m];
    scaled_coeff(c, k, e, m)
}

fn scaled_coeff(c: &Rat, k: u64, e: i64, m: usize) -> Rat {
    let kp = if e >= 0 {
        Rat::from_integer(Int::from(k).pow(e as u32))
    } else {
        Rat::new(Int::one(), Int::from(k).pow((-e) as u32))
    };
    c * kp / Rat::from_integer(Int::from(4).pow(m as u32))
}

fn degree(omega: &[i64], beta: &[i64]) -> Result<u64, GwError> {
    let d: i64 = omega.iter().zip(beta).map(|(w, b)| w * b).sum();
    u64::try_from(d).ok().filter(|d| *d > 0).ok_or_else(|| GwError::ConeNotPointed(beta.to_vec()))
}

fn check_rank(omega: &[i64], beta: &[i64]) -> Result<(), GwError> {
    if beta.len() == omega.len() {
        Ok(())
    } else {
        Err(GwError::Schema(format!("class {beta:?} does not have rank {}", omega.len())))
    }
}

/// `beta / k` when every coordinate is divisible by `k`.
fn divide(beta: &[i64], k: u64) -> Option<Vec<i64>> {
    let k = k as i64;
    beta.iter().all(|b| b % k == 0).then(|| beta.iter().map(|b| b / k).collect())
}

/// Integer table `n_g^beta` within genus and degree cutoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVTable {
    omega: Vec<i64>,
    genus_max: u32,
    degree_max: u64,
    entries: BTreeMap<(u32, Vec<i64>), Int>,
}

impl GVTable {
    pub fn new(omega: Vec<i64>, genus_max: u32, degree_max: u64) -> Self {
        GVTable { omega, genus_max, degree_max, entries: BTreeMap::new() }
    }

    /// Adds `n` to `n_g^beta`.
    pub fn insert(&mut self, g: u32, beta: Vec<i64>, n: Int) -> Result<(), GwError> {
        check_rank(&self.omega, &beta)?;
        let d = degree(&self.omega, &beta)?;
        if g > self.genus_max || d > self.degree_max {
            return Err(GwError::OutsideCuts(format!(
                "entry (g = {g}, beta = {beta:?}) lies outside genus <= {}, degree <= {}",
                self.genus_max, self.degree_max
            )));
        }
        let slot = self.entries.entry((g, beta)).or_default();
        *slot += n;
        if slot.is_zero() {
            self.entries.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn omega(&self) -> &[i64] {
        &self.omega
    }

    pub fn genus_max(&self) -> u32 {
        self.genus_max
    }

    pub fn degree_max(&self) -> u64 {
        self.degree_max
    }

    pub fn get(&self, g: u32, beta: &[i64]) -> Int {
        self.entries.get(&(g, beta.to_vec())).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Vec<i64>, &Int)> {
        self.entries.iter().map(|((g, b), n)| (*g, b, n))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Truncated series `sum N^beta_e q^beta lambda^e` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWSeries {
    omega: Vec<i64>,
    degree_max: u64,
    lambda_max: i64,
    coeffs: BTreeMap<(Vec<i64>, i64), Rat>,
}

impl GWSeries {
    pub fn new(omega: Vec<i64>, degree_max: u64, lambda_max: i64) -> Self {
        GWSeries { omega, degree_max, lambda_max, coeffs: BTreeMap::new() }
    }

    /// Adds `c` to the coefficient of `q^beta lambda^e`.
    pub fn insert(&mut self, beta: Vec<i64>, e: i64, c: Rat) -> Result<(), GwError> {
        check_rank(&self.omega, &beta)?;
        let d = degree(&self.omega, &beta)?;
        if e < -2 || e % 2 != 0 {
            return Err(GwError::Schema(format!("lambda exponent {e} must be even and at least -2")));
        }
        if e > self.lambda_max || d > self.degree_max {
            return Err(GwError::OutsideCuts(format!(
                "coefficient (beta = {beta:?}, lambda^{e}) lies outside degree <= {}, lambda order <= {}",
                self.degree_max, self.lambda_max
            )));
        }
        let slot = self.coeffs.entry((beta, e)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn omega(&self) -> &[i64] {
        &self.omega
    }

    pub fn degree_max(&self) -> u64 {
        self.degree_max
    }

    pub fn lambda_max(&self) -> i64 {
        self.lambda_max
    }

    pub fn get(&self, beta: &[i64], e: i64) -> Rat {
        self.coeffs.get(&(beta.to_vec(), e)).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<i64>, i64, &Rat)> {
        self.coeffs.iter().map(|((b, e), c)| (b, *e, c))
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Expands the transform of `t` up to degree `degree_cut` and `lambda^lambda_cut`.
/// One `((beta, lambda exponent), coefficient)` term of the transform.
type Contribution = ((Vec<i64>, i64), Rat);

pub fn gv_to_gw(t: &GVTable, degree_cut: u64, lambda_cut: i64) -> Result<GWSeries, GwError> {
    let entries: Vec<(u32, Vec<i64>, Int)> = t.entries().map(|(g, b, n)| (g, b.clone(), n.clone())).collect();
    let order = usize::try_from((lambda_cut + 2).max(0) / 2).unwrap_or(0);
    let genera: BTreeSet<u32> = entries.iter().map(|e| e.0).collect();
    let sinc: BTreeMap<u32, Vec<Rat>> =
        genera.into_iter().map(|g| (g, sinc_power(2 * i64::from(g) - 2, order))).collect();
    let parts = par::map(&entries, |(g, beta, n)| -> Result<Vec<Contribution>, GwError> {
        let d = degree(&t.omega, beta)?;
        let p = 2 * i64::from(*g) - 2;
        let mut out = Vec::new();
        let mut k = 1u64;
        while k * d <= degree_cut {
            let kb: Vec<i64> = beta.iter().map(|b| b * k as i64).collect();
            let prefactor = Rat::new(n.clone(), Int::from(k));
            let mut e = p;
            while e <= lambda_cut {
                let m = ((e - p) / 2) as usize;
                let c = scaled_coeff(&sinc[g][m], k, e, m) * &prefactor;
                if !c.is_zero() {
                    out.push(((kb.clone(), e), c));
                }
                e += 2;
            }
            k += 1;
        }
        Ok(out)
    });
    let mut s = GWSeries::new(t.omega.clone(), degree_cut, lambda_cut);
    for part in parts {
        for ((beta, e), c) in part? {
            *s.coeffs.entry((beta, e)).or_default() += c;
        }
    }
    s.coeffs.retain(|_, c| !c.is_zero());
    Ok(s)
}

/// Rational solution of the inverse transform; non-integral values are kept
/// and reported in `warnings`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GvSolution {
    pub omega: Vec<i64>,
    pub genus_max: u32,
    pub degree_max: u64,
    pub values: BTreeMap<(u32, Vec<i64>), Rat>,
    pub warnings: Vec<String>,
}

impl GvSolution {
    pub fn get(&self, g: u32, beta: &[i64]) -> Rat {
        self.values.get(&(g, beta.to_vec())).cloned().unwrap_or_default()
    }

    pub fn integral_table(&self) -> Result<GVTable, GwError> {
        if !self.warnings.is_empty() {
            return Err(GwError::NonIntegral(self.warnings.clone()));
        }
        let mut t = GVTable::new(self.omega.clone(), self.genus_max, self.degree_max);
        for ((g, b), v) in &self.values {
            t.insert(*g, b.clone(), v.to_integer())?;
        }
        Ok(t)
    }
}

/// Triangular solve for `n_g^beta`, by degree and then genus, for
/// `g <= genus_max` (default: every genus the lambda order determines).
pub fn gw_to_gv(s: &GWSeries, genus_max: Option<u32>) -> Result<GvSolution, GwError> {
    let supported = if s.lambda_max < -2 { None } else { Some(((s.lambda_max + 2) / 2) as u32) };
    let gmax = match (genus_max, supported) {
        (Some(g), Some(top)) if g <= top => g,
        (None, Some(top)) => top,
        (req, _) => {
            return Err(GwError::InsufficientTruncation(format!(
                "genus {} needs the lambda^{} coefficients but the series stops at lambda^{}",
                req.unwrap_or(0),
                2 * i64::from(req.unwrap_or(0)) - 2,
                s.lambda_max
            )))
        }
    };
    let mut levels: BTreeMap<u64, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for beta in s.coeffs.keys().map(|(b, _)| b) {
        let d = degree(&s.omega, beta)?;
        for k in 1..=d {
            if let Some(b) = divide(beta, k) {
                levels.entry(d / k).or_default().insert(b);
            }
        }
    }
    let sinc: Vec<Vec<Rat>> = (0..=gmax).map(|g| sinc_power(2 * i64::from(g) - 2, gmax as usize)).collect();
    let mut solved: BTreeMap<(u32, Vec<i64>), Rat> = BTreeMap::new();
    for (d, betas) in levels {
        let betas: Vec<Vec<i64>> = betas.into_iter().collect();
        let cols = par::map(&betas, |beta| {
            let mut col: Vec<Rat> = Vec::new();
            for g in 0..=gmax {
                let e = 2 * i64::from(g) - 2;
                let mut v = s.get(beta, e);
                for k in 1..=d {
                    let Some(b) = divide(beta, k) else { continue };
                    for g2 in 0..=g {
                        if k == 1 && g2 == g {
                            continue;
                        }
                        let n = if k == 1 {
                            col[g2 as usize].clone()
                        } else {
                            solved.get(&(g2, b.clone())).cloned().unwrap_or_default()
                        };
                        if n.is_zero() {
                            continue;
                        }
                        let m = (g - g2) as usize;
                        v -= n * scaled_coeff(&sinc[g2 as usize][m], k, e, m) / Rat::from_integer(Int::from(k));
                    }
                }
                col.push(v);
            }
            col
        });
        for (beta, col) in betas.into_iter().zip(cols) {
            for (g, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    solved.insert((g as u32, beta.clone()), v);
                }
            }
        }
    }
    let warnings = solved
        .iter()
        .filter(|(_, v)| !v.is_integer())
        .map(|((g, b), v)| format!("n_{g}^{b:?} = {}", format_rat(v)))
        .collect();
    Ok(GvSolution { omega: s.omega.clone(), genus_max: gmax, degree_max: s.degree_max, values: solved, warnings })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GvCuts {
    genus_max: u32,
    degree_max: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<Vec<i64>>,
}

/// JSON form `{entries: [[g, beta, n]], cuts: {genus_max, degree_max, omega?}}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GvTableDoc {
    entries: Vec<(u32, Vec<i64>, JsonInt)>,
    cuts: GvCuts,
}

fn infer_omega<'a>(omega: Option<Vec<i64>>, mut classes: impl Iterator<Item = &'a Vec<i64>>) -> Vec<i64> {
    omega.unwrap_or_else(|| vec![1; classes.next().map_or(1, Vec::len)])
}

impl TryFrom<GvTableDoc> for GVTable {
    type Error = GwError;
    fn try_from(d: GvTableDoc) -> Result<Self, GwError> {
        let omega = infer_omega(d.cuts.omega, d.entries.iter().map(|e| &e.1));
        let mut t = GVTable::new(omega, d.cuts.genus_max, d.cuts.degree_max);
        for (g, b, n) in d.entries {
            t.insert(g, b, n.0)?;
        }
        Ok(t)
    }
}

impl From<&GVTable> for GvTableDoc {
    fn from(t: &GVTable) -> Self {
        GvTableDoc {
            entries: t.entries().map(|(g, b, n)| (g, b.clone(), JsonInt(n.clone()))).collect(),
            cuts: GvCuts { genus_max: t.genus_max, degree_max: t.degree_max, omega: Some(t.omega.clone()) },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GwCuts {
    degree_max: u64,
    lambda_max: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<Vec<i64>>,
}

/// JSON form `{coeffs: [[beta, e, "p/q"]], cuts: {degree_max, lambda_max, omega?}}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GwSeriesDoc {
    coeffs: Vec<(Vec<i64>, i64, JsonRat)>,
    cuts: GwCuts,
}

impl TryFrom<GwSeriesDoc> for GWSeries {
    type Error = GwError;
    fn try_from(d: GwSeriesDoc) -> Result<Self, GwError> {
        let omega = infer_omega(d.cuts.omega, d.coeffs.iter().map(|e| &e.0));
        let mut s = GWSeries::new(omega, d.cuts.degree_max, d.cuts.lambda_max);
        for (b, e, c) in d.coeffs {
            s.insert(b, e, c.0)?;
        }
        Ok(s)
    }
}

impl From<&GWSeries> for GwSeriesDoc {
    fn from(s: &GWSeries) -> Self {
        GwSeriesDoc {
            coeffs: s.coeffs().map(|(b, e, c)| (b.clone(), e, JsonRat(c.clone()))).collect(),
            cuts: GwCuts { degree_max: s.degree_max, lambda_max: s.lambda_max, omega: Some(s.omega.clone()) },
        }
    }
}

/// JSON form of a [`GvSolution`]: exact rational entries plus warnings.
#[derive(Serialize)]
pub struct GvSolutionDoc {
    entries: Vec<(u32, Vec<i64>, JsonRat)>,
    cuts: GvCuts,
    warnings: Vec<String>,
}

impl From<&GvSolution> for GvSolutionDoc {
    fn from(s: &GvSolution) -> Self {
        GvSolutionDoc {
            entries: s.values.iter().map(|((g, b), v)| (*g, b.clone(), JsonRat(v.clone()))).collect(),
            cuts: GvCuts { genus_max: s.genus_max, degree_max: s.degree_max, omega: Some(s.omega.clone()) },
            warnings: s.warnings.clone(),
        }
    }
}

impl Serialize for GVTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GvTableDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GVTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GvTableDoc::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

impl Serialize for GWSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GwSeriesDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GWSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GwSeriesDoc::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// The conifold table `n_0^{[C]} = 1`.
pub fn conifold_gv(genus_max: u32, degree_max: u64) -> GVTable {
    let mut t = GVTable::new(vec![1], genus_max, degree_max);
    if degree_max >= 1 {
        t.insert(0, vec![1], Int::one()).expect("within cuts");
    }
    t
}
