use super::hall::{Alphabet, FreeHallElement};
use super::lattice::{CentralCharge, ClassLattice, NumClass, Stability};
use super::CountingError;
use crate::algebra::{LaurentPoly, Rat, RationalFn};
use crate::motives::{betti_over_point, AbsMotive, MotiveExpr};
use crate::par;
use crate::stacks::{quotient_by_special_group, upsilon_stack, StackClass};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// How the value of a direct sum is assembled from the values of its summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combinator {
    /// Plain product of the summand values.
    Product,
    /// Clebsch-Gordan product in `s` over `Q(t)`: tensoring Jordan strings of
    /// lengths `b + 1` and `e + 1` gives lengths `b + e + 1 - 2i`.
    ClebschGordan,
    /// Explicit value per multiset of summand classes (sorted).
    Table(BTreeMap<Vec<NumClass>, StackClass>),
}

/// Split-stratum evaluation model: atom classes per effective class, a
/// symmetric Ext defect, and a direct-sum combinator.
///
/// A word `delta^(v_1) * ... * delta^(v_n)` evaluates to
/// `L^{sum_{i<j} e(v_i, v_j)}` times the combined atom values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalModel {
    atoms: BTreeMap<NumClass, StackClass>,
    values: BTreeMap<NumClass, RationalFn>,
    ext: BTreeMap<(NumClass, NumClass), i64>,
    combinator: Combinator,
    table_values: BTreeMap<Vec<NumClass>, RationalFn>,
}

impl EvalModel {
    /// Missing Ext entries are zero, so an entry without its transpose is
    /// only accepted when it is zero.
    pub fn new(
        atoms: BTreeMap<NumClass, StackClass>,
        ext_defect: Vec<(NumClass, NumClass, i64)>,
        combinator: Combinator,
    ) -> Result<Self, CountingError> {
        let mut ext: BTreeMap<(NumClass, NumClass), i64> = BTreeMap::new();
        for (a, b, e) in ext_defect {
            if let Some(&old) = ext.get(&(a.clone(), b.clone())) {
                if old != e {
                    return Err(CountingError::Schema(format!(
                        "conflicting ext entries for ({a}, {b}): {old} and {e}"
                    )));
                }
            }
            ext.insert((a, b), e);
        }
        for ((a, b), &e) in &ext {
            let t = ext.get(&(b.clone(), a.clone())).copied().unwrap_or(0);
            if t != e {
                return Err(CountingError::AsymmetricExtDefect {
                    v1: a.clone(),
                    v2: b.clone(),
                    forward: e,
                    backward: t,
                });
            }
        }
        ext.retain(|_, e| *e != 0);
        let keys: Vec<NumClass> = atoms.keys().cloned().collect();
        let values = par::map(&keys, |v| upsilon_stack(&atoms[v]).map(|x| (v.clone(), x)))
            .into_iter()
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        let table_values = match &combinator {
            Combinator::Table(t) => {
                let mut out = BTreeMap::new();
                for (k, c) in t {
                    let mut key = k.clone();
                    key.sort();
                    out.insert(key, upsilon_stack(c)?);
                }
                out
            }
            _ => BTreeMap::new(),
        };
        if combinator == Combinator::ClebschGordan {
            for (v, x) in &values {
                if !x.denom().is_s_free() {
                    return Err(CountingError::Schema(format!(
                        "atom {v} has s in its denominator; the Clebsch-Gordan combinator needs values over Q(t)[s]"
                    )));
                }
            }
        }
        Ok(EvalModel { atoms, values, ext, combinator, table_values })
    }

    pub fn atoms(&self) -> &BTreeMap<NumClass, StackClass> {
        &self.atoms
    }

    pub fn combinator(&self) -> &Combinator {
        &self.combinator
    }

    pub fn ext(&self, a: &NumClass, b: &NumClass) -> i64 {
        self.ext.get(&(a.clone(), b.clone())).copied().unwrap_or(0)
    }

    fn atom_value(&self, v: &NumClass) -> Result<&RationalFn, CountingError> {
        self.values.get(v).ok_or_else(|| CountingError::MissingAtom(v.clone()))
    }

    fn combine(&self, word: &[NumClass]) -> Result<RationalFn, CountingError> {
        let vals = word.iter().map(|v| self.atom_value(v)).collect::<Result<Vec<_>, _>>()?;
        if word.len() == 1 {
            return Ok(vals[0].clone());
        }
        match &self.combinator {
            Combinator::Product => Ok(vals.into_iter().fold(RationalFn::one(), |a, b| &a * b)),
            Combinator::ClebschGordan => {
                let mut num = LaurentPoly::one();
                let mut den = LaurentPoly::one();
                for v in vals {
                    num = cg_product(&num, v.numer());
                    den = den * v.denom().clone();
                }
                Ok(RationalFn::new(num, den)?)
            }
            Combinator::Table(_) => {
                let mut key = word.to_vec();
                key.sort();
                self.table_values.get(&key).cloned().ok_or(CountingError::MissingCombination(key))
            }
        }
    }

    fn word_value(&self, word: &[NumClass]) -> Result<RationalFn, CountingError> {
        let mut e = 0i64;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                e += self.ext(&word[i], &word[j]);
            }
        }
        let l = if e >= 0 {
            RationalFn::from(LaurentPoly::t_pow(2 * e))
        } else {
            RationalFn::from(LaurentPoly::t_pow(-2 * e)).inverse()?
        };
        Ok(&l * &self.combine(word)?)
    }
}

/// `t^a s^b (x) t^c s^e = sum_{i=0}^{min(b,e)} t^{a+c+2i} s^{b+e-2i}`.
pub fn cg_product(x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m1, c1) in x.terms() {
        for (m2, c2) in y.terms() {
            for i in 0..=m1.s.min(m2.s) {
                out += &LaurentPoly::monomial(m1.t + m2.t + 2 * i64::from(i), m1.s + m2.s - 2 * i, c1 * c2);
            }
        }
    }
    out
}

/// `Y'(f)` for a combination of `delta`-words.
pub fn eval(f: &FreeHallElement, m: &EvalModel) -> Result<RationalFn, CountingError> {
    if f.alphabet() != Alphabet::Delta {
        return Err(CountingError::Schema("only delta-words can be evaluated".into()));
    }
    let words: Vec<(&Vec<NumClass>, &Rat)> = f.terms().collect();
    let parts = par::map(&words, |(w, c)| m.word_value(w).map(|x| x.scale_rat(c)));
    let mut acc = RationalFn::zero();
    for p in parts {
        acc = &acc + &p?;
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum CombinatorDoc {
    Product,
    ClebschGordan,
    Table(Vec<(Vec<NumClass>, StackClass)>),
}

/// JSON form of a counting model.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub lattice: ClassLattice,
    pub charge: CentralCharge,
    pub atoms: BTreeMap<NumClass, StackClass>,
    #[serde(default)]
    pub ext_defect: Vec<(NumClass, NumClass, i64)>,
    #[serde(default = "default_combinator")]
    combinator: CombinatorDoc,
}

fn default_combinator() -> CombinatorDoc {
    CombinatorDoc::Product
}

impl ModelDoc {
    pub fn build(self) -> Result<(Stability, EvalModel), CountingError> {
        let stab = Stability::new(self.lattice, self.charge)?;
        let rank = stab.lattice().rank;
        let bad_rank = |v: &NumClass| v.beta.len() != rank;
        if let Some(v) = self.atoms.keys().find(|v| bad_rank(v)) {
            return Err(CountingError::Schema(format!("atom class {v} does not have rank {rank}")));
        }
        if let Some((a, _, _)) = self.ext_defect.iter().find(|(a, b, _)| bad_rank(a) || bad_rank(b)) {
            return Err(CountingError::Schema(format!("ext entry for {a} has the wrong rank")));
        }
        let combinator = match self.combinator {
            CombinatorDoc::Product => Combinator::Product,
            CombinatorDoc::ClebschGordan => Combinator::ClebschGordan,
            CombinatorDoc::Table(t) => Combinator::Table(t.into_iter().collect()),
        };
        let model = EvalModel::new(self.atoms, self.ext_defect, combinator)?;
        Ok((stab, model))
    }

    pub fn from_parts(stab: &Stability, model: &EvalModel) -> Self {
        let combinator = match &model.combinator {
            Combinator::Product => CombinatorDoc::Product,
            Combinator::ClebschGordan => CombinatorDoc::ClebschGordan,
            Combinator::Table(t) => CombinatorDoc::Table(t.clone().into_iter().collect()),
        };
        ModelDoc {
            lattice: stab.lattice().clone(),
            charge: stab.charge().clone(),
            atoms: model.atoms.clone(),
            ext_defect: model.ext.iter().map(|((a, b), e)| (a.clone(), b.clone(), *e)).collect(),
            combinator,
        }
    }
}

fn rank_one_lattice() -> Result<Stability, CountingError> {
    Stability::new(
        ClassLattice { rank: 1, generators: vec![vec![1]] },
        CentralCharge::new(vec![Rat::from_integer(0.into())], vec![Rat::from_integer(1.into())]),
    )
}

/// Resolved conifold with the point-moduli model: the classes `([C], +-1)`
/// carry `[pt / Gm]`; multiples of `[C]` up to `max_multiple` and the point
/// class `(0, 1)` carry the empty class.
pub fn conifold_point_model(max_multiple: i64) -> Result<(Stability, EvalModel), CountingError> {
    let stab = rank_one_lattice()?;
    let pt_gm = quotient_by_special_group(&MotiveExpr::point(), &AbsMotive::Gm)?;
    let mut atoms = BTreeMap::new();
    atoms.insert(NumClass::new(vec![0], 1), StackClass::zero());
    for m in 1..=max_multiple {
        for k in [-1, 1] {
            let value = if m == 1 { pt_gm.clone() } else { StackClass::zero() };
            atoms.insert(NumClass::new(vec![m], k), value);
        }
    }
    let model = EvalModel::new(atoms, Vec::new(), Combinator::Product)?;
    Ok((stab, model))
}

/// Zero-dimensional sheaves of length one on a Calabi-Yau 3-fold with the
/// given betti numbers: the class `(0, 1)` carries `[X / Gm]` with `X` mapping
/// to a point.
pub fn cy3_point_model(b2: u64, b3: u64) -> Result<(Stability, EvalModel), CountingError> {
    let stab = rank_one_lattice()?;
    let x = betti_over_point("X", &[1, 0, b2, b3, b2, 0, 1])?;
    let mut atoms = BTreeMap::new();
    atoms.insert(NumClass::new(vec![0], 1), quotient_by_special_group(&x, &AbsMotive::Gm)?);
    let model = EvalModel::new(atoms, Vec::new(), Combinator::Product)?;
    Ok((stab, model))
}
