//! Numerical classes with an exact central charge, the epsilon/delta
//! inclusion-exclusion over same-phase decompositions, the split-stratum
//! evaluation model and the genus-`g` invariants read off from `P(v)`.
//!
//! The Hall product is free concatenation of letters; all geometry enters
//! through [`EvalModel`]. This is exact when every stratum is split with
//! constant Ext data.

mod hall;
mod lattice;
mod model;

pub use hall::{
    delta_from_epsilon, epsilon_formal, log_exp_round_trip, same_phase_decompositions, Alphabet, FreeHallElement,
    DEFAULT_MAX_COMPOSITIONS,
};
pub use lattice::{CentralCharge, ClassLattice, NumClass, Phase, Stability};
pub use model::{cg_product, conifold_point_model, cy3_point_model, eval, Combinator, EvalModel, ModelDoc};

use crate::algebra::{AlgebraError, Int, LaurentPoly, RationalFn};
use crate::lefschetz::{alt_ng, JordanCensus};
use crate::motives::MotiveError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("class {0} is not effective")]
    NotEffective(NumClass),
    #[error("effective cone is not pointed: {0}")]
    ConeNotPointed(String),
    #[error("central charge vanishes on {0}")]
    ZeroCharge(NumClass),
    #[error("more than {0} decompositions; raise the composition cap")]
    ResourceLimit(usize),
    #[error("model has no atom for class {0}")]
    MissingAtom(NumClass),
    #[error("model table has no entry for the direct sum {0:?}")]
    MissingCombination(Vec<NumClass>),
    #[error("ext defect is not symmetric: e({v1}, {v2}) = {forward} but e({v2}, {v1}) = {backward}")]
    AsymmetricExtDefect { v1: NumClass, v2: NumClass, forward: i64, backward: i64 },
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Motive(#[from] MotiveError),
    #[error("P(v) = {0} is not a Laurent polynomial")]
    NotPolynomial(String),
    #[error("P(v) has odd m-degree {0}")]
    OddMDegree(i64),
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl From<AlgebraError> for CountingError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::OddMDegree(m) => CountingError::OddMDegree(m),
            e => CountingError::Algebra(e),
        }
    }
}

/// `P(v)`: `(L - 1) eval(epsilon(v))` on the effective range, `P(-v)` on its
/// negative, zero elsewhere.
#[allow(non_snake_case)]
pub fn P_of_v(stab: &Stability, model: &EvalModel, v: &NumClass, cap: usize) -> Result<RationalFn, CountingError> {
    if stab.in_effective_range(v) {
        let eps = epsilon_formal(stab, v, cap)?;
        let gm = RationalFn::from(LaurentPoly::lefschetz() - LaurentPoly::one());
        return Ok(&gm * &eval(&eps, model)?);
    }
    let neg = -v;
    if stab.in_effective_range(&neg) {
        return P_of_v(stab, model, &neg, cap);
    }
    Ok(RationalFn::zero())
}

/// Jordan census of `flat(p)`; the empty census for `p = 0`.
pub fn census_of_p(p: &RationalFn) -> Result<JordanCensus, CountingError> {
    let poly = p.as_polynomial().ok_or_else(|| CountingError::NotPolynomial(p.to_string()))?;
    if poly.is_zero() {
        return Ok(JordanCensus::new());
    }
    Ok(JordanCensus::from_poly(&poly.flat()?))
}

/// `n_g` from `P(v)` via the closed formula on the census of `flat(P)`.
#[allow(non_snake_case)]
pub fn ng_from_P(p: &RationalFn, g: u32) -> Result<Int, CountingError> {
    Ok(alt_ng(&census_of_p(p)?, g))
}

/// `n_0, ..., n_{genus_max}` from `P(v)`.
#[allow(non_snake_case)]
pub fn ng_range_from_P(p: &RationalFn, genus_max: u32) -> Result<Vec<Int>, CountingError> {
    let census = census_of_p(p)?;
    Ok((0..=genus_max).map(|g| alt_ng(&census, g)).collect())
}
