//! Expressions in the relative Grothendieck ring `K0(Var/A)` and the motivic
//! measure `Upsilon_A` valued in `Z[t, t^-1, s]`.
//!
//! The ring itself is never quotiented: expressions are free trees and only
//! their values are compared.

mod abs;

pub use abs::AbsMotive;

use crate::algebra::LaurentPoly;
use crate::lefschetz::JordanCensus;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("betti numbers are not symmetric under Poincare duality: {0:?}")]
    NotDualitySymmetric(Vec<u64>),
    #[error("betti numbers violate hard Lefschetz (b_i < b_(i-2) below the middle): {0:?}")]
    NotHardLefschetz(Vec<u64>),
    #[error("betti list must have odd length 2d+1, got {0}")]
    BadBettiLength(usize),
    #[error("absolute class must not involve s: {0}")]
    NotAbsolute(String),
    #[error("group class evaluates to zero")]
    ZeroGroupClass,
}

/// A node of a `K0(Var/A)` expression tree.
///
/// Atoms carry Jordan censuses already taken relative to their base, so the
/// base itself never needs to be represented.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MotiveExpr {
    Atom {
        name: String,
        dim: i64,
        census: JordanCensus,
    },
    /// Smooth projective variety over itself, given by betti numbers `b_0..b_2d`.
    SmoothBetti {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        betti: Vec<u64>,
    },
    /// Variety over a point, given by betti numbers `b_0..b_2d`: every cell has
    /// length one.
    BettiOverPoint {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        betti: Vec<u64>,
    },
    /// Disjoint union; the empty sum is the empty variety.
    Sum {
        terms: Vec<MotiveExpr>,
    },
    Diff {
        plus: Box<MotiveExpr>,
        minus: Box<MotiveExpr>,
    },
    IntScale {
        n: i64,
        expr: Box<MotiveExpr>,
    },
    AbsProduct {
        factor: AbsMotive,
        expr: Box<MotiveExpr>,
    },
    /// `P^{r-1}`-bundle over `base`.
    ProjBundle {
        base: Box<MotiveExpr>,
        r: u32,
    },
    /// Blow-up of `ambient` along `center` of codimension `r`.
    BlowUpRel {
        ambient: Box<MotiveExpr>,
        center: Box<MotiveExpr>,
        r: u32,
    },
    /// Zariski locally trivial fibration over `base` with fiber `fiber`.
    Fibration {
        base: Box<MotiveExpr>,
        fiber: AbsMotive,
    },
    FinitePush {
        expr: Box<MotiveExpr>,
    },
}

impl MotiveExpr {
    pub fn zero() -> Self {
        MotiveExpr::Sum { terms: Vec::new() }
    }

    /// A point over itself.
    pub fn point() -> Self {
        MotiveExpr::Atom { name: "pt".into(), dim: 0, census: JordanCensus::from_cells([((0, 1), 1)]) }
    }

    pub fn sum(terms: Vec<MotiveExpr>) -> Self {
        MotiveExpr::Sum { terms }
    }

    pub fn diff(plus: MotiveExpr, minus: MotiveExpr) -> Self {
        MotiveExpr::Diff { plus: Box::new(plus), minus: Box::new(minus) }
    }

    pub fn scaled(n: i64, expr: MotiveExpr) -> Self {
        MotiveExpr::IntScale { n, expr: Box::new(expr) }
    }

    pub fn abs_product(factor: AbsMotive, expr: MotiveExpr) -> Self {
        MotiveExpr::AbsProduct { factor, expr: Box::new(expr) }
    }

    pub fn proj_bundle(base: MotiveExpr, r: u32) -> Self {
        MotiveExpr::ProjBundle { base: Box::new(base), r }
    }

    pub fn blow_up(ambient: MotiveExpr, center: MotiveExpr, r: u32) -> Self {
        MotiveExpr::BlowUpRel { ambient: Box::new(ambient), center: Box::new(center), r }
    }

    pub fn fibration(base: MotiveExpr, fiber: AbsMotive) -> Self {
        MotiveExpr::Fibration { base: Box::new(base), fiber }
    }

    pub fn finite_push(expr: MotiveExpr) -> Self {
        MotiveExpr::FinitePush { expr: Box::new(expr) }
    }

    /// Dimension; `None` for the empty variety.
    pub fn dim(&self) -> Result<Option<i64>, MotiveError> {
        Ok(self.evaluate()?.1)
    }

    /// Built only from atoms with nonnegative censuses and constructors that
    /// keep the top-weight part positive (no differences or negative scalars).
    pub fn is_geometric(&self) -> bool {
        match self {
            MotiveExpr::Atom { census, .. } => !census.has_negative(),
            MotiveExpr::SmoothBetti { .. } | MotiveExpr::BettiOverPoint { .. } => true,
            MotiveExpr::Sum { terms } => terms.iter().all(Self::is_geometric),
            MotiveExpr::Diff { .. } => false,
            MotiveExpr::IntScale { n, expr } => *n > 0 && expr.is_geometric(),
            MotiveExpr::AbsProduct { factor: t, expr: e } | MotiveExpr::Fibration { base: e, fiber: t } => {
                t.value().leading().is_some_and(|(_, c)| c.is_positive()) && e.is_geometric()
            }
            MotiveExpr::ProjBundle { base, .. } => base.is_geometric(),
            MotiveExpr::BlowUpRel { ambient, center, .. } => ambient.is_geometric() && center.is_geometric(),
            MotiveExpr::FinitePush { expr } => expr.is_geometric(),
        }
    }

    fn evaluate(&self) -> Result<(LaurentPoly, Option<i64>), MotiveError> {
        match self {
            MotiveExpr::Atom { name, dim, census } => {
                check_atom(name, *dim, census)?;
                Ok((census.to_poly().shift(*dim, 0), Some(*dim)))
            }
            MotiveExpr::SmoothBetti { name, betti } => {
                smooth_from_betti(name.as_deref().unwrap_or("X"), betti)?.evaluate()
            }
            MotiveExpr::BettiOverPoint { name, betti } => {
                betti_over_point(name.as_deref().unwrap_or("X"), betti)?.evaluate()
            }
            MotiveExpr::Sum { terms } => {
                let mut acc = LaurentPoly::zero();
                let mut dim = None;
                for t in terms {
                    let (v, d) = t.evaluate()?;
                    acc += &v;
                    dim = max_dim(dim, d);
                }
                Ok((acc, dim))
            }
            MotiveExpr::Diff { plus, minus } => {
                let (a, da) = plus.evaluate()?;
                let (b, db) = minus.evaluate()?;
                Ok((a - b, max_dim(da, db)))
            }
            MotiveExpr::IntScale { n, expr } => {
                let (v, d) = expr.evaluate()?;
                Ok((v.scale(&(*n).into()), d))
            }
            MotiveExpr::AbsProduct { factor: t, expr: e } | MotiveExpr::Fibration { base: e, fiber: t } => {
                t.validate()?;
                let (v, d) = e.evaluate()?;
                let dim = match (d, t.dim()) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                };
                Ok((t.value() * v, dim))
            }
            MotiveExpr::ProjBundle { base, r } => {
                if *r < 1 {
                    return Err(MotiveError::DimMismatch("projective bundle needs rank r >= 1".into()));
                }
                let (v, d) = base.evaluate()?;
                Ok((v * LaurentPoly::geometric_t2(*r), d.map(|d| d + i64::from(*r) - 1)))
            }
            MotiveExpr::BlowUpRel { ambient, center, r } => {
                let (x, dx) = ambient.evaluate()?;
                let (z, dz) = center.evaluate()?;
                check_blowup_dims(dx, dz, *r)?;
                let t2 = LaurentPoly::lefschetz();
                Ok((x + t2.clone() * LaurentPoly::geometric_t2(*r - 1) * z, dx))
            }
            MotiveExpr::FinitePush { expr } => expr.evaluate(),
        }
    }
}

fn max_dim(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn check_atom(name: &str, dim: i64, census: &JordanCensus) -> Result<(), MotiveError> {
    if dim < 0 {
        return Err(MotiveError::DimMismatch(format!("atom {name} has negative dimension {dim}")));
    }
    for (alpha, l, _) in census.iter() {
        let top = alpha + 2 * (i64::from(l) - 1);
        if alpha < -dim || top > dim {
            return Err(MotiveError::DimMismatch(format!(
                "atom {name}: cell of length {l} at degree {alpha} leaves [-{dim}, {dim}]"
            )));
        }
    }
    Ok(())
}

fn check_blowup_dims(dx: Option<i64>, dz: Option<i64>, r: u32) -> Result<(), MotiveError> {
    if r < 2 {
        return Err(MotiveError::DimMismatch(format!("blow-up codimension must be >= 2, got {r}")));
    }
    if let (Some(dx), Some(dz)) = (dx, dz) {
        if dx != dz + i64::from(r) {
            return Err(MotiveError::DimMismatch(format!(
                "ambient dimension {dx} != center dimension {dz} + codimension {r}"
            )));
        }
    }
    Ok(())
}

fn betti_dim(betti: &[u64]) -> Result<i64, MotiveError> {
    if betti.len().is_multiple_of(2) {
        return Err(MotiveError::BadBettiLength(betti.len()));
    }
    Ok((betti.len() / 2) as i64)
}

/// Atom of a smooth projective variety over itself.
///
/// The census has `nu_{1-alpha}^alpha = b_{d+alpha} - b_{d+alpha-2}` for
/// `-d <= alpha <= 0`, so `upsilon_rel` is `sum (b_i - b_{i-2}) t^i s^{d-i}`.
pub fn smooth_from_betti(name: &str, betti: &[u64]) -> Result<MotiveExpr, MotiveError> {
    let d = betti_dim(betti)?;
    let n = betti.len();
    if (0..n).any(|i| betti[i] != betti[n - 1 - i]) {
        return Err(MotiveError::NotDualitySymmetric(betti.to_vec()));
    }
    let b = |i: i64| if i < 0 { 0 } else { betti[i as usize] };
    if (2..=d).any(|i| b(i) < b(i - 2)) {
        return Err(MotiveError::NotHardLefschetz(betti.to_vec()));
    }
    let cells =
        (-d..=0).map(|alpha| ((alpha, (1 - alpha) as u32), i128::from(b(d + alpha)) - i128::from(b(d + alpha - 2))));
    Ok(MotiveExpr::Atom { name: name.into(), dim: d, census: JordanCensus::from_cells(cells) })
}

/// Atom of a `d`-dimensional variety mapping to a point: `nu_1^{i-d} = b_i`,
/// so `upsilon_rel` is the Poincare polynomial `sum b_i t^i`.
pub fn betti_over_point(name: &str, betti: &[u64]) -> Result<MotiveExpr, MotiveError> {
    let d = betti_dim(betti)?;
    let cells = betti.iter().enumerate().map(|(i, &b)| ((i as i64 - d, 1u32), b));
    Ok(MotiveExpr::Atom { name: name.into(), dim: d, census: JordanCensus::from_cells(cells) })
}

/// `Upsilon_A` of an expression.
pub fn upsilon_rel(e: &MotiveExpr) -> Result<LaurentPoly, MotiveError> {
    Ok(e.evaluate()?.0)
}

/// `upsilon_rel(base) * (1 + t^2 + ... + t^{2(r-1)})`.
pub fn projective_bundle_value(base: &MotiveExpr, r: u32) -> Result<LaurentPoly, MotiveError> {
    upsilon_rel(&MotiveExpr::proj_bundle(base.clone(), r))
}

/// Whether `Y(X~) - Y(E) = Y(X) - Y(Z)` for the blow-up `X~` of `X` along `Z`
/// with exceptional divisor `E`, a `P^{r-1}`-bundle over `Z`.
pub fn blowup_relation_check(ambient: &MotiveExpr, center: &MotiveExpr, r: u32) -> Result<bool, MotiveError> {
    let blown = upsilon_rel(&MotiveExpr::blow_up(ambient.clone(), center.clone(), r))?;
    let exceptional = projective_bundle_value(center, r)?;
    let x = upsilon_rel(ambient)?;
    let z = upsilon_rel(center)?;
    Ok(blown - exceptional == x - z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::{census_from_bispin, BispinContent};
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn p2() -> MotiveExpr {
        smooth_from_betti("P2", &[1, 0, 1, 0, 1]).unwrap()
    }

    fn p1() -> MotiveExpr {
        smooth_from_betti("P1", &[1, 0, 1]).unwrap()
    }

    /// `sum_{i <= d} (b_i - b_{i-2}) t^i s^{d-i}`, substituted term by term.
    fn betti_formula(betti: &[u64]) -> LaurentPoly {
        let d = (betti.len() / 2) as i64;
        let b = |i: i64| if i < 0 { 0i64 } else { betti[i as usize] as i64 };
        LaurentPoly::from_terms((0..=d).map(|i| ((i, (d - i) as u32), b(i) - b(i - 2))))
    }

    #[test]
    fn worked_values() {
        assert_eq!(upsilon_rel(&MotiveExpr::point()).unwrap(), LaurentPoly::one());
        assert_eq!(upsilon_rel(&p2()).unwrap().to_string(), "s^2");
        assert_eq!(upsilon_rel(&p1()).unwrap().to_string(), "s");
        assert_eq!(upsilon_rel(&smooth_from_betti("pt", &[1]).unwrap()).unwrap(), LaurentPoly::one());
        let blow = MotiveExpr::blow_up(p2(), MotiveExpr::point(), 2);
        assert_eq!(upsilon_rel(&blow).unwrap().to_string(), "s^2 + t^2");
        assert_eq!(projective_bundle_value(&p1(), 2).unwrap(), p("s + s*t^2"));
        assert_eq!(projective_bundle_value(&p2(), 1).unwrap(), upsilon_rel(&p2()).unwrap());
        assert_eq!(projective_bundle_value(&MotiveExpr::point(), 3).unwrap(), p("1 + t^2 + t^4"));
    }

    #[test]
    fn betti_validation() {
        assert!(matches!(smooth_from_betti("x", &[1, 0]), Err(MotiveError::BadBettiLength(2))));
        assert!(matches!(smooth_from_betti("x", &[1, 0, 2]), Err(MotiveError::NotDualitySymmetric(_))));
        assert!(matches!(smooth_from_betti("x", &[2, 0, 1, 0, 2]), Err(MotiveError::NotHardLefschetz(_))));
    }

    #[test]
    fn betti_over_point_is_poincare_polynomial() {
        let x = betti_over_point("X", &[1, 0, 7, 12, 7, 0, 1]).unwrap();
        let v = upsilon_rel(&x).unwrap();
        assert_eq!(v, p("1 + 7*t^2 + 12*t^3 + 7*t^4 + t^6"));
        assert!(v.terms().all(|(m, _)| m.s == 0));
        assert_eq!(v.m_degree().unwrap(), 2 * x.dim().unwrap().unwrap());
    }

    #[test]
    fn dim_checks() {
        let bad = MotiveExpr::blow_up(p2(), p1(), 2);
        assert!(matches!(upsilon_rel(&bad), Err(MotiveError::DimMismatch(_))));
        assert!(matches!(blowup_relation_check(&p2(), &p1(), 2), Err(MotiveError::DimMismatch(_))));
        let atom = MotiveExpr::Atom { name: "a".into(), dim: 0, census: JordanCensus::from_cells([((-2, 1), 1)]) };
        assert!(upsilon_rel(&atom).is_err());
        assert_eq!(MotiveExpr::zero().dim().unwrap(), None);
        assert_eq!(MotiveExpr::proj_bundle(p1(), 3).dim().unwrap(), Some(3));
        assert_eq!(MotiveExpr::abs_product(AbsMotive::Gl { n: 2 }, p1()).dim().unwrap(), Some(5));
    }

    #[test]
    fn blowup_relation_examples() {
        assert!(blowup_relation_check(&p2(), &MotiveExpr::point(), 2).unwrap());
        assert!(blowup_relation_check(&p2(), &MotiveExpr::zero(), 2).unwrap());
        // explicit difference for the point blow-up of P2
        let blown = upsilon_rel(&MotiveExpr::blow_up(p2(), MotiveExpr::point(), 2)).unwrap();
        let e = projective_bundle_value(&MotiveExpr::point(), 2).unwrap();
        assert_eq!(blown - e, p("s^2 - 1"));
    }

    #[test]
    fn finite_push_and_products() {
        let x = MotiveExpr::finite_push(p2());
        assert_eq!(upsilon_rel(&x).unwrap(), upsilon_rel(&p2()).unwrap());
        let prod = MotiveExpr::abs_product(AbsMotive::AffineLine, MotiveExpr::sum(vec![p1(), p2()]));
        let split = MotiveExpr::sum(vec![
            MotiveExpr::abs_product(AbsMotive::AffineLine, p1()),
            MotiveExpr::abs_product(AbsMotive::AffineLine, p2()),
        ]);
        assert_eq!(upsilon_rel(&prod).unwrap(), upsilon_rel(&split).unwrap());
        let fib = MotiveExpr::fibration(p1(), AbsMotive::Gm);
        assert_eq!(upsilon_rel(&fib).unwrap(), p("s*t^2 - s"));
    }

    #[test]
    fn json_round_trip() {
        let e = MotiveExpr::blow_up(
            MotiveExpr::SmoothBetti { name: Some("P2".into()), betti: vec![1, 0, 1, 0, 1] },
            MotiveExpr::point(),
            2,
        );
        let json = serde_json::to_string(&e).unwrap();
        let back: MotiveExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        let doc = r#"{"kind":"proj_bundle","base":{"kind":"smooth_betti","betti":[1,0,1]},"r":2}"#;
        let e: MotiveExpr = serde_json::from_str(doc).unwrap();
        assert_eq!(upsilon_rel(&e).unwrap(), p("s*t^2 + s"));
        let extra = r#"{"kind":"finite_push","expr":{"kind":"sum","terms":[]},"bogus":0}"#;
        assert!(serde_json::from_str::<MotiveExpr>(extra).is_err());
    }

    fn arb_betti() -> impl Strategy<Value = Vec<u64>> {
        (0usize..4, prop::collection::vec(0u64..4, 4)).prop_map(|(d, incs)| {
            // nondecreasing up to the middle, then mirrored
            let mut half = Vec::new();
            let mut even = 1u64;
            let mut odd = 0u64;
            for (i, inc) in incs.iter().enumerate().take(d + 1) {
                if i % 2 == 0 {
                    even += if i == 0 { 0 } else { *inc };
                    half.push(even);
                } else {
                    odd += *inc;
                    half.push(odd);
                }
            }
            let mut full = half.clone();
            full.extend(half.iter().rev().skip(1));
            full
        })
    }

    fn arb_geometric() -> impl Strategy<Value = MotiveExpr> {
        let leaf = prop_oneof![
            arb_betti().prop_map(|b| smooth_from_betti("X", &b).unwrap()),
            arb_betti().prop_map(|b| betti_over_point("Y", &b).unwrap()),
            Just(MotiveExpr::point()),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), 1u32..4).prop_map(|(e, r)| MotiveExpr::proj_bundle(e, r)),
                (inner.clone(), 0u32..3).prop_map(|(e, n)| MotiveExpr::abs_product(
                    if n == 0 { AbsMotive::AffineLine } else { AbsMotive::Gl { n } },
                    e
                )),
                inner.clone().prop_map(MotiveExpr::finite_push),
                (inner.clone(), 1i64..3).prop_map(|(e, n)| MotiveExpr::scaled(n, e)),
                (inner.clone(), 2u32..5).prop_map(|(z, r)| {
                    let dz = z.dim().unwrap().unwrap();
                    let ambient = smooth_from_betti(
                        "P",
                        &[1, 0].repeat((dz + i64::from(r)) as usize).into_iter().chain([1]).collect::<Vec<_>>(),
                    )
                    .unwrap();
                    MotiveExpr::blow_up(ambient, z, r)
                }),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn smooth_atom_matches_betti_formula(b in arb_betti()) {
            let e = smooth_from_betti("X", &b).unwrap();
            prop_assert_eq!(upsilon_rel(&e).unwrap(), betti_formula(&b));
        }

        #[test]
        fn geometric_m_degree_is_twice_dim(e in arb_geometric()) {
            prop_assert!(e.is_geometric());
            let v = upsilon_rel(&e).unwrap();
            let d = e.dim().unwrap().unwrap();
            prop_assert_eq!(v.m_degree().unwrap(), 2 * d);
        }

        #[test]
        fn blowup_relation_always_holds(z in arb_geometric(), r in 2u32..5) {
            let dz = z.dim().unwrap().unwrap();
            let ambient = MotiveExpr::proj_bundle(z.clone(), r + 1);
            prop_assert_eq!(ambient.dim().unwrap(), Some(dz + i64::from(r)));
            prop_assert!(blowup_relation_check(&ambient, &z, r).unwrap());
        }

        #[test]
        fn bispin_atoms_are_geometric(
            v in prop::collection::vec((0u32..4, 0u32..4, 0i64..3), 1..4)
        ) {
            // relative atom from bispin content whose left spin bounds the base
            let v = BispinContent::from_triples(v);
            let census = census_from_bispin(&v).unwrap();
            let dim = census.iter().map(|(a, l, _)| (a + 2 * (i64::from(l) - 1)).max(-a)).max().unwrap_or(0);
            let e = MotiveExpr::Atom { name: "M".into(), dim, census };
            if !v.is_empty() {
                prop_assert_eq!(upsilon_rel(&e).unwrap().m_degree().unwrap(), 2 * dim);
            }
        }
    }
}
