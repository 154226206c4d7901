//! Stack functions: `Q(t, s)`-linear combinations of motive expressions, with
//! quotients by special groups turned into division by the group class.

use crate::algebra::RationalFn;
use crate::motives::{upsilon_rel, AbsMotive, MotiveError, MotiveExpr};
use serde::{Deserialize, Serialize};
use std::ops::Add;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackTerm {
    pub coeff: RationalFn,
    pub expr: MotiveExpr,
}

/// A finite formal sum `sum c_i [X_i]`; the empty list is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StackClass {
    terms: Vec<StackTerm>,
}

impl StackClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The class of a variety, with coefficient one.
    pub fn variety(expr: MotiveExpr) -> Self {
        Self::single(RationalFn::one(), expr)
    }

    pub fn single(coeff: RationalFn, expr: MotiveExpr) -> Self {
        StackClass { terms: vec![StackTerm { coeff, expr }] }
    }

    pub fn terms(&self) -> &[StackTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add<&StackClass> for &StackClass {
    type Output = StackClass;
    fn add(self, rhs: &StackClass) -> StackClass {
        StackClass { terms: self.terms.iter().chain(&rhs.terms).cloned().collect() }
    }
}

/// `[X / G] = Y(G)^{-1} [X]` for a special group `G`.
pub fn quotient_by_special_group(e: &MotiveExpr, g: &AbsMotive) -> Result<StackClass, MotiveError> {
    g.validate()?;
    let coeff = RationalFn::from(g.value()).inverse().map_err(|_| MotiveError::ZeroGroupClass)?;
    Ok(StackClass::single(coeff, e.clone()))
}

/// `Y(T) * c`.
pub fn scale_by_variety(t: &AbsMotive, c: &StackClass) -> Result<StackClass, MotiveError> {
    t.validate()?;
    let f = RationalFn::from(t.value());
    Ok(StackClass { terms: c.terms.iter().map(|s| StackTerm { coeff: &s.coeff * &f, expr: s.expr.clone() }).collect() })
}

/// `Y'_A(c) = sum c_i Y_A(X_i)`.
pub fn upsilon_stack(c: &StackClass) -> Result<RationalFn, MotiveError> {
    let mut acc = RationalFn::zero();
    for s in &c.terms {
        let v = RationalFn::from(upsilon_rel(&s.expr)?);
        acc = &acc + &(&s.coeff * &v);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;
    use crate::motives::{betti_over_point, smooth_from_betti};
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn cy3(b2: u64, b3: u64) -> MotiveExpr {
        betti_over_point("X", &[1, 0, b2, b3, b2, 0, 1]).unwrap()
    }

    #[test]
    fn quotient_coefficients() {
        let q = quotient_by_special_group(&cy3(1, 4), &AbsMotive::Gm).unwrap();
        assert_eq!(q.terms()[0].coeff, RationalFn::new(LaurentPoly::one(), p("t^2 - 1")).unwrap());
        let pt = quotient_by_special_group(&MotiveExpr::point(), &AbsMotive::Gl { n: 1 }).unwrap();
        assert_eq!(upsilon_stack(&pt).unwrap(), RationalFn::new(LaurentPoly::one(), p("t^2 - 1")).unwrap());
        let gl2 = quotient_by_special_group(&MotiveExpr::point(), &AbsMotive::Gl { n: 2 }).unwrap();
        // GL_2 over F_q has (q^2 - 1)(q^2 - q) elements
        let den = p("t^4 - 1") * p("t^4 - t^2");
        assert_eq!(upsilon_stack(&gl2).unwrap(), RationalFn::new(LaurentPoly::one(), den).unwrap());
        let zero = AbsMotive::from_poly(LaurentPoly::zero()).unwrap();
        assert_eq!(quotient_by_special_group(&MotiveExpr::point(), &zero), Err(MotiveError::ZeroGroupClass));
    }

    #[test]
    fn betti_shadow_of_quotient() {
        let q = quotient_by_special_group(&cy3(3, 8), &AbsMotive::Gm).unwrap();
        let expect = RationalFn::new(p("1 + 3*t^2 + 8*t^3 + 3*t^4 + t^6"), p("t^2 - 1")).unwrap();
        assert_eq!(upsilon_stack(&q).unwrap(), expect);
        assert_eq!(upsilon_stack(&StackClass::zero()).unwrap(), RationalFn::zero());
        assert_eq!(upsilon_stack(&StackClass::variety(MotiveExpr::point())).unwrap(), RationalFn::one());
    }

    #[test]
    fn scaling_by_varieties() {
        let c = StackClass::variety(smooth_from_betti("P1", &[1, 0, 1]).unwrap());
        let a1 = scale_by_variety(&AbsMotive::AffineLine, &c).unwrap();
        assert_eq!(upsilon_stack(&a1).unwrap(), RationalFn::from(p("s*t^2")));
        assert_eq!(scale_by_variety(&AbsMotive::Point, &c).unwrap(), c);
        let q = quotient_by_special_group(&cy3(2, 2), &AbsMotive::Gm).unwrap();
        let back = scale_by_variety(&AbsMotive::Gm, &q).unwrap();
        assert_eq!(upsilon_stack(&back).unwrap(), RationalFn::from(upsilon_rel(&cy3(2, 2)).unwrap()));
    }

    #[test]
    fn json_shape() {
        let q = quotient_by_special_group(&MotiveExpr::point(), &AbsMotive::Gm).unwrap();
        let json = serde_json::to_value(&q).unwrap();
        assert_eq!(json[0]["coeff"]["den"], serde_json::json!([[0, 0, "-1"], [2, 0, "1"]]));
        let back: StackClass = serde_json::from_value(json).unwrap();
        assert_eq!(back, q);
        let bad = r#"[{"coeff":{"num":[[0,0,"1"]],"den":[[0,0,"1"]]},"expr":{"kind":"sum","terms":[]},"x":1}]"#;
        assert!(serde_json::from_str::<StackClass>(bad).is_err());
    }

    proptest! {
        #[test]
        fn gm_quotient_cancels(b2 in 0u64..100, b3 in 0u64..100) {
            let x = cy3(b2, b3);
            let q = quotient_by_special_group(&x, &AbsMotive::Gm).unwrap();
            let lhs = &RationalFn::from(AbsMotive::Gm.value()) * &upsilon_stack(&q).unwrap();
            prop_assert_eq!(lhs, RationalFn::from(upsilon_rel(&x).unwrap()));
        }

        #[test]
        fn linear_and_compatible(b in 0u64..20, n in 1u32..3) {
            let c1 = quotient_by_special_group(&cy3(b, 1), &AbsMotive::Gl { n }).unwrap();
            let c2 = StackClass::variety(smooth_from_betti("P2", &[1, 0, 1, 0, 1]).unwrap());
            let sum = upsilon_stack(&(&c1 + &c2)).unwrap();
            prop_assert_eq!(sum, &upsilon_stack(&c1).unwrap() + &upsilon_stack(&c2).unwrap());
            let t = AbsMotive::Gl { n };
            let scaled = upsilon_stack(&scale_by_variety(&t, &c1).unwrap()).unwrap();
            prop_assert_eq!(scaled, &RationalFn::from(t.value()) * &upsilon_stack(&c1).unwrap());
        }
    }
}
