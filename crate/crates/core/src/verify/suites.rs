use super::gen;
use crate::algebra::{rat_int, LaurentPoly, Rat, RationalFn};
use crate::counting::{
    conifold_point_model, cy3_point_model, epsilon_formal, eval, log_exp_round_trip, Alphabet, CountingError,
    EvalModel, FreeHallElement, ModelDoc, NumClass, P_of_v, Stability,
};
use crate::gwseries::{gv_to_gw, gw_to_gv, sinc_power, two_sin_coeff};
use crate::lefschetz::{
    alt_ng, census_from_bispin, hst_ng, i_g, jordan_census, spin_decompose, tensor, GradedDims, GradedNilpotent,
};
use crate::motives::{betti_over_point, blowup_relation_check, smooth_from_betti, upsilon_rel, AbsMotive, MotiveExpr};
use crate::stacks::{quotient_by_special_group, scale_by_variety, upsilon_stack, StackClass};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub(crate) struct Ctx {
    pub max_compositions: usize,
}

pub(crate) struct Case {
    pub input: Value,
    pub outcome: Result<(), String>,
}

pub(crate) struct Property {
    pub name: &'static str,
    pub cases: usize,
    pub check: fn(&mut ChaCha8Rng, &Ctx) -> Case,
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn ok_or_string<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub(crate) fn suite(name: &str) -> Option<Vec<Property>> {
    let props = match name {
        "sl2" => vec![
            Property { name: "hst_matches_closed_formula", cases: 1000, check: hst_matches_closed_formula },
            Property { name: "tensor_matches_weight_convolution", cases: 200, check: tensor_matches_weights },
            Property { name: "torus_cohomology_dimension", cases: 10, check: torus_dimension },
        ],
        "census" => vec![
            Property { name: "census_conjugation_invariant", cases: 100, check: census_conjugation },
            Property { name: "census_of_realization", cases: 200, check: census_of_realization },
        ],
        "motive" => vec![
            Property { name: "blow_up_relation", cases: 200, check: blow_up_relation },
            Property { name: "m_degree_is_twice_dim", cases: 200, check: m_degree_twice_dim },
            Property { name: "smooth_strings_give_betti", cases: 200, check: smooth_strings },
        ],
        "stack" => vec![
            Property { name: "gm_quotient_cancels", cases: 200, check: gm_cancels },
            Property { name: "upsilon_linear", cases: 200, check: stack_linear },
        ],
        "counting" => vec![
            Property { name: "log_exp_round_trip", cases: 200, check: round_trip_cones },
            Property { name: "eval_kills_commutators", cases: 200, check: kills_commutators },
            Property { name: "asymmetric_ext_rejected", cases: 100, check: asymmetric_rejected },
            Property { name: "unit_k_is_single_letter", cases: 100, check: unit_k_single_letter },
            Property { name: "betti_shadow", cases: 20, check: betti_shadow },
            Property { name: "conifold_table", cases: 1, check: conifold_table },
        ],
        "gw" => vec![
            Property { name: "gv_gw_round_trip", cases: 200, check: gw_round_trip },
            Property { name: "gv_to_gw_linear", cases: 100, check: gw_linear },
            Property { name: "two_sin_scaling_law", cases: 20, check: two_sin_scaling },
        ],
        _ => return None,
    };
    Some(props)
}

pub(crate) const SUITES: [&str; 6] = ["sl2", "census", "motive", "stack", "counting", "gw"];

fn hst_matches_closed_formula(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let v = gen::bispin(rng, 6, 5, 5);
    let outcome = (|| {
        let census = ok_or_string(census_from_bispin(&v))?;
        for g in 0..=5 {
            expect_eq(hst_ng(&v, g), alt_ng(&census, g), &format!("n_{g}"))?;
        }
        Ok(())
    })();
    Case { input: json!(v), outcome }
}

fn tensor_matches_weights(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let (x, y) = (gen::spins(rng, 6, 3), gen::spins(rng, 6, 3));
    let outcome = (|| {
        let (wx, wy) = (x.weight_dims(), y.weight_dims());
        let mut conv: BTreeMap<i64, i64> = BTreeMap::new();
        for (a, m) in &wx {
            for (b, n) in &wy {
                *conv.entry(a + b).or_default() += m * n;
            }
        }
        conv.retain(|_, v| *v != 0);
        let t = tensor(&x, &y);
        expect_eq(t.weight_dims(), conv, "weight dims of the tensor product")?;
        let dims = GradedDims::from_pairs(t.weight_dims().into_iter().map(|(k, d)| (k, d as u64)));
        expect_eq(ok_or_string(spin_decompose(&dims))?, t, "spin decomposition of the weights")
    })();
    Case { input: json!({ "x": x, "y": y }), outcome }
}

fn torus_dimension(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let g: u32 = rng.gen_range(0..8);
    let outcome = expect_eq(i_g(g).dimension(), 4i64.pow(g), "dim I_g");
    Case { input: json!({ "g": g }), outcome }
}

fn census_conjugation(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let (v, x) = gen::realizable(rng, 8);
    let change = gen::basis_change(rng, &x);
    let outcome = (|| {
        let y = ok_or_string(x.conjugated(&change))?;
        expect_eq(jordan_census(&y), jordan_census(&x), "census after a change of basis")
    })();
    Case { input: json!({ "bispin": v, "dims": x.dims() }), outcome }
}

fn census_of_realization(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let v = gen::bispin(rng, 6, 3, 4);
    let outcome = (|| {
        let x = ok_or_string(GradedNilpotent::realize(&v))?;
        expect_eq(jordan_census(&x), ok_or_string(census_from_bispin(&v))?, "census of the realization")
    })();
    Case { input: json!(v), outcome }
}

fn blow_up_relation(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let z = gen::geometric(rng, 2);
    let r: u32 = rng.gen_range(2..=4);
    let outcome = (|| {
        let dz = ok_or_string(z.dim())?.ok_or("center is empty")?;
        let ambient = if rng.gen_bool(0.5) {
            MotiveExpr::proj_bundle(z.clone(), r + 1)
        } else {
            MotiveExpr::abs_product(AbsMotive::AffineLine, MotiveExpr::proj_bundle(z.clone(), r))
        };
        expect_eq(ok_or_string(ambient.dim())?, Some(dz + i64::from(r)), "ambient dimension")?;
        if ok_or_string(blowup_relation_check(&ambient, &z, r))? {
            Ok(())
        } else {
            Err("blow-up relation fails".into())
        }
    })();
    Case { input: json!({ "center": z, "r": r }), outcome }
}

fn m_degree_twice_dim(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let e = gen::geometric(rng, 3);
    let outcome = (|| {
        if !e.is_geometric() {
            return Err("generated tree is not geometric".into());
        }
        let v = ok_or_string(upsilon_rel(&e))?;
        let d = ok_or_string(e.dim())?.ok_or("empty variety")?;
        let m = ok_or_string(v.m_degree())?;
        if m % 2 != 0 {
            return Err(format!("odd m-degree {m}"));
        }
        expect_eq(m, 2 * d, "m-degree")
    })();
    Case { input: json!(e), outcome }
}

/// Replaces every `t^a s^b` by the string `t^a + t^{a+2} + ... + t^{a+2b}`.
pub fn expand_strings(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        for i in 0..=m.s {
            out += &LaurentPoly::monomial(m.t + 2 * i64::from(i), 0, c.clone());
        }
    }
    out
}

fn poincare(betti: &[u64]) -> LaurentPoly {
    LaurentPoly::from_terms(betti.iter().enumerate().map(|(i, b)| ((i as i64, 0), *b as i64)))
}

fn smooth_strings(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let b = gen::betti(rng, 4);
    let outcome = (|| {
        let v = ok_or_string(upsilon_rel(&ok_or_string(smooth_from_betti("X", &b))?))?;
        expect_eq(expand_strings(&v), poincare(&b), "strings of Y(X)")
    })();
    Case { input: json!(b), outcome }
}

fn cy3(rng: &mut ChaCha8Rng) -> (u64, u64, MotiveExpr) {
    let (b2, b3) = (rng.gen_range(0..=100), rng.gen_range(0..=100));
    (b2, b3, betti_over_point("X", &[1, 0, b2, b3, b2, 0, 1]).expect("cy3 betti numbers"))
}

fn gm_cancels(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let (b2, b3, x) = cy3(rng);
    let outcome = (|| {
        let q = ok_or_string(quotient_by_special_group(&x, &AbsMotive::Gm))?;
        let lhs = &RationalFn::from(AbsMotive::Gm.value()) * &ok_or_string(upsilon_stack(&q))?;
        expect_eq(lhs, RationalFn::from(ok_or_string(upsilon_rel(&x))?), "Gm * [X/Gm]")
    })();
    Case { input: json!({ "b2": b2, "b3": b3 }), outcome }
}

fn stack_linear(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let (b2, b3, x) = cy3(rng);
    let n: u32 = rng.gen_range(1..=3);
    let y = gen::geometric(rng, 2);
    let outcome = (|| {
        let c1 = ok_or_string(quotient_by_special_group(&x, &AbsMotive::Gl { n }))?;
        let c2 = StackClass::variety(y.clone());
        let (u1, u2) = (ok_or_string(upsilon_stack(&c1))?, ok_or_string(upsilon_stack(&c2))?);
        expect_eq(ok_or_string(upsilon_stack(&(&c1 + &c2)))?, &u1 + &u2, "sum")?;
        let t = AbsMotive::Gl { n };
        let scaled = ok_or_string(upsilon_stack(&ok_or_string(scale_by_variety(&t, &c1))?))?;
        expect_eq(scaled, &RationalFn::from(t.value()) * &u1, "scaling by a variety")
    })();
    Case { input: json!({ "b2": b2, "b3": b3, "n": n, "y": y }), outcome }
}

fn stab_json(stab: &Stability) -> Value {
    json!({ "lattice": stab.lattice(), "charge": stab.charge() })
}

fn round_trip_cones(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Case {
    let (stab, v) = gen::cone(rng, 5, false);
    let outcome = match log_exp_round_trip(&stab, &v, ctx.max_compositions) {
        Ok(true) => Ok(()),
        Ok(false) => Err("substitutions are not inverse".into()),
        Err(e) => Err(e.to_string()),
    };
    Case { input: json!({ "stability": stab_json(&stab), "v": v }), outcome }
}

fn kills_commutators(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let (m, classes) = gen::symmetric_model(rng);
    let len = rng.gen_range(2..=4);
    let word: Vec<NumClass> = (0..len).map(|_| classes[rng.gen_range(0..classes.len())].clone()).collect();
    let split = rng.gen_range(1..len);
    let outcome = (|| {
        let one = rat_int(1);
        let f = FreeHallElement::word(Alphabet::Delta, word[..split].to_vec(), one.clone());
        let g = FreeHallElement::word(Alphabet::Delta, word[split..].to_vec(), one.clone());
        let c = ok_or_string(eval(&f.commutator(&g), &m))?;
        expect_eq(c, RationalFn::zero(), "eval of the commutator")?;
        let mut shuffled = word.clone();
        shuffled.rotate_left(split);
        shuffled.swap(0, len - 1);
        let a = ok_or_string(eval(&FreeHallElement::word(Alphabet::Delta, word.clone(), one.clone()), &m))?;
        let b = ok_or_string(eval(&FreeHallElement::word(Alphabet::Delta, shuffled, one), &m))?;
        expect_eq(a, b, "eval after permuting letters")
    })();
    let (stab, _) = conifold_point_model(1).expect("conifold model");
    Case { input: json!({ "model": ModelDoc::from_parts(&stab, &m), "word": word, "split": split }), outcome }
}

fn asymmetric_rejected(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let a = NumClass::new(vec![rng.gen_range(1..4)], rng.gen_range(-2..3));
    let b = NumClass::new(vec![rng.gen_range(4..8)], rng.gen_range(-2..3));
    let e1: i64 = rng.gen_range(-5..6);
    let mut e2: i64 = rng.gen_range(-5..6);
    if e1 == e2 {
        e2 += 1;
    }
    let ext = if rng.gen_bool(0.3) {
        vec![(a.clone(), b.clone(), e1)]
    } else {
        vec![(a.clone(), b.clone(), e1), (b.clone(), a.clone(), e2)]
    };
    let expect_ok = ext.len() == 1 && e1 == 0;
    let outcome = match (EvalModel::new(BTreeMap::new(), ext.clone(), crate::counting::Combinator::Product), expect_ok)
    {
        (Err(CountingError::AsymmetricExtDefect { .. }), false) | (Ok(_), true) => Ok(()),
        (Ok(_), false) => Err("asymmetric table accepted".into()),
        (Err(e), _) => Err(e.to_string()),
    };
    Case { input: json!(ext), outcome }
}

fn unit_k_single_letter(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Case {
    let (stab, v) = gen::cone(rng, 5, true);
    let v = NumClass::new(v.beta, 1);
    let outcome = (|| {
        let eps = ok_or_string(epsilon_formal(&stab, &v, ctx.max_compositions))?;
        expect_eq(eps, FreeHallElement::letter(Alphabet::Delta, v.clone()), "epsilon")
    })();
    Case { input: json!({ "stability": stab_json(&stab), "v": v }), outcome }
}

fn betti_shadow(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Case {
    let (b2, b3) = (rng.gen_range(0..=100), rng.gen_range(0..=100));
    let outcome = (|| {
        let (stab, m) = ok_or_string(cy3_point_model(b2, b3))?;
        let p = ok_or_string(P_of_v(&stab, &m, &NumClass::new(vec![0], 1), ctx.max_compositions))?;
        expect_eq(p, RationalFn::from(poincare(&[1, 0, b2, b3, b2, 0, 1])), "P((0,1))")
    })();
    Case { input: json!({ "b2": b2, "b3": b3 }), outcome }
}

fn conifold_table(_: &mut ChaCha8Rng, ctx: &Ctx) -> Case {
    let outcome = (|| {
        let (stab, m) = ok_or_string(conifold_point_model(3))?;
        for mm in -3i64..=3 {
            let p = ok_or_string(P_of_v(&stab, &m, &NumClass::new(vec![mm], 1), ctx.max_compositions))?;
            let ns = ok_or_string(crate::counting::ng_range_from_P(&p, 3))?;
            for (g, n) in ns.iter().enumerate() {
                let want = i64::from(g == 0 && mm.abs() == 1);
                expect_eq(n.clone(), want.into(), &format!("n_{g}^{{{mm}[C]}}"))?;
            }
        }
        Ok(())
    })();
    Case { input: json!({ "max_multiple": 3, "genus_max": 3 }), outcome }
}

fn gw_round_trip(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let t = gen::gv_table(rng);
    let outcome = (|| {
        let s = ok_or_string(gv_to_gw(&t, 6, 4))?;
        let back = ok_or_string(gw_to_gv(&s, Some(3)))?;
        expect_eq(ok_or_string(back.integral_table())?, t.clone(), "round trip")
    })();
    Case { input: json!(t), outcome }
}

fn gw_linear(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let a = gen::gv_table(rng);
    let mut b = gen::gv_table(rng);
    if b.omega() != a.omega() {
        b = crate::gwseries::GVTable::new(a.omega().to_vec(), 3, 6);
    }
    let outcome = (|| {
        let mut sum = a.clone();
        for (g, beta, n) in b.entries() {
            ok_or_string(sum.insert(g, beta.clone(), n.clone()))?;
        }
        let mut rhs = ok_or_string(gv_to_gw(&a, 6, 4))?;
        for (beta, e, c) in ok_or_string(gv_to_gw(&b, 6, 4))?.coeffs() {
            ok_or_string(rhs.insert(beta.clone(), e, c.clone()))?;
        }
        expect_eq(ok_or_string(gv_to_gw(&sum, 6, 4))?, rhs, "transform of the sum")
    })();
    Case { input: json!({ "a": a, "b": b }), outcome }
}

/// `(sin u / u)^p` by repeated multiplication or long-division inverse of the Taylor series.
fn sinc_power_direct(p: i64, order: usize) -> Vec<Rat> {
    let n = order + 1;
    let mut s = vec![Rat::from_integer(0.into()); n];
    let mut fact = crate::algebra::Int::from(1);
    for (j, c) in s.iter_mut().enumerate() {
        if j > 0 {
            fact *= crate::algebra::Int::from(2 * j) * crate::algebra::Int::from(2 * j + 1);
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        *c = Rat::new(sign.into(), fact.clone());
    }
    let base = if p >= 0 {
        s
    } else {
        let mut inv = vec![Rat::from_integer(0.into()); n];
        inv[0] = rat_int(1);
        for i in 1..n {
            let acc: Rat = (1..=i).map(|j| &s[j] * &inv[i - j]).sum();
            inv[i] = -acc;
        }
        inv
    };
    let mut out = vec![Rat::from_integer(0.into()); n];
    out[0] = rat_int(1);
    for _ in 0..p.abs() {
        let mut next = vec![Rat::from_integer(0.into()); n];
        for i in 0..n {
            for j in 0..n - i {
                next[i + j] += &out[i] * &base[j];
            }
        }
        out = next;
    }
    out
}

fn two_sin_scaling(rng: &mut ChaCha8Rng, _: &Ctx) -> Case {
    let g: u32 = rng.gen_range(0..=3);
    let k: u64 = rng.gen_range(1..=5);
    let outcome = (|| {
        let p = 2 * i64::from(g) - 2;
        expect_eq(sinc_power(p, 4), sinc_power_direct(p, 4), "sinc power")?;
        for m in 0..=4usize {
            let e = p + 2 * m as i64;
            // coefficient of lambda^e scales as k^e
            let base = two_sin_coeff(g, 1, e);
            let kp = if e >= 0 {
                rat_int(k.pow(e as u32) as i64)
            } else {
                Rat::new(1.into(), (k.pow((-e) as u32) as i64).into())
            };
            expect_eq(two_sin_coeff(g, k, e), base * kp, &format!("lambda^{e}"))?;
        }
        Ok(())
    })();
    Case { input: json!({ "g": g, "k": k }), outcome }
}
