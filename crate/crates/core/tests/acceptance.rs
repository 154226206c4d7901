//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use gvmot_core::algebra::{rat, rat_int, LaurentPoly, RationalFn};
use gvmot_core::counting::{
    conifold_point_model, cy3_point_model, eval, log_exp_round_trip, ng_range_from_P, Alphabet, Combinator,
    CountingError, EvalModel, FreeHallElement, NumClass, P_of_v, DEFAULT_MAX_COMPOSITIONS,
};
use gvmot_core::gwseries::{conifold_gv, gv_to_gw, gw_to_gv, GVTable};
use gvmot_core::lefschetz::{alt_ng, census_from_bispin, hst_ng, jordan_census, GradedNilpotent};
use gvmot_core::motives::{blowup_relation_check, smooth_from_betti, upsilon_rel, AbsMotive, MotiveExpr};
use gvmot_core::par;
use gvmot_core::verify::{expand_strings, gen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

const HST_CASES: usize = 1000;
const HST_BUDGET: Duration = Duration::from_secs(10);
const GW_BUDGET: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(criterion: u64, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(criterion << 32 | case as u64)
}

/// First failing case index and message, if any.
fn all_cases<F>(n: usize, f: F) -> Result<(), String>
where
    F: Fn(usize) -> Result<(), String> + Sync + Send,
{
    match par::map_range(n, f).into_iter().enumerate().find_map(|(i, r)| r.err().map(|e| (i, e))) {
        Some((i, e)) => Err(format!("case {i}: {e}")),
        None => Ok(()),
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn hst_closed_formula() -> Outcome {
    let start = Instant::now();
    all_cases(HST_CASES, |i| {
        let v = gen::bispin(&mut rng(1, i), 6, 5, 5);
        let census = s(census_from_bispin(&v))?;
        for g in 0..=5 {
            let (a, b) = (hst_ng(&v, g), alt_ng(&census, g));
            check(a == b, || format!("g={g}: {a} vs {b}"))?;
        }
        Ok(())
    })?;
    let took = start.elapsed();
    check(took < HST_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("{HST_CASES} contents, g <= 5, {took:.2?}"))
}

fn conifold_table() -> Outcome {
    let (stab, model) = s(conifold_point_model(3))?;
    for m in -3i64..=3 {
        if m == 0 {
            continue;
        }
        let p = s(P_of_v(&stab, &model, &NumClass::new(vec![m], 1), DEFAULT_MAX_COMPOSITIONS))?;
        for (g, n) in s(ng_range_from_P(&p, 3))?.iter().enumerate() {
            let want = i64::from(g == 0 && m.abs() == 1);
            check(*n == want.into(), || format!("n_{g}^{{{m}[C]}} = {n}"))?;
        }
    }
    Ok("|m| <= 3, g <= 3".into())
}

fn worked_values() -> Outcome {
    let p1 = s(smooth_from_betti("P1", &[1, 0, 1]))?;
    let p2 = s(smooth_from_betti("P2", &[1, 0, 1, 0, 1]))?;
    let cases = [
        ("P2", p2.clone(), "s^2"),
        ("P1-bundle over P1", MotiveExpr::proj_bundle(p1, 2), "s + st^2"),
        ("blow-up of P2 at a point", MotiveExpr::blow_up(p2, MotiveExpr::point(), 2), "s^2 + t^2"),
    ];
    for (what, e, want) in cases {
        let got = s(upsilon_rel(&e))?.to_string();
        let want = s(want.parse::<LaurentPoly>())?.to_string();
        check(got == want, || format!("{what}: {got} vs {want}"))?;
    }
    Ok("three strings".into())
}

/// `1 + t^2 + ... + t^{2(r-1)}`.
fn pn_poincare(r: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..r).map(|i| ((2 * i64::from(i), 0), 1)))
}

fn blow_up_relation() -> Outcome {
    all_cases(200, |i| {
        let mut rng = rng(4, i);
        let z = gen::geometric(&mut rng, 2);
        let r: u32 = rng.gen_range(2..=4);
        let ambient = if rng.gen_bool(0.5) {
            MotiveExpr::proj_bundle(z.clone(), r + 1)
        } else {
            MotiveExpr::abs_product(AbsMotive::AffineLine, MotiveExpr::proj_bundle(z.clone(), r))
        };
        check(s(blowup_relation_check(&ambient, &z, r))?, || "relation fails".into())?;
        // Betti-level shadow: P(X~) = P(X) + P(Z)(t^2 + ... + t^{2(r-1)})
        let bl = MotiveExpr::blow_up(ambient.clone(), z.clone(), r);
        let lhs = expand_strings(&s(upsilon_rel(&bl))?);
        let rhs = expand_strings(&s(upsilon_rel(&ambient))?)
            + &expand_strings(&s(upsilon_rel(&z))?) * &(pn_poincare(r) - LaurentPoly::one());
        check(lhs == rhs, || format!("string shadow: {lhs} vs {rhs}"))?;
        for e in [&bl, &ambient, &z] {
            let d = s(e.dim())?.ok_or("empty variety")?;
            let m = s(s(upsilon_rel(e))?.m_degree())?;
            check(m % 2 == 0 && m == 2 * d, || format!("m-degree {m}, dim {d}"))?;
        }
        Ok(())
    })?;
    Ok("200 trees, r in 2..=4".into())
}

fn betti_shadow() -> Outcome {
    all_cases(20, |i| {
        let mut rng = rng(5, i);
        let (b2, b3) = (rng.gen_range(0..=100u64), rng.gen_range(0..=100u64));
        let (stab, model) = s(cy3_point_model(b2, b3))?;
        let p = s(P_of_v(&stab, &model, &NumClass::new(vec![0], 1), DEFAULT_MAX_COMPOSITIONS))?;
        let betti = [1, 0, b2, b3, b2, 0, 1];
        let want = LaurentPoly::from_terms(betti.iter().enumerate().map(|(i, b)| ((i as i64, 0), *b as i64)));
        check(p == RationalFn::from(want), || format!("b2={b2} b3={b3}: {p}"))
    })?;
    Ok("20 pairs (b2, b3) <= 100".into())
}

fn gw_transform() -> Outcome {
    let start = Instant::now();
    let series = s(gv_to_gw(&conifold_gv(0, 10), 10, -2))?;
    for d in 1..=10i64 {
        let got = series.get(&[d], -2);
        check(got == rat(1, d * d * d), || format!("N_0^{d} = {got}"))?;
    }
    all_cases(200, |i| {
        let t = gen::gv_table(&mut rng(6, i));
        let back = s(gw_to_gv(&s(gv_to_gw(&t, 6, 4))?, Some(3)))?;
        let back: GVTable = s(back.integral_table())?;
        check(back == t, || "round trip differs".into())
    })?;
    let took = start.elapsed();
    check(took < GW_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("d <= 10 and 200 tables, {took:.2?}"))
}

fn wall_crossing() -> Outcome {
    all_cases(200, |i| {
        let (stab, v) = gen::cone(&mut rng(71, i), 5, false);
        check(s(log_exp_round_trip(&stab, &v, DEFAULT_MAX_COMPOSITIONS))?, || format!("round trip at {v}"))
    })?;
    all_cases(200, |i| {
        let mut rng = rng(72, i);
        let (m, classes) = gen::symmetric_model(&mut rng);
        let pick = |rng: &mut ChaCha8Rng| classes[rng.gen_range(0..classes.len())].clone();
        let a: Vec<NumClass> = (0..rng.gen_range(1..=2)).map(|_| pick(&mut rng)).collect();
        let b: Vec<NumClass> = (0..rng.gen_range(1..=2)).map(|_| pick(&mut rng)).collect();
        let one = rat_int(1);
        let f = FreeHallElement::word(Alphabet::Delta, a, one.clone());
        let g = FreeHallElement::word(Alphabet::Delta, b, one);
        let c = s(eval(&f.commutator(&g), &m))?;
        check(c == RationalFn::zero(), || format!("commutator evaluates to {c}"))
    })?;
    all_cases(100, |i| {
        let mut rng = rng(73, i);
        let x = NumClass::new(vec![rng.gen_range(1..4)], 1);
        let y = NumClass::new(vec![rng.gen_range(4..8)], 1);
        let e: i64 = rng.gen_range(1..6);
        let back = if rng.gen_bool(0.5) { vec![] } else { vec![(y.clone(), x.clone(), e - rng.gen_range(1..=2 * e))] };
        let mut ext = vec![(x, y, e)];
        ext.extend(back);
        let r = EvalModel::new(BTreeMap::new(), ext, Combinator::Product);
        check(matches!(r, Err(CountingError::AsymmetricExtDefect { .. })), || "asymmetric table accepted".into())
    })?;
    Ok("200 cones, 200 commutators, 100 rejections".into())
}

fn jordan_census_invariance() -> Outcome {
    all_cases(100, |i| {
        let mut rng = rng(81, i);
        let (_, x) = gen::realizable(&mut rng, 8);
        let y = s(x.conjugated(&gen::basis_change(&mut rng, &x)))?;
        check(jordan_census(&y) == jordan_census(&x), || "census changed under conjugation".into())
    })?;
    all_cases(200, |i| {
        let v = gen::bispin(&mut rng(82, i), 6, 3, 4);
        let x = s(GradedNilpotent::realize(&v))?;
        check(jordan_census(&x) == s(census_from_bispin(&v))?, || "realization census differs".into())
    })?;
    Ok("100 conjugations, 200 realizations".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("hst_matches_closed_formula", hst_closed_formula),
        ("conifold_table", conifold_table),
        ("worked_upsilon_values", worked_values),
        ("blow_up_relation_and_m_degree", blow_up_relation),
        ("betti_shadow", betti_shadow),
        ("gw_transform", gw_transform),
        ("wall_crossing_combinatorics", wall_crossing),
        ("jordan_census", jordan_census_invariance),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  {}  {name}  ({detail})", n + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL  {}  {name}  ({e})", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
