//! Random inputs for the property suites, drawn from a caller-owned rng.

use crate::algebra::{rat, rat_int, Int, Matrix, Rat};
use crate::counting::{CentralCharge, ClassLattice, Combinator, EvalModel, NumClass, Stability};
use crate::gwseries::GVTable;
use crate::lefschetz::{BispinContent, GradedNilpotent, JordanCensus, SpinMultiset};
use crate::motives::{smooth_from_betti, AbsMotive, MotiveExpr};
use crate::stacks::StackClass;
use rand::Rng;
use std::collections::BTreeMap;

/// Nonnegative content with `2j <= max_two_j` on both sides and multiplicities `<= max_mult`.
pub fn bispin<R: Rng>(rng: &mut R, max_two_j: u32, max_mult: i64, max_terms: usize) -> BispinContent {
    let n = rng.gen_range(0..=max_terms);
    BispinContent::from_triples(
        (0..n).map(|_| (rng.gen_range(0..=max_two_j), rng.gen_range(0..=max_two_j), rng.gen_range(0..=max_mult))),
    )
}

pub fn spins<R: Rng>(rng: &mut R, max_two_j: u32, max_mult: i64) -> SpinMultiset {
    let n = rng.gen_range(0..5);
    SpinMultiset::from_pairs((0..n).map(|_| (rng.gen_range(0..=max_two_j), rng.gen_range(0..=max_mult))))
}

/// Betti numbers of a dimension-`<= max_dim` smooth projective variety:
/// symmetric, `b_0 = 1`, and nondecreasing towards the middle in each parity.
pub fn betti<R: Rng>(rng: &mut R, max_dim: usize) -> Vec<u64> {
    let d = rng.gen_range(0..=max_dim);
    let mut half = Vec::with_capacity(d + 1);
    let (mut even, mut odd) = (1u64, 0u64);
    for i in 0..=d {
        if i % 2 == 0 {
            if i > 0 {
                even += rng.gen_range(0..4);
            }
            half.push(even);
        } else {
            odd += 2 * rng.gen_range(0..3);
            half.push(odd);
        }
    }
    let mut full = half.clone();
    full.extend(half.iter().rev().skip(1));
    full
}

/// `P^n` as a smooth betti atom.
pub fn projective_space(n: i64) -> MotiveExpr {
    let mut b = vec![0u64; 2 * n as usize + 1];
    for i in 0..=n as usize {
        b[2 * i] = 1;
    }
    smooth_from_betti(&format!("P{n}"), &b).expect("projective space betti numbers")
}

/// A geometric expression tree of the given depth.
pub fn geometric<R: Rng>(rng: &mut R, depth: u32) -> MotiveExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => smooth_from_betti("X", &betti(rng, 3)).expect("valid betti"),
            1 => crate::motives::betti_over_point("Y", &betti(rng, 3)).expect("valid betti"),
            _ => MotiveExpr::point(),
        };
    }
    let inner = geometric(rng, depth - 1);
    match rng.gen_range(0..5) {
        0 => MotiveExpr::proj_bundle(inner, rng.gen_range(1..4)),
        1 => {
            let n = rng.gen_range(0..3);
            let f = if n == 0 { AbsMotive::AffineLine } else { AbsMotive::Gl { n } };
            MotiveExpr::abs_product(f, inner)
        }
        2 => MotiveExpr::finite_push(inner),
        3 => MotiveExpr::scaled(rng.gen_range(1..3), inner),
        _ => {
            let r = rng.gen_range(2..5);
            let dz = inner.dim().ok().flatten().unwrap_or(0);
            MotiveExpr::blow_up(projective_space(dz + i64::from(r)), inner, r)
        }
    }
}

/// An invertible integer matrix of size `n` with small entries.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| rat_int(rng.gen_range(-2i64..=2))).collect()).collect();
        let m = Matrix::from_rows(rows, n).expect("square rows");
        if m.rank() == n {
            return m;
        }
    }
}

/// A realized content with at most `max_dim` dimensions in every degree.
pub fn realizable<R: Rng>(rng: &mut R, max_dim: u64) -> (BispinContent, GradedNilpotent) {
    loop {
        let v = bispin(rng, 4, 2, 4);
        let x = GradedNilpotent::realize(&v).expect("nonnegative content");
        if x.dims().0.values().all(|&d| d <= max_dim) {
            return (v, x);
        }
    }
}

/// One random invertible change of basis per nonzero degree.
pub fn basis_change<R: Rng>(rng: &mut R, x: &GradedNilpotent) -> BTreeMap<i64, Matrix> {
    x.dims().0.iter().map(|(&a, &d)| (a, invertible(rng, d as usize))).collect()
}

/// A pointed cone of rank `<= 3` with a class of omega-degree `<= max_degree`.
pub fn cone<R: Rng>(rng: &mut R, max_degree: i64, zero_b: bool) -> (Stability, NumClass) {
    loop {
        let rank = rng.gen_range(1..=3);
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Vec<i64>> = (0..ngens).map(|_| (0..rank).map(|_| rng.gen_range(0..3)).collect()).collect();
        if gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
            continue;
        }
        let b = (0..rank).map(|_| if zero_b { rat_int(0) } else { rat(rng.gen_range(-2..3), 2) }).collect();
        let w = (0..rank).map(|_| rat_int(rng.gen_range(1..3))).collect();
        let Ok(stab) = Stability::new(ClassLattice { rank, generators: gens.clone() }, CentralCharge::new(b, w)) else {
            continue;
        };
        let mut beta = vec![0; rank];
        for _ in 0..rng.gen_range(1..=3) {
            let g = &gens[rng.gen_range(0..gens.len())];
            beta.iter_mut().zip(g).for_each(|(a, x)| *a += x);
        }
        if stab.omega_degree(&beta) > rat_int(max_degree) {
            continue;
        }
        let k = rng.gen_range(0..4);
        return (stab, NumClass::new(beta, k));
    }
}

fn random_atom<R: Rng>(rng: &mut R) -> StackClass {
    let n = rng.gen_range(1..3);
    let census = JordanCensus::from_cells((0..n).map(|_| ((rng.gen_range(-3i64..4), rng.gen_range(1u32..4)), 1)));
    let dim = census.iter().map(|(a, l, _)| (a + 2 * i64::from(l) - 2).max(-a)).max().unwrap_or(0);
    StackClass::variety(MotiveExpr::Atom { name: "M".into(), dim, census })
}

/// Four classes with random atoms and a random symmetric Ext defect.
pub fn symmetric_model<R: Rng>(rng: &mut R) -> (EvalModel, Vec<NumClass>) {
    let classes: Vec<NumClass> = (1..=4).map(|b| NumClass::new(vec![b], b % 2)).collect();
    let atoms = classes.iter().map(|v| (v.clone(), random_atom(rng))).collect();
    let mut ext = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            let e = rng.gen_range(-3..4);
            ext.push((classes[i].clone(), classes[j].clone(), e));
            if i != j {
                ext.push((classes[j].clone(), classes[i].clone(), e));
            }
        }
    }
    let comb = if rng.gen_bool(0.5) { Combinator::Product } else { Combinator::ClebschGordan };
    let model = EvalModel::new(atoms, ext, comb).expect("symmetric model");
    (model, classes)
}

/// A table of rank `<= 2` with unit degree functional, genus `<= 3`, degree `<= 6`.
pub fn gv_table<R: Rng>(rng: &mut R) -> GVTable {
    let rank = rng.gen_range(1..=2);
    let mut t = GVTable::new(vec![1; rank], 3, 6);
    for _ in 0..rng.gen_range(0..8) {
        let beta: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=6)).collect();
        let d: i64 = beta.iter().sum();
        if d == 0 || d > 6 {
            continue;
        }
        t.insert(rng.gen_range(0..=3), beta, Int::from(rng.gen_range(-20..=20))).expect("within cuts");
    }
    t
}
