use crate::output::{table, CliError, ErrorKind, Output};
use gvmot_core::counting::{ng_range_from_P, CountingError, NumClass, P_of_v};
use gvmot_core::doc::{InputDocument, Payload};
use gvmot_core::gwseries::{gv_to_gw, gw_to_gv, GvSolutionDoc, GwError, GwSeriesDoc};
use gvmot_core::lefschetz::{
    alt_ng, census_from_bispin, hst_ng, jordan_census, spin_from_lefschetz, GradedNilpotent, JordanCensus,
};
use gvmot_core::motives::upsilon_rel;
use gvmot_core::stacks::upsilon_stack;
use gvmot_core::verify::{self, VerifyConfig, VerifyError};
use serde_json::{json, Value};
use std::io::Read;
use std::path::Path;

/// Stated in every `gv` output.
pub const MODEL_ASSUMPTION: &str = "split-stratum model: the Hall product is free concatenation and a word \
     evaluates to L^(sum of pairwise Ext defects) times the combined atom values, which is exact when every \
     stratum is split with constant Ext data";

fn read_doc(path: Option<&Path>) -> Result<InputDocument, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text =
                std::fs::read_to_string(p).map_err(|e| CliError::schema(format!("cannot read {}: {e}", p.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::schema(format!("cannot read stdin: {e}")))?;
        }
    }
    InputDocument::parse(&text).map_err(CliError::schema)
}

fn wrong_kind(doc: &InputDocument, expected: &str) -> CliError {
    CliError::schema(format!("expected a {expected} document, got {}", doc.payload.kind()))
}

fn counting_error(e: CountingError) -> CliError {
    let kind = match e {
        CountingError::MissingAtom(_) | CountingError::MissingCombination(_) => ErrorKind::MissingData,
        CountingError::NotPolynomial(_) | CountingError::OddMDegree(_) => ErrorKind::NonPolynomial,
        _ => ErrorKind::Schema,
    };
    CliError::new(kind, e)
}

fn gw_error(e: GwError) -> CliError {
    let kind = match e {
        GwError::InsufficientTruncation(_) => ErrorKind::MissingData,
        _ => ErrorKind::Schema,
    };
    CliError::new(kind, e)
}

fn census_rows(c: &JordanCensus) -> Vec<Vec<String>> {
    c.iter().map(|(a, l, n)| vec![a.to_string(), l.to_string(), n.to_string()]).collect()
}

pub fn hst(input: Option<&Path>, genus_max: u32) -> Result<Output, CliError> {
    let doc = read_doc(input)?;
    let Payload::Bispin(v) = &doc.payload else { return Err(wrong_kind(&doc, "bispin")) };
    let census = census_from_bispin(v).map_err(CliError::schema)?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for g in 0..=genus_max {
        let (a, b) = (hst_ng(v, g), alt_ng(&census, g));
        if a != b {
            return Err(CliError::new(
                ErrorKind::CrossCheck,
                format!("genus {g}: decomposition gives {a} but the closed formula gives {b}"),
            ));
        }
        rows.push(vec![g.to_string(), a.to_string()]);
        values.push(json!({ "g": g, "n": a.to_string() }));
    }
    let text = format!("# {}: genus invariants, both routes agree\n{}", doc.label(), table(&["g", "n_g"], &rows));
    Ok(Output::ok(json!({ "name": doc.label(), "invariants": values }), text))
}

pub fn census(input: Option<&Path>) -> Result<Output, CliError> {
    let doc = read_doc(input)?;
    let (census, spins) = match &doc.payload {
        Payload::Bispin(v) => {
            let c = census_from_bispin(v).map_err(CliError::schema)?;
            let realized = GradedNilpotent::realize(v).map_err(CliError::schema)?;
            if jordan_census(&realized) != c {
                return Err(CliError::new(ErrorKind::CrossCheck, "census of the realized operator disagrees"));
            }
            (c, None)
        }
        Payload::GradedNilpotent(x) => (jordan_census(x), spin_from_lefschetz(x).ok()),
        _ => return Err(wrong_kind(&doc, "bispin or graded_nilpotent")),
    };
    let poly = census.to_poly();
    let mut text = format!("# {}: Jordan census\n{}", doc.label(), table(&["alpha", "l", "nu"], &census_rows(&census)));
    text += &format!("census polynomial: {poly}\n");
    let mut out = json!({ "name": doc.label(), "census": census, "poly": poly, "display": poly.to_string() });
    if let Some(s) = spins {
        let pairs: Vec<String> = s.iter().map(|(j, m)| format!("{m} x (2j={j})")).collect();
        text += &format!("Lefschetz spins: {}\n", pairs.join(", "));
        out["spins"] = json!(s);
    }
    Ok(Output::ok(out, text))
}

pub fn upsilon(input: Option<&Path>) -> Result<Output, CliError> {
    let doc = read_doc(input)?;
    let expr = match &doc.payload {
        Payload::Motive(e) => e.clone(),
        Payload::BettiVariety(b) => b.to_expr(&doc.label()).map_err(CliError::schema)?,
        _ => return Err(wrong_kind(&doc, "motive or betti_variety")),
    };
    let value = upsilon_rel(&expr).map_err(CliError::schema)?;
    let dim = expr.dim().map_err(CliError::schema)?;
    let out = json!({ "name": doc.label(), "value": value.to_string(), "poly": value, "dim": dim });
    Ok(Output::ok(out, format!("{value}\n")))
}

pub fn stack(input: Option<&Path>) -> Result<Output, CliError> {
    let doc = read_doc(input)?;
    let Payload::StackClass(c) = &doc.payload else { return Err(wrong_kind(&doc, "stack_class")) };
    let value = upsilon_stack(c).map_err(CliError::schema)?;
    let out = json!({ "name": doc.label(), "value": value.to_string(), "function": value });
    Ok(Output::ok(out, format!("{value}\n")))
}

pub fn gv(input: Option<&Path>, genus_max: u32, classes: &[String], cap: usize) -> Result<Output, CliError> {
    let doc = read_doc(input)?;
    let label = doc.label();
    let Payload::CountModel(model) = doc.payload else {
        return Err(CliError::schema("expected a count_model document"));
    };
    let (stab, model) = model.build().map_err(counting_error)?;
    let targets: Vec<NumClass> = if classes.is_empty() {
        model.atoms().keys().cloned().collect()
    } else {
        classes.iter().map(|k| k.parse().map_err(counting_error)).collect::<Result<_, _>>()?
    };
    let mut headers = vec!["class".to_string(), "P(v)".to_string()];
    headers.extend((0..=genus_max).map(|g| format!("n_{g}")));
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for v in &targets {
        let p = P_of_v(&stab, &model, v, cap).map_err(counting_error)?;
        let ns = ng_range_from_P(&p, genus_max).map_err(counting_error)?;
        let ns: Vec<String> = ns.iter().map(ToString::to_string).collect();
        let mut row = vec![v.to_string(), p.to_string()];
        row.extend(ns.iter().cloned());
        rows.push(row);
        results.push(json!({ "class": v, "P": p.to_string(), "P_exact": p, "n": ns }));
    }
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    let text = format!("# {label}\n# {MODEL_ASSUMPTION}\n{}", table(&headers, &rows));
    let out = json!({ "name": label, "assumption": MODEL_ASSUMPTION, "genus_max": genus_max, "results": results });
    Ok(Output::ok(out, text))
}

fn beta_string(b: &[i64]) -> String {
    let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn gw(
    input: Option<&Path>,
    genus_max: Option<u32>,
    degree_max: Option<u64>,
    lambda_order: Option<i64>,
) -> Result<Output, CliError> {
    let doc = read_doc(input)?;
    let label = doc.label();
    match doc.payload {
        Payload::GvTable(t) => {
            let g = genus_max.unwrap_or(t.genus_max());
            let d = degree_max.unwrap_or(t.degree_max());
            let l = lambda_order.unwrap_or(2 * i64::from(g) - 2);
            let s = gv_to_gw(&t, d, l).map_err(gw_error)?;
            let rows: Vec<Vec<String>> = s
                .coeffs()
                .map(|(b, e, c)| vec![beta_string(b), e.to_string(), gvmot_core::algebra::serde_num::format_rat(c)])
                .collect();
            let text = format!(
                "# {label}: GW series up to degree {d} and lambda^{l}\n{}",
                table(&["beta", "lambda", "N"], &rows)
            );
            Ok(Output::ok(json!({ "name": label, "gw_series": GwSeriesDoc::from(&s) }), text))
        }
        Payload::GwSeries(s) => {
            if lambda_order.is_some() {
                return Err(CliError::schema("--lambda-order applies to gv_table input; a series carries its own"));
            }
            let mut sol = gw_to_gv(&s, genus_max).map_err(gw_error)?;
            if let Some(d) = degree_max {
                let omega = sol.omega.clone();
                let deg = |b: &[i64]| omega.iter().zip(b).map(|(w, x)| w * x).sum::<i64>();
                sol.values.retain(|(_, b), _| deg(b) <= d as i64);
                sol.warnings = sol
                    .values
                    .iter()
                    .filter(|(_, v)| !v.is_integer())
                    .map(|((g, b), v)| format!("n_{g}^{b:?} = {}", gvmot_core::algebra::serde_num::format_rat(v)))
                    .collect();
            }
            let rows: Vec<Vec<String>> = sol
                .values
                .iter()
                .map(|((g, b), v)| vec![g.to_string(), beta_string(b), gvmot_core::algebra::serde_num::format_rat(v)])
                .collect();
            let mut text = format!(
                "# {label}: GV invariants up to genus {}\n{}",
                sol.genus_max,
                table(&["g", "beta", "n"], &rows)
            );
            for w in &sol.warnings {
                text += &format!("warning: non-integral {w}\n");
            }
            Ok(Output::ok(json!({ "name": label, "gv_table": GvSolutionDoc::from(&sol) }), text))
        }
        other => Err(CliError::schema(format!("expected a gv_table or gw_series document, got {}", other.kind()))),
    }
}

pub fn verify(suite: &str, seed: u64, max_compositions: usize, cases: Option<usize>) -> Result<Output, CliError> {
    let cfg = VerifyConfig { seed, max_compositions, cases };
    let reports = verify::run(suite, &cfg).map_err(|e: VerifyError| CliError::schema(e))?;
    let mut text = String::new();
    let mut failed = false;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        text += &format!("{status}  {}/{}  {} cases, {} failed\n", r.suite, r.property, r.cases, r.failures);
        if let Some(c) = &r.counterexample {
            failed = true;
            text += &format!("  smallest failing case #{}: {}\n  {}\n", c.case, c.input, c.message);
        }
    }
    let json: Value = json!({ "seed": seed, "passed": !failed, "properties": reports });
    let mut out = Output::ok(json, text);
    if failed {
        out.exit_code = ErrorKind::PropertyFailure.code();
    }
    Ok(out)
}
