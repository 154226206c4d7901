use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str], doc: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gvmot"));
    let file = doc.map(|d| {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(d.as_bytes()).unwrap();
        f
    });
    cmd.args(args);
    if let Some(f) = &file {
        cmd.arg("--input").arg(f.path());
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const PT_GM: &str =
    r#"[{"coeff":{"num":[[0,0,"1"]],"den":[[0,0,"-1"],[2,0,"1"]]},"expr":{"kind":"smooth_betti","betti":[1]}}]"#;

fn conifold(extra_atoms: &str) -> String {
    format!(
        r#"{{"v":1,"kind":"count_model","name":"conifold","payload":{{"lattice":{{"rank":1,"generators":[[1]]}},
        "charge":{{"B":["0"],"omega":["1"]}},"atoms":{{"1;1":{PT_GM},"1;-1":{PT_GM}{extra_atoms}}}}}}}"#
    )
}

fn invariants(o: &Output) -> Vec<String> {
    json(o)["invariants"].as_array().unwrap().iter().map(|v| v["n"].as_str().unwrap().to_string()).collect()
}

#[test]
fn hst_examples() {
    let pt = run(&["hst", "--genus-max", "2", "--json"], Some(r#"{"v":1,"kind":"bispin","payload":[[0,0,1]]}"#));
    assert!(pt.status.success());
    assert_eq!(invariants(&pt), ["1", "0", "0"]);
    let l1 = run(&["hst", "--genus-max", "2", "--json"], Some(r#"{"v":1,"kind":"bispin","payload":[[2,0,1]]}"#));
    assert_eq!(invariants(&l1), ["3", "-4", "1"]);
    let empty = run(&["hst", "--genus-max", "2", "--json"], Some(r#"{"v":1,"kind":"bispin","payload":[]}"#));
    assert_eq!(invariants(&empty), ["0", "0", "0"]);
    let text = run(&["hst", "--genus-max", "1"], Some(r#"{"v":1,"kind":"bispin","payload":[[2,0,1]]}"#));
    assert!(stdout(&text).contains("0  3\n1  -4\n"));
}

#[test]
fn upsilon_examples() {
    let p2 = r#"{"kind":"smooth_betti","betti":[1,0,1,0,1]}"#;
    let pt = r#"{"kind":"smooth_betti","betti":[1]}"#;
    let cases = [
        (r#"{"v":1,"kind":"betti_variety","payload":{"betti":[1,0,1,0,1]}}"#.to_string(), "s^2"),
        (
            format!(
                r#"{{"v":1,"kind":"motive","payload":{{"kind":"blow_up_rel","ambient":{p2},"center":{pt},"r":2}}}}"#
            ),
            "s^2 + t^2",
        ),
        (format!(r#"{{"v":1,"kind":"motive","payload":{pt}}}"#), "1"),
    ];
    for (doc, want) in cases {
        let o = run(&["upsilon"], Some(&doc));
        assert!(o.status.success(), "{doc}");
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn census_of_a_graded_operator() {
    let doc = r#"{"v":1,"kind":"graded_nilpotent","payload":{"dims":{"-2":1,"0":1,"2":1},"maps":{"-2":[["1"]],"0":[["1"]]}}}"#;
    let o = run(&["census", "--json"], Some(doc));
    assert!(o.status.success());
    assert_eq!(json(&o)["census"], serde_json::json!([[-2, 3, 1]]));
    assert_eq!(json(&o)["spins"], serde_json::json!([[2, 1]]));
}

#[test]
fn stack_value() {
    let doc = format!(r#"{{"v":1,"kind":"stack_class","payload":{PT_GM}}}"#);
    let o = run(&["stack"], Some(&doc));
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(1)/(t^2 - 1)");
}

#[test]
fn gv_conifold_and_error_paths() {
    let o =
        run(&["gv", "--json", "--class", "1;1", "--class=-1;-1", "--class", "2;1"], Some(&conifold(r#","2;1":[]"#)));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert!(v["assumption"].as_str().unwrap().contains("split-stratum"));
    let ns: Vec<&serde_json::Value> = v["results"].as_array().unwrap().iter().map(|r| &r["n"]).collect();
    assert_eq!(ns[0], &serde_json::json!(["1", "0", "0", "0"]));
    assert_eq!(ns[1], &serde_json::json!(["1", "0", "0", "0"]));
    assert_eq!(ns[2], &serde_json::json!(["0", "0", "0", "0"]));
    assert!(stdout(&run(&["gv"], Some(&conifold("")))).contains("# split-stratum model"));

    let missing = run(&["gv", "--class", "2;1"], Some(&conifold("")));
    assert_eq!(missing.status.code(), Some(4));
    let gl2 = r#","2;1":[{"coeff":{"num":[[0,0,"1"]],"den":[[6,0,"1"],[4,0,"-1"],[8,0,"-1"],[2,0,"1"]]},"expr":{"kind":"smooth_betti","betti":[1]}}]"#;
    let nonpoly = run(&["gv", "--class", "2;1"], Some(&conifold(gl2)));
    assert_eq!(nonpoly.status.code(), Some(5));
    let asym = conifold("").replace(r#""atoms""#, r#""ext_defect":[["1;1","1;-1",2]],"atoms""#);
    assert_eq!(run(&["gv"], Some(&asym)).status.code(), Some(2));
}

#[test]
fn gw_both_directions() {
    let table = r#"{"v":1,"kind":"gv_table","payload":{"entries":[[0,[1],1]],"cuts":{"genus_max":0,"degree_max":3}}}"#;
    let fwd = run(&["gw", "--json"], Some(table));
    assert!(fwd.status.success());
    let series = &json(&fwd)["gw_series"];
    assert_eq!(series["coeffs"], serde_json::json!([[[1], -2, "1"], [[2], -2, "1/8"], [[3], -2, "1/27"]]));
    let doc = serde_json::json!({ "v": 1, "kind": "gw_series", "payload": series }).to_string();
    let back = run(&["gw", "--json"], Some(&doc));
    assert_eq!(json(&back)["gv_table"]["entries"], serde_json::json!([[0, [1], "1"]]));
    assert_eq!(json(&back)["gv_table"]["warnings"], serde_json::json!([]));
    let empty = r#"{"v":1,"kind":"gv_table","payload":{"entries":[],"cuts":{"genus_max":1,"degree_max":3}}}"#;
    assert_eq!(json(&run(&["gw", "--json"], Some(empty)))["gw_series"]["coeffs"], serde_json::json!([]));
    let half =
        r#"{"v":1,"kind":"gw_series","payload":{"coeffs":[[[1],-2,"1/2"]],"cuts":{"degree_max":1,"lambda_max":-2}}}"#;
    let o = run(&["gw"], Some(half));
    assert!(o.status.success());
    assert!(stdout(&o).contains("warning: non-integral"));
    assert_eq!(run(&["gw", "--genus-max", "2"], Some(half)).status.code(), Some(4));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "sl2", "--seed", "42"], None);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    let m = run(&["verify", "motive", "--seed", "7", "--json"], None);
    assert!(m.status.success());
    let props = json(&m)["properties"].as_array().unwrap().clone();
    assert!(props.iter().any(|p| p["property"] == "blow_up_relation" && p["cases"] == 200));
    assert_eq!(run(&["verify", "hodge"], None).status.code(), Some(2));
}

#[test]
fn schema_errors_exit_two() {
    let bad = [
        r#"{"v":2,"kind":"bispin","payload":[]}"#,
        r#"{"v":1,"kind":"bispin","payload":[],"extra":0}"#,
        r#"{"v":1,"kind":"bispin","payload":[[0,0,-1]]}"#,
        r#"{"v":1,"kind":"motive","payload":[]}"#,
        "not json",
    ];
    for doc in bad {
        let o = run(&["hst", "--json"], Some(doc));
        assert_eq!(o.status.code(), Some(2), "{doc}");
        let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(err["error"]["code"], 2);
    }
    assert_eq!(run(&[], None).status.code(), Some(2));
    assert_eq!(run(&["hst", "--genus-max", "x"], None).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = run(&["verify", "counting", "--seed", "3", "--json"], None);
    let b = run(&["verify", "counting", "--seed", "3", "--json"], None);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "counting", "--seed", "4", "--json"], None);
    assert!(c.status.success());
}
