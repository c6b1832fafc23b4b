use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

fn ngw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ngw"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn schema() -> JSONSchema {
    let schema: Value = serde_json::from_str(ngw::report::SCHEMA_JSON).unwrap();
    JSONSchema::compile(&schema).expect("schema compiles")
}

/// Parses a report and checks it against the shipped schema.
fn report(stdout: &str) -> Value {
    let v: Value = serde_json::from_str(stdout).expect("stdout is JSON");
    let schema = schema();
    if let Err(errors) = schema.validate(&v) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect();
        panic!("report does not match schema: {msgs:?}");
    }
    v
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn solve_triangle_treewidth() {
    let (code, out, _) = ngw(&["solve", "--param", "tw", "--graph", "g6:Bw"]);
    assert_eq!(code, 0);
    let v = report(&out);
    assert_eq!(v["result"]["values"][0]["value"]["lo"], 2);
    assert_eq!(v["result"]["values"][0]["value"]["hi"], 2);
    assert_eq!(
        v["result"]["values"][0]["certificate"]["kind"],
        "elimination_ordering"
    );
}

#[test]
fn solve_accepts_every_graph_spelling() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("p4.txt");
    std::fs::write(&edges, "# path\n4\n0 1\n1 2\n2 3\n").unwrap();
    let g6 = dir.path().join("k4.g6");
    std::fs::write(&g6, "C~\n").unwrap();
    let cases = [
        ("K5".to_string(), "tw", 4),
        ("K3,3".to_string(), "pw", 3),
        ("P7".to_string(), "ppw", 1),
        ("C6".to_string(), "tw", 2),
        ("Petersen".to_string(), "tw", 4),
        ("S4".to_string(), "pw", 1),
        ("E5".to_string(), "eta", 1),
        ("Bw".to_string(), "omega", 3),
        (format!("file:{}", edges.display()), "pw", 1),
        (format!("file:{}", g6.display()), "chi", 4),
    ];
    for (spec, param, want) in cases {
        let (code, out, err) = ngw(&["solve", "--param", param, "--graph", &spec]);
        assert_eq!(code, 0, "{spec}: {err}");
        assert_eq!(
            report(&out)["result"]["values"][0]["value"]["lo"],
            want,
            "{spec} {param}"
        );
    }
}

#[test]
fn solve_all_replays_certificates() {
    let (code, out, _) = ngw(&["solve", "--graph", "Petersen"]);
    assert_eq!(code, 0);
    let v = report(&out);
    let values = v["result"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 10);
    let eta = values.iter().find(|x| x["param"] == "eta").unwrap();
    assert_eq!(eta["value"]["lo"], 5);
    assert_eq!(eta["certificate"]["sets"].as_array().unwrap().len(), 5);
}

#[test]
fn ng_reports_value_witness_and_bounds() {
    let (code, out, _) = ngw(&[
        "ng", "--param", "eta", "--agg", "sum", "--dir", "upper", "--r", "2", "--n", "5",
    ]);
    assert_eq!(code, 0);
    let v = report(&out);
    assert_eq!(v["result"]["value"]["lo"], 6);
    assert_eq!(v["result"]["value"]["hi"], 6);
    assert_eq!(v["result"]["witness"]["parts"].as_array().unwrap().len(), 2);
    assert!(v["states_explored"].as_u64().unwrap() > 0);
    let bounds = v["bounds"].as_array().unwrap();
    assert!(bounds
        .iter()
        .any(|b| b["id"] == "kostochka-sum" && b["status"] == "satisfied"));
    assert!(bounds.iter().all(|b| b["status"] != "violated"));
}

#[test]
fn table1_csv() {
    let (code, out, _) = ngw(&["table1", "--rmax", "10"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "r,r_over_t,sqrt_r\n3,1.5,1.73205\n4,1.33333,2.0\n5,1.66667,2.23607\n6,2.0,2.44949\n\
         7,1.75,2.64575\n8,2.0,2.82843\n9,2.25,3.0\n10,2.5,3.16228\n"
    );
    let (code, out, _) = ngw(&["table1", "--rmax", "4", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(report(&out)["result"][1]["r"], 4);
}

#[test]
fn construct_emits_a_valid_decomposition() {
    let (code, out, _) = ngw(&["construct", "--kind", "four-block", "--n", "8", "--r", "3"]);
    assert_eq!(code, 0);
    let v = report(&out);
    let d: ngw::constructions::Decomposition = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!((d.n(), d.r()), (8, 3));
    let (code, _, _) = ngw(&[
        "construct",
        "--kind",
        "four-block",
        "--n",
        "4",
        "--r",
        "5",
        "--nondegenerate",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn bounds_lists_rows_without_solving() {
    let (code, out, _) = ngw(&[
        "bounds", "--param", "tw", "--agg", "sum", "--dir", "lower", "--r", "3", "--n", "9",
    ]);
    assert_eq!(code, 0);
    let v = report(&out);
    assert!(v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b["id"] == "ktree-edge-count"));
}

#[test]
fn exit_codes() {
    assert_eq!(ngw(&["bogus"]).0, 1);
    assert_eq!(ngw(&["solve", "--graph", "not a graph"]).0, 1);
    assert_eq!(ngw(&["solve", "--graph", "K3", "--param", "beta"]).0, 1);
    assert_eq!(ngw(&["--jobs", "0", "table1"]).0, 1);
    assert_eq!(ngw(&["table1", "--rmax", "2"]).0, 1);

    let (code, out, _) = ngw(&["solve", "--graph", "K40"]);
    assert_eq!(code, 2);
    assert_eq!(report(&out)["outcome"], "capacity");
    let (code, out, _) = ngw(&["solve", "--graph", "K13", "--param", "ppw"]);
    assert_eq!(code, 2);
    assert!(report(&out)["error"].as_str().unwrap().contains("13"));
    let (code, _, _) = ngw(&[
        "ng", "--param", "tw", "--agg", "sum", "--dir", "lower", "--r", "3", "--n", "12",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = ngw(&[
        "ng",
        "--param",
        "tw",
        "--agg",
        "sum",
        "--dir",
        "lower",
        "--r",
        "2",
        "--n",
        "6",
        "--max-states",
        "10",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn outcome_codes_match_error_kinds() {
    use ngw::report::Outcome;
    use ngw::Error;
    let code = |e: Error| Outcome::of_error(&e).exit_code();
    assert_eq!(code(Error::Domain("x".into())), 1);
    assert_eq!(
        code(Error::StateLimit {
            estimated: 1e9,
            limit: 1
        }),
        2
    );
    assert_eq!(code(Error::BoundViolation("x".into())), 3);
    assert_eq!(code(Error::Disagreement("x".into())), 4);
    assert_eq!(
        Outcome::BoundViolation.worst(Outcome::Capacity),
        Outcome::BoundViolation
    );
}

#[test]
fn violated_row_marks_report() {
    use ngw::bounds::{theorem_bound_table, Aggregate, BoundQuery, Direction};
    use ngw::report::{Outcome, Report};
    use ngw::{ParamKind, ValueInterval};
    let rows = theorem_bound_table(&BoundQuery {
        param: ParamKind::Eta,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        r: 2,
        n: 5,
        nondegenerate: false,
    });
    let mut ok = Report::new("ng", 0, Value::Null);
    ok.add_bounds(rows.clone(), ValueInterval::exact(6));
    assert_eq!(ok.outcome, Outcome::Ok);
    let mut bad = Report::new("ng", 0, Value::Null);
    bad.add_bounds(rows, ValueInterval::exact(7));
    assert_eq!(bad.outcome.exit_code(), 3);
    let v: Value = serde_json::from_str(&bad.to_json()).unwrap();
    assert!(schema().is_valid(&v));
}

#[test]
fn same_seed_same_report() {
    let args = [
        "--seed",
        "7",
        "mc",
        "--param",
        "tw",
        "--r",
        "2",
        "--n",
        "8",
        "--samples",
        "30",
    ];
    let (code, a, _) = ngw(&args);
    assert_eq!(code, 0);
    let (_, b, _) = ngw(&args);
    assert_eq!(without_timing(report(&a)), without_timing(report(&b)));
    let (_, c, _) = ngw(&[
        "--seed",
        "7",
        "--jobs",
        "1",
        "mc",
        "--param",
        "tw",
        "--r",
        "2",
        "--n",
        "8",
        "--samples",
        "30",
    ]);
    assert_eq!(without_timing(report(&a)), without_timing(report(&c)));
    let (_, d, _) = ngw(&[
        "--seed",
        "8",
        "mc",
        "--param",
        "tw",
        "--r",
        "2",
        "--n",
        "8",
        "--samples",
        "30",
    ]);
    assert_ne!(report(&a)["result"], report(&d)["result"]);
}

#[test]
fn verify_smoke_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, err) = ngw(&[
        "verify",
        "--level",
        "smoke",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.is_empty());
    let first = report(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(first["checks"].as_array().unwrap().len(), 13);
    assert!(first["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    let (_, again, _) = ngw(&["verify", "--level", "smoke"]);
    assert_eq!(without_timing(first), without_timing(report(&again)));
}

#[test]
fn checkpoint_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("run.ckpt");
    let args = [
        "ng",
        "--param",
        "tw",
        "--agg",
        "sum",
        "--dir",
        "lower",
        "--r",
        "2",
        "--n",
        "6",
        "--checkpoint",
        ck.to_str().unwrap(),
    ];
    let (code, first, _) = ngw(&args);
    assert_eq!(code, 0);
    assert!(ck.exists());
    let (code, second, _) = ngw(&args);
    assert_eq!(code, 0);
    assert_eq!(
        report(&first)["result"]["value"],
        report(&second)["result"]["value"]
    );
    assert_eq!(report(&second)["result"]["value"]["lo"], 4);
}
