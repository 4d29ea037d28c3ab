use std::fs;
use std::process::{Command, Output};

use num_rational::BigRational as Q;
use serde_json::Value;
use spgraph_core::series::{SeriesDoc, TruncatedSeries, Var};
use spgraph_core::verify::TRIANGLE_D_THROUGH_X3;

fn spgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spgraph"))
        .args(args)
        .env_remove("SPGRAPH_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn series(doc: &Value, group: &str, name: &str) -> TruncatedSeries<Q> {
    let d: SeriesDoc = serde_json::from_value(doc[group][name].clone()).unwrap();
    TruncatedSeries::from_doc(&d).unwrap()
}

fn row<'a>(report: &'a Value, quantity: &str) -> &'a Value {
    report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["quantity"] == quantity)
        .unwrap_or_else(|| panic!("no row {quantity}"))
}

fn value(report: &Value, quantity: &str) -> f64 {
    row(report, quantity)["value"].as_str().unwrap().parse().unwrap()
}

#[test]
fn solve_reproduces_printed_d_expansion() {
    let out = spgraph(&["solve", "--class", "triangle", "--order", "3", "--ring", "rational"]);
    assert!(out.status.success());
    let d = series(&json(&out), "networks", "D");
    for &(i, j, k, c) in &TRIANGLE_D_THROUGH_X3 {
        let fact: i64 = (1..=i as i64).product();
        assert_eq!(d.coeff(i, j, k), Q::new(c.into(), fact.into()), "x^{i} y^{j} u^{k}");
    }
    assert_eq!(d.terms().count(), TRIANGLE_D_THROUGH_X3.len());
}

#[test]
fn solve_at_order_zero_is_a_single_edge() {
    let out = spgraph(&["solve", "--class", "triangle", "--order", "0"]);
    let doc = json(&out);
    let terms = doc["networks"]["D"]["terms"].as_array().unwrap();
    assert_eq!(terms, &vec![serde_json::json!([0, 1, 0, "1/1"])]);
}

#[test]
fn girth_four_matches_triangle_system_without_triangles() {
    let girth = json(&spgraph(&["solve", "--class", "girth", "--k", "4", "--order", "10"]));
    let tri = json(&spgraph(&["solve", "--class", "triangle", "--order", "10"]));
    let zero = Q::from_integer(0.into());
    for name in ["B", "C_pointed", "C", "G"] {
        let t = series(&tri, "series", name).specialize(Var::U, &zero).unwrap();
        assert_eq!(series(&girth, "series", name), t, "{name}");
    }
}

#[test]
fn dumped_system_solves_like_the_built_in_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.json");
    let p = path.to_str().unwrap();
    assert!(spgraph(&["dump-system", "--class", "c4", "--output", p]).status.success());
    let a = spgraph(&["solve", "--system", p, "--order", "5"]);
    let b = spgraph(&["solve", "--class", "c4", "--order", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn float_ring_solution_agrees_with_rational() {
    let f = json(&spgraph(&["solve", "--class", "triangle", "--order", "4", "--ring", "float"]));
    let r = json(&spgraph(&["solve", "--class", "triangle", "--order", "4"]));
    assert!(f["ring"].as_str().unwrap().starts_with("bigfloat"));
    let ft = f["series"]["G"]["terms"].as_array().unwrap();
    let rt = r["series"]["G"]["terms"].as_array().unwrap();
    assert_eq!(ft.len(), rt.len());
    for (a, b) in ft.iter().zip(rt) {
        assert!((0..3).all(|i| a[i] == b[i]));
        let x: f64 = a[3].as_str().unwrap().parse().unwrap();
        let (n, d) = b[3].as_str().unwrap().split_once('/').unwrap();
        let y = n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap();
        assert!((x - y).abs() < 1e-15 * y.abs().max(1.0));
    }
}

#[test]
fn two_connected_triangle_moments() {
    let out = spgraph(&["moments", "--level", "two_connected", "--subgraph", "triangle"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!((value(&r, "mu_triangle_2") - 0.45242).abs() < 1e-4);
    assert!((value(&r, "sigma2_triangle_2") - 0.45997).abs() < 1e-4);
    assert_eq!(r["passed"], true);
}

#[test]
fn two_connected_four_cycle_mean() {
    let out = spgraph(&["moments", "--level", "two_connected", "--subgraph", "c4"]);
    let r = json(&out);
    assert!((value(&r, "mu_c4_2") - 0.51235).abs() < 1e-4);
    // The variance row is compared with its printed target and fails.
    assert_eq!(row(&r, "sigma2_c4_2")["passed"], false);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn triangle_free_constants_report_every_quantity() {
    let out = spgraph(&["constants", "--family", "triangle_free"]);
    let r = json(&out);
    for q in [
        "b_triangle_free",
        "c_triangle_free",
        "g_triangle_free",
        "rho_triangle_free^-1",
        "connectivity_triangle_free",
    ] {
        let row = row(&r, q);
        assert!(row["target"].is_number() && row["difference"].is_number(), "{q}");
    }
    assert!((value(&r, "b_triangle_free") - 0.00152).abs() < 2e-5);
    assert!((value(&r, "rho_triangle_free^-1") - 6.28155).abs() < 1e-3);
    // c and g miss their printed targets, so the command reports failure.
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_overrides_apply() {
    let out = spgraph(&[
        "constants",
        "--family",
        "triangle_free",
        "--tol",
        "c_triangle_free=0.01",
        "--tol",
        "g_triangle_free=0.01",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(row(&json(&out), "c_triangle_free")["tolerance"], 0.01);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tol.json");
    fs::write(&path, r#"{"mu_triangle_2": 1e-12}"#).unwrap();
    let out = spgraph(&[
        "moments",
        "--level",
        "two_connected",
        "--subgraph",
        "triangle",
        "--tolerances",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn census_output_is_byte_stable_and_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let p = path.to_str().unwrap();
    let args = ["census", "--n", "5", "--class", "two_connected/sp", "--pattern", "4; 1-2,2-3,3-4,4-1"];
    let first = spgraph(&args);
    let second = spgraph(&args);
    assert_eq!(first.stdout, second.stdout);
    let mut with_output = args.to_vec();
    with_output.extend(["--output", p]);
    assert!(spgraph(&with_output).status.success());
    assert_eq!(fs::read(&path).unwrap(), first.stdout);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let c = json(&first);
    assert_eq!(c["total"], 152);
    assert_eq!(c["distribution"]["3"], 20);
}

#[test]
fn census_csv_export() {
    let out = spgraph(&["census", "--n", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("copies,graphs"));
    let total: u64 = lines.map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    // Connected labelled SP graphs on 4 vertices: all 38 connected graphs but K4.
    assert_eq!(total, 37);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(spgraph(&["--precision", "20", "census", "--n", "3"]).status.code(), Some(2));
    assert_eq!(spgraph(&["--series-order", "3", "census", "--n", "3"]).status.code(), Some(2));
    assert_eq!(spgraph(&["census", "--n", "9"]).status.code(), Some(2));
    assert_eq!(spgraph(&["solve", "--class", "girth"]).status.code(), Some(2));
    assert_eq!(spgraph(&["moments", "--level", "nope", "--subgraph", "c4"]).status.code(), Some(2));
    let out = spgraph(&["census", "--n", "3", "--tol", "oops"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn solver_failure_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.json");
    // Well formed, but without the block outputs the assembly needs.
    fs::write(
        &path,
        r#"{"name":"bare","class":"triangle","unknowns":["V"],"gain_one_order":["V"],
            "nodes":[["unknown","V"],["x"]],"equations":{"V":1},"outputs":{}}"#,
    )
    .unwrap();
    let out = spgraph(&["solve", "--system", path.to_str().unwrap(), "--order", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "numeric");
}

#[test]
fn precision_comes_from_the_environment() {
    let run = |p: &str| {
        Command::new(env!("CARGO_BIN_EXE_spgraph"))
            .args(["moments", "--level", "two_connected", "--subgraph", "triangle"])
            .env("SPGRAPH_PRECISION", p)
            .output()
            .unwrap()
    };
    let out = run("60");
    assert_eq!(json(&out)["precision_digits"], 60);
    assert_eq!(run("12").status.code(), Some(2));
}

#[test]
fn fast_verification_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = spgraph(&["verify", "--fast", "--output", path.to_str().unwrap()]);
    let table = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{table}");
    for c in ["1", "2", "3", "10"] {
        assert!(table.contains(&format!("criterion {c}: PASS")));
    }
    let report: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "fast");
    assert_eq!(report["passed"], true);
}

#[test]
fn fast_verification_catches_a_tampered_system() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.json");
    let out = spgraph(&["dump-system", "--class", "triangle"]);
    let mut doc = json(&out);
    let pow = doc["nodes"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|n| n[0] == "pow" && n[2] == 2)
        .unwrap();
    pow[2] = Value::from(3);
    fs::write(&path, doc.to_string()).unwrap();
    // A short girth comparison keeps this run quick; the D check is unaffected.
    let out = spgraph(&[
        "verify",
        "--fast",
        "--girth-order",
        "6",
        "--triangle-system",
        path.to_str().unwrap(),
    ]);
    let table = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1), "{table}");
    assert!(table.contains("criterion 1: FAIL"));
    let d_line = table.lines().find(|l| l.contains("triangle D through x^3")).unwrap();
    assert!(d_line.ends_with("FAIL"));
}
