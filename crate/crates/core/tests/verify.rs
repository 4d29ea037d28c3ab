use serde_json::Value;
use spgraph_core::systems::{triangle_network_system, SystemSpec};
use spgraph_core::verify::{criterion_1, criterion_10, Check, Suite, VerifyConfig};

#[test]
fn exact_series_check_passes_on_built_in_system() {
    let out = criterion_1(&VerifyConfig::default());
    assert!(out.checks.iter().all(|c| c.passed), "{:?}", out.checks);
}

#[test]
fn exact_series_check_catches_a_tampered_constant() {
    // The network equations carry their constants as integer node
    // parameters; S2 = x P1^2 is the only square.
    let mut doc = triangle_network_system().to_json();
    let pow = doc["nodes"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|n| n[0] == "pow" && n[2] == 2)
        .expect("system has a square");
    pow[2] = Value::from(3);
    let cfg = VerifyConfig {
        triangle_system: Some(SystemSpec::from_json(&doc).unwrap()),
        ..VerifyConfig::default()
    };
    let out = criterion_1(&cfg);
    assert!(out.checks.iter().any(|c| !c.passed), "tampered system still passes");
}

#[test]
fn property_checks_pass() {
    let out = criterion_10(&VerifyConfig::default());
    assert!(out.checks.iter().all(|c| c.passed), "{:?}", out.checks);
}

#[test]
fn checks_serialize_without_timings() {
    let c = Check::close("4", "R(1)", 0.128, 0.12800381, 1e-5).timed(std::time::Duration::from_millis(3));
    let v = serde_json::to_value(&c).unwrap();
    assert!(v.get("seconds").is_none());
    let back: Check = serde_json::from_value(v).unwrap();
    assert!(back.passed && back.seconds.is_none());
    assert_eq!("full".parse::<Suite>().unwrap(), Suite::Full);
    assert!("slow".parse::<Suite>().is_err());
}
