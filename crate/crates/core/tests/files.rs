//! Reading and writing spaces and link systems.

use std::io::Write;

use decayspace::generators::{gen_equidecay_graph, gen_threepoint, Graph};
use decayspace::space::ViolationKind;
use decayspace::{DecaySpace, Error, LinkSystem, SpaceMode};

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn space_json_round_trip() {
    let s = gen_threepoint(16.0).unwrap();
    let text = s.to_json_string().unwrap();
    assert_eq!(DecaySpace::from_json_str(&text).unwrap(), s);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["mode"], "node-space");
    assert_eq!(v["n"], 3);
    assert_eq!(v["f"][0][2], 32.0);
}

#[test]
fn csv_space_is_node_space() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "m.csv", "0,1,4\n1,0,1\n4,1,0\n");
    let s = DecaySpace::load(&path).unwrap();
    assert_eq!(s.mode(), SpaceMode::NodeSpace);
    assert_eq!(s.decay(0, 2), 4.0);
}

#[test]
fn malformed_inputs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write(&dir, "r.csv", "0,1\n1\n");
    assert!(DecaySpace::load(&ragged).is_err());
    let text = write(&dir, "t.json", r#"{"mode": "node-space", "n": 2, "f": [[0, 1], [1]]}"#);
    assert!(DecaySpace::load(&text).is_err());
    assert!(DecaySpace::load(dir.path().join("missing.json")).is_err());
}

#[test]
fn axiom_violations_parse_but_fail_validation() {
    let bad = DecaySpace::from_json_str(r#"{"mode": "node-space", "n": 2, "f": [[0, -1], [1, 0]]}"#).unwrap();
    let report = bad.validate();
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].kind, ViolationKind::NonNegativity);
    assert_eq!((report.violations[0].p, report.violations[0].q), (0, 1));
    let zero = DecaySpace::from_json_str(r#"{"mode": "node-space", "n": 2, "f": [[0, 0], [1, 0]]}"#).unwrap();
    assert!(matches!(zero.ensure_valid(), Err(Error::InvalidSpace(_))));
}

#[test]
fn system_with_space_path() {
    let dir = tempfile::tempdir().unwrap();
    write(&dir, "s.json", &gen_threepoint(2.0).unwrap().to_json_string().unwrap());
    let sys = write(
        &dir,
        "sys.json",
        r#"{"space": "s.json", "links": [[0, 1], [2, 1]], "beta": 1, "noise": 0,
            "power": {"kind": "uniform", "P": 1}}"#,
    );
    let sys = LinkSystem::load(&sys).unwrap();
    assert_eq!(sys.len(), 2);
    assert_eq!(sys.own_decay(1), 2.0);
}

#[test]
fn system_json_round_trip() {
    let sys = gen_equidecay_graph(&Graph::new(4, [[0, 1], [2, 3]]).unwrap()).unwrap();
    let text = sys.to_json_string().unwrap();
    let back = LinkSystem::from_json_str(&text).unwrap();
    assert_eq!(back, sys);
    assert!(back.is_link_gain());
}

#[test]
fn explicit_power_length_checked() {
    let text = r#"{"space": {"mode": "node-space", "n": 2, "f": [[0, 1], [1, 0]]},
        "links": [[0, 1]], "beta": 1, "noise": 0, "power": {"kind": "explicit", "P": [1, 2]}}"#;
    assert!(matches!(LinkSystem::from_json_str(text), Err(Error::InvalidParameter(_))));
}
