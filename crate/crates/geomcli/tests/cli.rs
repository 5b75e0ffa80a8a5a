use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn geomcli(args: &[&str], out: &Path) -> (i32, Value) {
    let status = Command::new(env!("CARGO_BIN_EXE_geomcli"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawn geomcli");
    let code = status.status.code().expect("exit code");
    let doc = ["report.json", "verification.json"]
        .iter()
        .find_map(|n| std::fs::read_to_string(out.join(n)).ok())
        .map(|t| serde_json::from_str(&t).expect("json"))
        .unwrap_or(Value::Null);
    (code, doc)
}

fn records<'a>(doc: &'a Value, status: &'a str) -> impl Iterator<Item = &'a Value> + 'a {
    doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(move |r| r["status"] == status)
}

#[test]
fn report_example_41() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = geomcli(&["report", "--curve", "example-4.1"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(doc["class"]["kind"], "Helix");
    assert_eq!(doc["corollaries"]["striction_equals_base"], true);
    assert_eq!(doc["convention"], "smooth");
    let table = doc["table"].as_array().unwrap();
    assert_eq!(table.len(), 32);
    for row in table {
        assert!((row["P"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn report_circle() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = geomcli(&["report", "--curve", "circle"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(doc["class"]["kind"], "Planar");
    assert_eq!(doc["corollaries"]["developable"], true);
    assert_eq!(doc["corollaries"]["minimal"], true);
}

#[test]
fn report_example_42() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = geomcli(&["report", "--curve", "example-4.2"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(doc["class"]["kind"], "General");
    for row in doc["table"].as_array().unwrap() {
        let s = row["s"].as_f64().unwrap();
        assert!(
            (row["v_star"].as_f64().unwrap() + s.sin() / 2.0).abs() <= 1e-8,
            "s = {s}"
        );
    }
    assert_eq!(doc["trimming"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_example_41_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = geomcli(
        &["verify", "--curve", "example-4.1", "--tol", "1e-5"],
        dir.path(),
    );
    assert_eq!(code, 0);
    assert_eq!(doc["summary"]["warn"], 0);
    assert_eq!(doc["summary"]["fail"], 0);
    assert_eq!(doc["printed_example"], "example 4.1");
}

#[test]
fn verify_circle_passes_corollaries() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = geomcli(&["verify", "--curve", "circle"], dir.path());
    assert_eq!(code, 0);
    for q in ["developable iff planar", "planar implies minimal"] {
        let r = doc["records"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["quantity"] == q)
            .unwrap();
        assert_eq!(r["status"], "PASS", "{q}");
    }
}

#[test]
fn verify_example_42_warns_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = geomcli(&["verify", "--curve", "example-4.2"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(doc["summary"]["fail"], 0);
    let warned: Vec<&str> = records(&doc, "WARN")
        .map(|r| r["quantity"].as_str().unwrap())
        .collect();
    for q in [
        "K",
        "H",
        "base kappa_n sign",
        "striction (kappa_g, kappa_n, tau_g)",
    ] {
        assert!(warned.contains(&q), "no WARN on {q}");
    }
    for r in records(&doc, "WARN") {
        assert_eq!(r["severity"], "paper-reference");
    }
}

#[test]
fn every_record_has_three_value_slots() {
    let dir = tempfile::tempdir().unwrap();
    let (_, doc) = geomcli(
        &["verify", "--curve", "example-4.2", "--s-samples", "6"],
        dir.path(),
    );
    for r in doc["records"].as_array().unwrap() {
        for slot in ["closed_form", "oracle", "paper"] {
            assert!(r.get(slot).is_some(), "{r}");
        }
        if !r["paper"].is_null() {
            assert!(r["paper"]["source"]
                .as_str()
                .unwrap()
                .starts_with("example 4.2"));
        }
    }
}

#[test]
fn coarse_oracle_step_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = geomcli(
        &["verify", "--curve", "helix:1:1", "--fd-step", "0.05"],
        dir.path(),
    );
    assert_eq!(code, 1);
    assert!(doc["summary"]["fail"].as_u64().unwrap() > 0);
    assert!(records(&doc, "FAIL").all(|r| r["severity"] == "gold"));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        geomcli(&["report", "--curve", "no-such-curve"], dir.path()).0,
        2
    );
    assert_eq!(
        geomcli(
            &["report", "--curve", "circle", "--s-samples", "1"],
            dir.path()
        )
        .0,
        2
    );
    assert_eq!(
        geomcli(&["report", "--curve", "circle", "--v-min", "2"], dir.path()).0,
        2
    );
    assert_eq!(
        geomcli(&["verify", "--curve", "circle", "--tol", "-1"], dir.path()).0,
        2
    );
}

#[test]
fn curve_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cubic.json");
    std::fs::write(
        &spec,
        r#"{"name": "cubic", "components": ["s", "s^2/2", "s^3/3"], "domain": [-1, 1]}"#,
    )
    .unwrap();
    let (code, doc) = geomcli(
        &[
            "verify",
            "--curve",
            spec.to_str().unwrap(),
            "--s-samples",
            "8",
        ],
        dir.path(),
    );
    assert_eq!(code, 0);
    assert_eq!(doc["curve"]["reparameterized"], true);
    assert!(doc["printed_example"].is_null());
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let read_all = |out: &Path| {
        [
            "report.json",
            "verification.json",
            "samples.csv",
            "surface.obj",
            "striction.obj",
        ]
        .map(|n| std::fs::read(out.join(n)).unwrap())
    };
    let mut runs = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        for cmd in ["report", "verify", "samples"] {
            geomcli(&[cmd, "--curve", "example-4.2", "--s-samples", "12"], &out);
        }
        geomcli(
            &[
                "mesh",
                "--curve",
                "example-4.2",
                "--s-samples",
                "12",
                "--striction",
            ],
            &out,
        );
        runs.push(read_all(&out));
    }
    assert!(runs[0] == runs[1]);
}
