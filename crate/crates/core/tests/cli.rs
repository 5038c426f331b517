use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn seshadri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seshadri"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn verify_stdin(doc: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_seshadri"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(doc).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(out: &Output) -> String {
    json(out)["error"]["kind"].as_str().unwrap().to_string()
}

const ROUND_TRIPS: &[&[&str]] = &[
    &["surface", "--l2", "5"],
    &["surface", "--l2", "16"],
    &["surface", "--l2", "7", "--alpha", "1"],
    &["abelian", "--g", "2", "--kind", "hyperelliptic"],
    &["abelian", "--g", "5", "--kind", "general"],
    &["abelian", "--g", "2", "--kind", "ppas-exact"],
    &["scan", "floor", "--from", "8", "--to", "40"],
    &[
        "scan",
        "violation",
        "--l2",
        "3",
        "--alpha",
        "1",
        "--dmax",
        "50",
        "--mmax",
        "50",
    ],
    &[
        "scan",
        "violation",
        "--l2",
        "2",
        "--alpha",
        "2",
        "--dmax",
        "10",
        "--mmax",
        "10",
    ],
    &["reproduce-paper"],
];

#[test]
fn every_command_verifies_its_own_output() {
    for args in ROUND_TRIPS {
        let out = seshadri(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["verified"], true, "{args:?}");
        let v = verify_stdin(&out.stdout);
        assert_eq!(v.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&v)["verified"], true);
    }
}

#[test]
fn out_flag_writes_a_verifiable_file() {
    let dir = std::env::temp_dir().join(format!("seshadri-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("surface.json");
    let path_str = path.to_str().unwrap();
    let out = seshadri(&["--out", path_str, "surface", "--l2", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(seshadri(&["verify", path_str]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tampered_values_fail_verification() {
    let doc = json(&seshadri(&["surface", "--l2", "5"]));

    let mut upper = doc.clone();
    upper["result"]["bounds"]["upper"]["value"]["radicand"] = "6".into();
    let out = verify_stdin(upper.to_string().as_bytes());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "verification_failed");

    let mut step = doc.clone();
    step["result"]["certificate"]["steps"][4]["inequality"]["rhs"][0]["coeff"] = "7".into();
    assert_eq!(
        verify_stdin(step.to_string().as_bytes()).status.code(),
        Some(3)
    );

    let mut input = doc;
    input["inputs"]["l2"] = "6".into();
    assert_eq!(
        verify_stdin(input.to_string().as_bytes()).status.code(),
        Some(3)
    );

    let mut ppas = json(&seshadri(&["abelian", "--g", "2", "--kind", "ppas-exact"]));
    ppas["result"]["exact"]["value"] = "3/2".into();
    assert_eq!(
        verify_stdin(ppas.to_string().as_bytes()).status.code(),
        Some(3)
    );

    let mut floor = json(&seshadri(&["scan", "floor", "--from", "8", "--to", "12"]));
    floor["result"]["rows"][1]["is_counterexample"] = true.into();
    assert_eq!(
        verify_stdin(floor.to_string().as_bytes()).status.code(),
        Some(3)
    );
}

#[test]
fn domain_errors_exit_2_with_json() {
    let cases: &[(&[&str], &str)] = &[
        (&["surface", "--l2", "4", "--alpha", "3"], "alpha_too_large"),
        (&["surface", "--l2", "0"], "surface"),
        (&["abelian", "--g", "1", "--kind", "general"], "usage"),
        (
            &[
                "scan",
                "violation",
                "--l2",
                "2",
                "--alpha",
                "2",
                "--dmax",
                "100000",
                "--mmax",
                "100000",
            ],
            "cap_exceeded",
        ),
        (
            &["scan", "floor", "--from", "1", "--to", "5000000"],
            "cap_exceeded",
        ),
    ];
    for (args, kind) in cases {
        let out = seshadri(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = json(&out);
        assert_eq!(err["error"]["exit_code"], 2);
        assert!(
            error_kind(&out).starts_with(kind),
            "{args:?}: {}",
            error_kind(&out)
        );
    }
}

#[test]
fn cap_can_be_raised() {
    let out = seshadri(&[
        "scan",
        "violation",
        "--l2",
        "2",
        "--alpha",
        "1",
        "--dmax",
        "2000",
        "--mmax",
        "1000",
        "--cap",
        "3000000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["verdict"], "pass");
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(seshadri(&["surface"]).status.code(), Some(2));
    assert_eq!(seshadri(&["surface", "--l2", "x"]).status.code(), Some(2));
    assert_eq!(
        seshadri(&["abelian", "--g", "2", "--kind", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(verify_stdin(b"not json").status.code(), Some(2));
    assert_eq!(
        seshadri(&["verify", "/nonexistent/doc.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn pretty_output_is_a_table() {
    let out = seshadri(&["--pretty", "surface", "--l2", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(***)"), "{text}");
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn output_is_deterministic() {
    let a = seshadri(&["reproduce-paper"]).stdout;
    let b = seshadri(&["reproduce-paper"]).stdout;
    assert_eq!(a, b);
}
