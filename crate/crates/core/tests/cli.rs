use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_passes_on_a_nodal_cubic() {
    let out = run(&["verify", &fixture("nodal_cubic.json"), "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], 0);
    assert_eq!(v["invariants"]["d"], 3);
    assert_eq!(v["invariants"]["p_a"], 1);
    assert_eq!(v["invariants"]["g_plus_mu"], 1);
    assert_eq!(v["invariants"]["mu"], 1);
    let verdicts: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["verdict"].clone())
        .collect();
    assert!(verdicts.iter().all(|x| x == "PASS"), "{verdicts:?}");
}

#[test]
fn verify_reports_the_axes_as_not_lci() {
    let out = run(&["verify", &fixture("axes.json"), "--json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let lci = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "lci")
        .unwrap();
    assert_eq!(lci["verdict"], "FAIL");
    assert_eq!(lci["first_failure"]["l"], 3);
}

#[test]
fn summary_lists_checks() {
    let out = run(&["verify", &fixture("smooth_conic.json")]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] plane_theorem"), "{text}");
    assert!(text.contains("d = 2, p_a = 0"), "{text}");
}

#[test]
fn hilbert_reports_degree_and_genus() {
    let out = run(&["hilbert", &fixture("smooth_quartic.json"), "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["hilbert"]["polynomial"], "4*l - 2");
    assert_eq!(v["invariants"]["p_a"], 3);
}

#[test]
fn hilbert_of_a_surface_is_a_precondition_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quadric.json");
    std::fs::write(
        &path,
        r#"{"variables": ["x0", "x1", "x2", "x3"], "generators": ["x0*x3 - x1*x2"]}"#,
    )
    .unwrap();
    let out = run(&["hilbert", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["hilbert"]["degree"], 2);
}

#[test]
fn wspace_of_the_nodal_cubic_in_degree_six_is_f_squared() {
    let out = run(&["wspace", &fixture("nodal_cubic.json"), "6", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["wspace"]["dim"], 1);
    assert_eq!(v["wspace"]["codim"], 27);
    // normalized to a monic leading term: (x^3 + x^2 z - y^2 z)^2
    assert_eq!(
        v["wspace"]["basis"][0]
            .as_str()
            .unwrap()
            .split(" + ")
            .next(),
        Some("x^6")
    );
}

#[test]
fn characteristic_dividing_the_degree_exits_three() {
    let out = run(&[
        "wspace",
        &fixture("nodal_cubic.json"),
        "7",
        "--field",
        "prime:7",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("divides"));
}

#[test]
fn small_characteristic_table_skips_degrees() {
    let out = run(&[
        "hilbert",
        &fixture("nodal_cubic.json"),
        "--field",
        "prime:3",
        "--window",
        "1:9",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["skipped_degrees"], serde_json::json!([3, 6, 9]));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["hilbert", missing.to_str().unwrap()])), 2);

    let cases = [
        "{",
        r#"{"variables": ["x", "y", "z"], "generators": ["x + y^2"]}"#,
        r#"{"variables": ["x", "y", "z"], "generators": ["x + w"]}"#,
        r#"{"variables": ["x", "y", "z"], "generators": ["x +* y"]}"#,
        r#"{"field": {"type": "prime", "p": 10}, "variables": ["x", "y", "z"], "generators": ["x"]}"#,
        r#"{"variables": ["x", "y", "z"], "generators": ["x"], "extra": true}"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&path, text).unwrap();
        let out = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(
            code(&out),
            2,
            "{text}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty());
    }
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(
        code(&run(&["verify", &fixture("line.json"), "--window", "5"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "verify",
            &fixture("line.json"),
            "--field",
            "prime:1"
        ])),
        2
    );
}

#[test]
fn beta_closed_form_and_brute_force() {
    let out = run(&[
        "beta",
        "2",
        "1",
        "2",
        "4",
        "--brute",
        "x0^2 + x1*x2",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["beta"]["closed_form"], 14);
    assert_eq!(v["beta"]["brute_force"], 14);
    assert_eq!(v["beta"]["verdict"], "PASS");

    let out = run(&["beta", "2", "1", "2", "4", "--brute", "x^2 + y*z", "--json"]);
    assert_eq!(json(&out)["beta"]["f"], "x0^2 + x1*x2");

    // outside l >= 2d
    assert_eq!(code(&run(&["beta", "2", "1", "2", "3"])), 3);
    // wrong degree for the brute-force form
    assert_eq!(
        code(&run(&["beta", "2", "1", "2", "4", "--brute", "x0^3"])),
        3
    );
}

#[test]
fn out_file_matches_json_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let fx = fixture("twisted_cubic.json");
    let out = run(&["verify", &fx, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("[PASS] codim_formula"));
    let written = std::fs::read(&path).unwrap();
    let stdout = run(&["verify", &fx, "--json"]).stdout;
    assert_eq!(written, stdout);
}

#[test]
fn runs_are_byte_identical() {
    for args in [
        vec!["verify", "FIXTURE", "--json"],
        vec!["hilbert", "FIXTURE", "--field", "rational", "--json"],
        vec!["wspace", "FIXTURE", "5"],
    ] {
        let fx = fixture("cuspidal_cubic.json");
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "FIXTURE" { fx.as_str() } else { a })
            .collect();
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn both_backends_agree_on_the_twisted_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tc.json");
    std::fs::write(
        &path,
        r#"{"variables": ["x0", "x1", "x2", "x3"],
            "generators": ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
            "options": {"window": [1, 8], "backend": "both"}}"#,
    )
    .unwrap();
    let out = run(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out).get("warnings").is_none());
}
