use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nok(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nok"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(name: &str, body: &str) -> String {
    let path: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn hn_file() -> String {
    write(
        "hn-012.json",
        r#"{"hn":[{"rank":1,"slope":"0"},{"rank":1,"slope":"1"},{"rank":1,"slope":"2"}]}"#,
    )
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn divisor_body_with_metadata() {
    let hn = hn_file();
    let v = stdout_json(&nok(&[
        "body-div",
        "--hn",
        &hn,
        "--divisor",
        "1,-1",
        "--omega",
        "2,3,1",
    ]));
    assert_eq!(v["dim"], 3);
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["metadata"]["classification"], "movable");
    assert_eq!(v["metadata"]["d"], "3");
    assert_eq!(v["metadata"]["t"], "1");
    // 3 - 3t + t^3/2 at t = 1
    assert_eq!(v["metadata"]["volume"], "1/2");
}

#[test]
fn divisor_in_the_bundle_file_is_used() {
    let hn = write(
        "hn-with-divisor.json",
        r#"{"hn":[{"rank":1,"slope":"0"},{"rank":1,"slope":"2"}],"divisor":{"x":"1","y":"1"}}"#,
    );
    let v = stdout_json(&nok(&["body-div", "--hn", &hn]));
    assert_eq!(v["metadata"]["classification"], "ample");
    // d - r t with t = -1
    assert_eq!(v["metadata"]["volume"], "4");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let hn = hn_file();
    let args = ["body-curve", "--hn", hn.as_str(), "--curve", "1,-1/2"];
    let a = nok(&args);
    let b = nok(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = ["verify", "mthm", "--samples", "3", "--seed", "7"];
    assert_eq!(nok(&v).stdout, nok(&v).stdout);
}

#[test]
fn slice_table_as_csv() {
    let hn = hn_file();
    let out = nok(&["body-div", "--hn", &hn, "--divisor", "1,0", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("slice_index,nu1_lo,nu1_hi,volume"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn doubled_cube_measure_gives_cube_of_side_root_two() {
    let atoms: Vec<String> = (0..3)
        .flat_map(|k| {
            [1, -1].map(|s| {
                let dir: Vec<String> = (0..3).map(|j| format!("\"{}\"", if j == k { s } else { 0 })).collect();
                format!(r#"{{"dir":[{}],"mass":"2"}}"#, dir.join(","))
            })
        })
        .collect();
    let m = write(
        "cube-doubled.json",
        &format!(r#"{{"dim":3,"atoms":[{}]}}"#, atoms.join(",")),
    );
    let v = stdout_json(&nok(&["minkowski-solve", "--measure", &m]));
    let side = 2f64.sqrt();
    for h in v["solver"]["support"].as_array().unwrap() {
        let h: f64 = h.as_str().unwrap().parse().unwrap();
        assert!(h.abs() < 1e-12 || (h - side).abs() < 1e-12, "support {h}");
    }
    let off = nok(&["minkowski-solve", "--measure", &m, "--format", "off"]);
    assert!(String::from_utf8(off.stdout).unwrap().starts_with("OFF\n8 6 0\n"));
}

#[test]
fn labels_and_cones() {
    let hn = hn_file();
    let v = stdout_json(&nok(&["classify", "--hn", &hn, "--divisor", "1,0", "--curve", "1,-3"]));
    assert_eq!(v["divisor"], "nef");
    assert_eq!(v["curve"], "effective");
    let c = stdout_json(&nok(&["cones", "--hn", &hn]));
    assert_eq!(c["nef_divisors"][1]["y"], "0");
    assert_eq!(c["effective_divisors"][1]["y"], "-2");
}

#[test]
fn dual_volume_on_the_complete_intersection_cone() {
    let hn = write("hn-ss.json", r#"[{"rank":3,"slope":"2"}]"#);
    // s = 3 <= (r-1)σ_r = 4, so u* = 3/2 and M = d - r u* = 6 - 9/2
    let v = stdout_json(&nok(&["dual-volume", "--hn", &hn, "--curve", "1,-3"]));
    assert_eq!(v["u_star"], "3/2");
    assert_eq!(v["M"], "3/2");
    assert_eq!(v["nonnef"], false);
}

#[test]
fn closed_form_blaschke() {
    let hn = write("hn-ss2.json", r#"[{"rank":2,"slope":"1"}]"#);
    let v = stdout_json(&nok(&[
        "blaschke-closed",
        "--hn",
        &hn,
        "--a",
        "1",
        "--t1",
        "0",
        "--t2",
        "1",
    ]));
    assert_eq!(v["closed_form"]["t3"], "1/2");
}

#[test]
fn polygon_blaschke_sum() {
    let square = r#"{"dim":2,"mode":"exact","vertices":[["0","0"],["1","0"],["1","1"],["0","1"]],"facets":[]}"#;
    let p = write("square.json", square);
    let v = stdout_json(&nok(&["blaschke", &p, &p]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    let far: f64 = v["solver"]["support"][0]
        .as_str()
        .unwrap()
        .parse::<f64>()
        .unwrap()
        .abs();
    assert!(far < 1e-12 || (far - 2.0).abs() < 1e-12);
}

#[test]
fn toric_commands() {
    let a = write(
        "p2-line.json",
        r#"{"rays":[[1,0],[0,1],[-1,-1]],"intersections":["1","1","1"]}"#,
    );
    let b = write(
        "p2-conic.json",
        r#"{"rays":[[1,0],[0,1],[-1,-1]],"intersections":["2","2","2"]}"#,
    );
    let body = stdout_json(&nok(&["toric-body", &a]));
    assert_eq!(body["vertices"].as_array().unwrap().len(), 3);
    let sum = stdout_json(&nok(&["toric-blaschke", &a, &b]));
    assert_eq!(sum["check"]["pass"], true);
}

#[test]
fn domain_errors_exit_two_with_json() {
    let hn = hn_file();
    let out = nok(&["body-div", "--hn", &hn, "--divisor", "1,-5"]);
    assert_eq!(out.status.code(), Some(2));
    let e = stderr_json(&out);
    assert_eq!(e["error"], "NotEffective");
    assert!(e["detail"].is_string());
    let out = nok(&["dual-volume", "--hn", &hn, "--curve", "1,-3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "NotMovable");
}

#[test]
fn input_errors_exit_one_with_json() {
    let out = nok(&["body-div", "--hn", "/nonexistent/hn.json", "--divisor", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "IoError");

    let hn = hn_file();
    let out = nok(&["body-div", "--hn", &hn, "--divisor", "1;0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "ParseError");

    let bad = write("broken.json", "{\"hn\": [");
    assert_eq!(nok(&["cones", "--hn", &bad]).status.code(), Some(1));

    let out = nok(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "UsageError");

    let out = nok(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "UnknownSuite");
}

#[test]
fn off_needs_low_dimension() {
    let hn = write("hn-r4.json", r#"[{"rank":4,"slope":"0"}]"#);
    let out = nok(&["body-div", "--hn", &hn, "--divisor", "1,0", "--format", "off"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_and_fails_loudly() {
    let ok = nok(&["verify", "counterexample-p3"]);
    assert!(ok.status.success());
    assert!(String::from_utf8(ok.stdout).unwrap().contains("PASS"));
    let hn = write("hn-verify.json", r#"[{"rank":1,"slope":"0"},{"rank":1,"slope":"1"}]"#);
    let ok = nok(&["verify", "volume-ring", "--hn", &hn, "--samples", "5"]);
    assert!(ok.status.success());
    // an impossible threshold must make the run fail
    let bad = nok(&["verify", "continuity", "--samples", "2", "--tol", "1e-30"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(stderr_json(&bad)["error"], "VerificationFailed");
    assert!(String::from_utf8(bad.stdout).unwrap().contains("FAIL"));
}
