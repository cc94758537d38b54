use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsmaps"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn ordinary_disk_grid() {
    let csv = stdout(&[
        "tables",
        "--family",
        "disks",
        "--mode",
        "ordinary",
        "--lengths",
        "2,4,6,8",
        "--qmax",
        "8",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "lengths,Q0,Q1,Q2,Q3,Q4,Q5,Q6,Q7,Q8");
    assert_eq!(
        lines[1],
        r#""2","1","2","9","54","378","2916","24057","208494","1876446""#
    );
    assert_eq!(
        lines[4],
        r#""8","14","140","1260","11340","103950","972972","9287460","90221040","890065260""#
    );
}

#[test]
fn fully_simple_torus_row_as_json() {
    let js = stdout(&[
        "tables",
        "--family",
        "tori",
        "--mode",
        "fully-simple",
        "--lengths",
        "2",
        "--qmax",
        "8",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&js).unwrap();
    assert_eq!(v["family"], "tori");
    assert_eq!(v["mode"], "fully-simple");
    assert_eq!(v["genus"], 1);
    assert_eq!(v["qmax"], 8);
    let coeffs: Vec<&str> = v["rows"][0]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(
        coeffs,
        ["0", "0", "6", "117", "1755", "23976", "313227", "3991275", "50084487"]
    );
}

#[test]
fn odd_boundary_row_vanishes() {
    let csv = stdout(&["tables", "--family", "disks", "--lengths", "3", "--qmax", "4"]);
    assert_eq!(csv.lines().nth(1).unwrap(), r#""3","0","0","0","0","0""#);
}

#[test]
fn rows_are_sorted_and_output_is_deterministic() {
    let args = [
        "tables",
        "--family",
        "cylinders",
        "--mode",
        "mixed",
        "--lengths",
        "4,2;1,3;2,2",
        "--qmax",
        "3",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let firsts: Vec<&str> = a.lines().skip(1).map(|l| l.split("\",").next().unwrap()).collect();
    assert_eq!(firsts, [r#""1,3"#, r#""2,2"#, r#""4,2"#]);
}

#[test]
fn invalid_selections_exit_with_two() {
    for args in [
        &["tables", "--family", "tori", "--mode", "mixed"][..],
        &["tables", "--family", "disks", "--genus", "1"],
        &["tables", "--family", "disks", "--qmax", "4", "--u-order", "3"],
        &["tables", "--family", "cylinders", "--lengths", "1,2,3"],
        &["tables", "--family", "spheres"],
        &["verify", "--suite", "nothing"],
        &["hurwitz", "--kind", "strict", "--k", "1", "--mu", "2", "--lambda", "1"],
        &["oracle", "--boundaries", "2,2", "--quads", "9"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn hurwitz_values() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "hurwitz", "--kind", "strict", "--k", "1", "--mu", "1,1", "--lambda", "2",
    ]))
    .unwrap();
    assert_eq!(v["value"], "1/2");
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "hurwitz", "--kind", "weak", "--k", "0", "--mu", "2", "--lambda", "2",
    ]))
    .unwrap();
    assert_eq!(v["value"], "1/2");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["hurwitz", "--kind", "strict", "--mu", "2,2", "--genus", "0"])).unwrap();
    assert_eq!(v["aut_times_value"], "2");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["hurwitz", "--kind", "weak", "--k", "3", "--size", "2"])).unwrap();
    assert_eq!(v["partitions"], serde_json::json!([[2], [1, 1]]));
    assert_eq!(v["rows"][0][1], "1/2");
}

#[test]
fn oracle_classified_census() {
    let csv = stdout(&["oracle", "--boundaries", "2,2", "--quads", "2", "--classify"]);
    assert!(csv.lines().any(|l| l == r#"0,fully-simple,connected,"6""#), "{csv}");
    let plain = stdout(&["oracle", "--boundaries", "2,2", "--quads", "2"]);
    assert!(plain.lines().skip(1).all(|l| l.contains(",ordinary,")));
}

#[test]
fn hurwitz_suite_passes() {
    let out = run(&["verify", "--suite", "hurwitz", "--lmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["suite"], "hurwitz");
}
