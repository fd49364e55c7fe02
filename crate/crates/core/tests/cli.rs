use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_exhull");

fn table1_csv() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/table1.csv"))
}

fn exhull(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("EXHULL_LOG").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table1_with_planar_verification() {
    let out = exhull(&["run", "--input", table1_csv().to_str().unwrap(), "--verify", "2d"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("extremes (7): 1 2 3 4 5 6 9"), "{text}");
    assert!(text.contains("verification (2d): agrees"));
}

#[test]
fn generated_sphere_matches_oracle() {
    let out = exhull(&["run", "--generate", "sphere", "--n", "50", "--m", "4", "--verify", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("extremes (50)"));
}

#[test]
fn usage_and_input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "x,y\n1,2\n3,abc\n").unwrap();
    let bad = bad.to_str().unwrap();
    for args in [
        &["run"][..],
        &["run", "--bogus"],
        &["run", "--input", "/nonexistent/points.csv"],
        &["run", "--input", bad],
        &["run", "--generate", "cube", "--n", "0", "--m", "2"],
        &["run", "--generate", "cube", "--n", "10"],
        &["run", "--generate", "cube", "--n", "10", "--m", "3", "--verify", "2d"],
        &["run", "--generate", "cube", "--n", "10", "--m", "3", "--svg", "x.svg"],
        &["run", "--generate", "cube", "--n", "10", "--m", "2", "--eps-zero", "-1"],
        &["run", "--generate", "cube", "--n", "10", "--m", "2", "--order", "file"],
    ] {
        let out = exhull(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
    let out = exhull(&["run", "--input", bad]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn oracle_disagreement_exits_2() {
    // With a huge threshold a single-seed run stops once point 4 is within 5
    // of an edge, while the planar hull still has it as a vertex.
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    std::fs::write(&csv, "0,0\n10,0\n0,10\n5.5,5.5\n").unwrap();
    let out = exhull(&["run", "--input", csv.to_str().unwrap(), "--eps-zero", "5", "--init", "single-seed", "--verify", "2d"]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("found by oracle only: 4"), "{err}");
}

#[test]
fn reports_are_byte_identical_and_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = exhull(&[
            "run", "--generate", "gaussian", "--n", "80", "--m", "3", "--seed", "4", "--trace", "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["input"]["n"], 80);
    let idx = v["extremes"]["indices"].as_array().unwrap();
    let lab = v["extremes"]["labels"].as_array().unwrap();
    assert!(idx.iter().zip(lab).all(|(i, l)| i.as_u64().unwrap() + 1 == l.as_u64().unwrap()));
    assert!(v["points"][0]["steps"].is_array());
    assert!(v.get("wall_seconds").is_none());
}

#[test]
fn timing_is_isolated_in_one_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = exhull(&["run", "--input", table1_csv().to_str().unwrap(), "--timing", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert!(v["wall_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn svg_draws_hull_through_seven_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let out = exhull(&["run", "--input", table1_csv().to_str().unwrap(), "--svg", svg.to_str().unwrap(), "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    let hull = text.lines().find(|l| l.contains(r#"id="hull""#)).unwrap();
    let points = hull.split(r#"points=""#).nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(points.split_whitespace().count(), 7);
    assert_eq!(text.matches("<circle").count(), 9);
    assert!(text.contains(r#"class="residual""#));
}

#[test]
fn order_file_changes_path_not_result() {
    let dir = tempfile::tempdir().unwrap();
    let order = dir.path().join("order.txt");
    std::fs::write(&order, "8 7 6\n").unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let input = table1_csv().to_str().unwrap();
    let o1 = exhull(&["run", "--input", input, "--report", a.to_str().unwrap()]);
    let o2 = exhull(&[
        "run", "--input", input, "--order", "file", "--order-file", order.to_str().unwrap(), "--report",
        b.to_str().unwrap(),
    ]);
    assert_eq!((o1.status.code(), o2.status.code()), (Some(0), Some(0)));
    let va: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&std::fs::read(&b).unwrap()).unwrap();
    assert_eq!(va["extremes"], vb["extremes"]);
    assert_eq!(vb["points"][0]["label"], 8);
    assert_eq!(vb["config"]["order"], "given:7,6,5");
}

#[test]
fn precenter_keeps_indices() {
    let input = table1_csv().to_str().unwrap();
    let plain = stdout(&exhull(&["run", "--input", input]));
    let centered = stdout(&exhull(&["run", "--input", input, "--precenter"]));
    let line = |s: &str| s.lines().find(|l| l.starts_with("extremes")).unwrap().to_owned();
    assert_eq!(line(&plain), line(&centered));
}

#[test]
fn generate_writes_csv_and_run_reads_it() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let out = exhull(&["generate", "simplex-interior", "--n", "30", "--m", "3", "--seed", "2", "-o", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = exhull(&["run", "--input", csv.to_str().unwrap(), "--verify", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("extremes (4): 1 2 3 4"));
}

#[test]
fn duplicate_rows_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let report = dir.path().join("d.json");
    std::fs::write(&csv, "x1,x2\n0,0\n1,0\n0,1\n1,0\n").unwrap();
    let out = Command::new(BIN)
        .args(["run", "--input", csv.to_str().unwrap(), "--report", report.to_str().unwrap()])
        .env("EXHULL_LOG", "warn")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[5]"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["input"]["dropped_lines"], serde_json::json!([5]));
    assert_eq!(v["input"]["n"], 3);
}
