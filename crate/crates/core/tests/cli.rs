use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn dgla(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dgla"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("DGLA_THREADS", t),
        None => cmd.env_remove("DGLA_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn run(command: &str, input: &str, extra: &[&str]) -> (i32, String) {
    let input = data(input);
    let mut args = vec![command, "--in", input.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = dgla(&args, None);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("json report")
}

#[test]
fn cohomology_of_sl2() {
    let (code, out) = run("ce-cohomology", "sl2.json", &[]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["result"]["dims"], serde_json::json!({"0": 1, "3": 1}));
    assert_eq!(r["verdict"]["exact"], true);
    assert_eq!(r["inputs"]["in"].as_str().unwrap().len(), 64);
}

#[test]
fn degree_window_filters_rows() {
    let (code, out) = run("ce-cohomology", "sl2.json", &["--degree-window", "1:3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"]["dims"], serde_json::json!({"3": 1}));
    let (code, _) = run("ce-cohomology", "sl2.json", &["--degree-window", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run("validate", "sl2.json", &[]).0, 0);
    let (code, out) = run("validate", "sl2_corrupted.json", &[]);
    assert_eq!(code, 3);
    assert!(out.contains("e,f,h"));
    assert_eq!(run("ce-homology", "sl2_corrupted.json", &[]).0, 2);
    assert_eq!(run("cellular-resolve", "polynomial.json", &[]).0, 2);
    assert_eq!(run("unit-check", "free_odd.json", &["--depth", "0"]).0, 4);
    assert_eq!(run("ce-homology", "missing.json", &[]).0, 2);
    assert_eq!(run("schlessinger", "sl2.json", &[]).0, 2);
}

#[test]
fn outside_linear_regime_is_not_a_failure() {
    let cubic = data("cubic.json");
    let (code, out) = run("mc", "free_odd.json", &["--rep", cubic.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["verdict"]["status"], "not_applicable");
    assert_eq!(r["result"]["regime"], "nonlinear");
}

#[test]
fn formats() {
    let (_, csv) = run("cellular-resolve", "dual_numbers.json", &["--format", "csv"]);
    assert!(csv.starts_with("table,label,kind,stage,degree,weight,d\n"));
    assert!(csv.contains("cells,u1_1,relation,1,-1,2,x0_0^2\n"));
    let (_, text) = run("cellular-resolve", "dual_numbers.json", &["--format", "table"]);
    assert!(text.starts_with("dgla cellular-resolve: pass"));
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout) = run("unit-check", "free_even.json", &["--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let r = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(r["verdict"]["status"], "pass");
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let cases: [(&str, &str); 4] = [
        ("ce-cohomology", "heisenberg.json"),
        ("pbw-check", "sl2.json"),
        ("cellular-resolve", "square_zero_plane.json"),
        ("unit-check", "free_odd.json"),
    ];
    for (command, input) in cases {
        let input = data(input);
        let args = [command, "--in", input.to_str().unwrap(), "--max-weight", "4"];
        let strip = |o: Output| {
            let mut v = json(&String::from_utf8(o.stdout).unwrap());
            v.as_object_mut().unwrap().remove("timing_ms");
            v
        };
        let one = strip(dgla(&args, Some("1")));
        let many = strip(dgla(&args, None));
        assert_eq!(one, many, "{command}");
    }
}
