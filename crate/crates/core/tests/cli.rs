use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_legmosaic"));
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("LEGMOSAIC_")) {
        c.env_remove(k);
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let line = err.lines().last().expect("diagnostic line");
    serde_json::from_str(line).unwrap()
}

#[test]
fn validate() {
    let ok = run(&["validate", "2134"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "suitably connected: true");
    let bad = run(&["validate", "2133"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stderr_json(&bad)["error"], "not_suitably_connected");
    let garbage = run(&["validate", "21a4"]);
    assert_eq!(garbage.status.code(), Some(2));
    assert_eq!(stderr_json(&garbage)["error"], "invalid_character");
}

#[test]
fn usage_errors() {
    for args in [&["nonsense"][..], &["count", "--m", "x"], &["render", "2134", "--style", "png"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr_json(&o)["message"].is_string());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn count() {
    assert_eq!(stdout(&run(&["count", "--m", "5", "--n", "2"])).trim(), "16");
    let table = stdout(&run(&["count", "--table-max", "3", "--format", "csv"]));
    assert!(table.starts_with("m,n,variant,value\n"));
    assert!(table.contains("3,3,legendrian,20\n"));
    let j: Value = serde_json::from_str(&stdout(&run(&["count", "--m", "4", "--n", "4", "--format", "json"]))).unwrap();
    assert_eq!(j["value"], "1504");
    let o = run(&["--dim-cap", "2", "count", "--m", "9", "--n", "9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate() {
    let o = run(&["enumerate", "--size", "3"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 20);
    assert!(lines.iter().all(|l| l.starts_with("3x3:")));
    assert_eq!(stdout(&run(&["enumerate", "--size", "4", "--knots-only", "--count-only"])).trim(), "793");
    let too_big = run(&["enumerate", "--size", "6"]);
    assert_eq!(too_big.status.code(), Some(3));
    assert_eq!(stderr_json(&too_big)["error"], "resource_limit");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = run(&["enumerate", "--rows", "3", "--cols", "4", "--out", out.to_str().unwrap()]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let again = run(&["enumerate", "--rows", "3", "--cols", "4", "--resume", out.join("checkpoint.log").to_str().unwrap()]);
    let k: Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(j["total"], k["total"]);
    assert_eq!(k["resumed_shards"], k["shards"]);
}

#[test]
fn invariants_identify_bounds() {
    let inv: Value = serde_json::from_str(&stdout(&run(&["invariants", "2134"]))).unwrap();
    assert_eq!(inv["tb"], -1);
    assert_eq!(inv["encoding"], "2x2:2134");
    for key in ["rows", "cols", "components", "rot", "writhe", "P", "N", "C", "U", "D"] {
        assert!(inv.get(key).is_some(), "{key}");
    }
    let crab = stdout(&run(&["construct", "crab", "--n", "5"]));
    let enc = crab.lines().next().unwrap();
    let id: Value = serde_json::from_str(&stdout(&run(&["identify", enc]))).unwrap();
    assert_eq!(id["type"], "3_1");
    assert_eq!(id["crossings"], 5);
    let b: Value = serde_json::from_str(&stdout(&run(&["bounds", "--tb", "-29", "--rot", "0"]))).unwrap();
    assert_eq!(b["upper_unknot"], 7);
    let o = run(&["bounds", "--tb", "-2", "--rot", "0", "--unknot"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn construct_unknot_reports_requested_rot() {
    for (tb, rot) in [(-19, 4), (-19, -4), (-29, 0)] {
        let o = run(&["construct", "unknot", "--tb", &tb.to_string(), "--rot", &rot.to_string(), "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(j["invariants"]["tb"], tb);
        assert_eq!(j["invariants"]["rot"], rot);
        assert_eq!(j["plan"]["n"], 7);
        assert!(j["encoding"].as_str().unwrap().starts_with("7x7:"));
    }
}

#[test]
fn render() {
    let ascii = stdout(&run(&["render", "0000"]));
    assert!(ascii.contains(" .  ."));
    let svg = stdout(&run(&["render", "2134", "--style", "svg"]));
    assert_eq!(svg.matches("class=\"component\"").count(), 1);
    assert!(svg.contains("data-cusps=\"2\""));
    assert_eq!(svg, stdout(&run(&["render", "2134", "--style", "svg"])));
}

#[test]
fn census_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["census", "--max-size", "3", "--out-dir", d, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("census.csv")).unwrap();
    assert!(csv.starts_with("type,tb,rot,min_size,witness,count_at_min\n"));
    assert!(dir.path().join("summary.json").exists());
    assert!(dir.path().join("range_0_1.csv").exists());
    let summary: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["sizes"][2]["knot_mosaics"], 17);
    let resumed = run(&["census", "--max-size", "3", "--out-dir", d, "--format", "csv", "--resume"]);
    assert_eq!(stdout(&resumed), stdout(&o));
    let big = run(&["census", "--max-size", "6", "--out-dir", d]);
    assert_eq!(big.status.code(), Some(3));
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("legmosaic.conf");
    std::fs::write(&cfg, "max_cells = 9\n").unwrap();
    let c = cfg.to_str().unwrap();
    // The file alone rejects 4x4; the environment and a flag override it in turn.
    assert_eq!(run(&["--config", c, "enumerate", "--size", "4", "--count-only"]).status.code(), Some(3));
    let env_ok = bin().env("LEGMOSAIC_MAX_CELLS", "16").args(["--config", c, "enumerate", "--size", "4", "--count-only"]).output().unwrap();
    assert_eq!(stdout(&env_ok).trim(), "1504");
    let flag = bin()
        .env("LEGMOSAIC_MAX_CELLS", "16")
        .args(["--config", c, "--max-cells", "4", "enumerate", "--size", "4", "--count-only"])
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(3));
}
