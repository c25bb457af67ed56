use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

/// Runs the binary from the core crate so corpus paths stay short and stable.
fn gmlocus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmlocus"))
        .args(args)
        .current_dir(core_dir())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `GMLOCUS_BLESS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("GMLOCUS_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "output differs from {name}");
}

fn schema() -> jsonschema::Validator {
    let s: Value = serde_json::from_str(gmlocus::frontend::REPORT_SCHEMA).unwrap();
    jsonschema::validator_for(&s).expect("schema compiles")
}

fn assert_valid(json: &str) -> Value {
    let v: Value = serde_json::from_str(json).expect("stdout is json");
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    v
}

#[test]
fn attractor_of_cone() {
    let o = gmlocus(&["compute", "attractor", "corpus/cone.gm", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0));
    golden("attractor_cone.txt", &stdout(&o));
    let o = gmlocus(&["compute", "attractor", "corpus/cone.gm", "--json", "--no-timings"]);
    let v = assert_valid(&stdout(&o));
    assert_eq!(v["results"][0]["detail"]["basis"], serde_json::json!(["y", "z^2"]));
    golden("attractor_cone.json", &stdout(&o));
}

#[test]
fn every_construction_validates() {
    for op in ["fixed", "attractor", "repeller", "interp", "closure", "product"] {
        let o = gmlocus(&["compute", op, "corpus/hypersurface.gm", "--json"]);
        assert_eq!(o.status.code(), Some(0), "{op}");
        let v = assert_valid(&stdout(&o));
        assert_eq!(v["results"][0]["op"], op);
    }
}

#[test]
fn interp_prints_decorated_names() {
    let o = gmlocus(&["compute", "interp", "corpus/line_w2.gm", "--no-timings"]);
    let s = stdout(&o);
    assert!(s.contains("x''"), "{s}");
    golden("interp_line_w2.txt", &s);
}

#[test]
fn verify_json_is_stable() {
    let args = ["verify", "corpus/cone.gm", "--json", "--no-timings"];
    let a = stdout(&gmlocus(&args));
    let b = stdout(&gmlocus(&args));
    assert_eq!(a, b);
    assert_valid(&a);
    golden("verify_cone.json", &a);
}

#[test]
fn verify_corpus_passes() {
    let o = gmlocus(&["verify", "--corpus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("properties passed or skipped"));
    let o = gmlocus(&["verify", "--corpus", "--json"]);
    assert_valid(&stdout(&o));
}

#[test]
fn negative_control_fails_with_witness() {
    let o = gmlocus(&["verify", "corpus/cone.gm", "--negative-control", "--props", "P2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = assert_valid(&stdout(&o));
    let r = &v["results"][0];
    assert_eq!(r["op"], "P2-fiber0-product");
    assert_eq!(r["status"], "fail");
    assert!(r["detail"]["witness"].as_str().unwrap().contains("x'"));
}

#[test]
fn props_subset() {
    let o = gmlocus(&["verify", "corpus/axes.gm", "--props", "p1,P8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = assert_valid(&stdout(&o));
    let ops: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["op"].as_str().unwrap()).collect();
    assert_eq!(ops, ["P1-fiber1-diagonal", "P8-closure-comparison"]);
    assert_eq!(gmlocus(&["verify", "corpus/axes.gm", "--props", "P99"]).status.code(), Some(2));
}

#[test]
fn count_hypersurface_fibers() {
    let o = gmlocus(&["count", "corpus/hypersurface.gm", "--prime", "5", "--fibers", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = assert_valid(&stdout(&o));
    let c = &v["results"][0]["detail"]["fiber_counts"];
    assert_eq!(c["0"], 625);
    for t in ["1", "2", "3", "4"] {
        assert_eq!(c[t], 145);
    }
    assert_eq!(gmlocus(&["count", "corpus/cone.gm", "--prime", "6"]).status.code(), Some(2));
}

#[test]
fn gb_orders() {
    let o = gmlocus(&["gb", "corpus/hypersurface.gm", "--order", "lex", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order: lex"));
    golden("gb_hypersurface_lex.txt", &stdout(&o));
}

#[test]
fn input_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("gmlocus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.gm");
    std::fs::write(&bad, "ring x:1\nideal x + 1\n").unwrap();
    let bad = bad.to_str().unwrap();
    for args in [
        vec!["compute", "fixed", bad],
        vec!["verify", bad],
        vec!["gb", bad],
        vec!["compute", "fixed", "no/such/file.gm"],
    ] {
        let o = gmlocus(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = gmlocus(&["compute", "fixed", bad]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("2:7") && err.contains("{1,0}"), "{err}");
}

#[test]
fn fmt_is_a_fixpoint() {
    for entry in std::fs::read_dir(core_dir().join("corpus")).unwrap() {
        let path = entry.unwrap().path();
        let once = stdout(&gmlocus(&["fmt", path.to_str().unwrap()]));
        let tmp = std::env::temp_dir().join(format!("gmlocus-fmt-{}.gm", std::process::id()));
        std::fs::write(&tmp, &once).unwrap();
        let twice = stdout(&gmlocus(&["fmt", tmp.to_str().unwrap()]));
        assert_eq!(once, twice, "{}", path.display());
    }
}
