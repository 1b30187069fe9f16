use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const C4: &str = "e a x\ne x y\ne y z\ne z a\n";
const DIST_A: &str = "a 0\nx 1\ny 2\nz 1\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_convexgraph"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    }
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(name);
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn assert_valid(validator: &jsonschema::Validator, value: &Value) {
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{value:#}");
}

#[test]
fn gen_cycle_and_path() {
    let out = run(&["gen", "cycle", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "v 0\nv 1\nv 2\nv 3\ne 0 1\ne 0 3\ne 1 2\ne 2 3\n");
    let out = run(&["gen", "path", "2"]);
    assert_eq!(stdout(&out), "v 0\nv 1\ne 0 1\n");
}

#[test]
fn gen_l1_lattice_counts() {
    let out = run(&["gen", "lattice", "--dim", "2", "--norm", "l1", "--radius", "1", "--window", "-2:2,-2:2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 25);
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 40);
    assert!(text.contains("v (-2,-2)\n"));
}

#[test]
fn gen_rejects_bad_sizes() {
    assert_eq!(run(&["gen", "path", "0"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "cycle", "2"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "lattice", "--norm", "l3", "--window", "3"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "lattice", "--norm", "l1", "--window", "0:1", "--dim", "2"]).status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_check() {
    let files = Files::new();
    for family in [
        vec!["grid", "3", "4"],
        vec!["king", "3", "3"],
        vec!["tri-tiling", "4", "4"],
        vec!["lattice", "--norm", "l2", "--radius", "1.5", "--window", "-1:1,-1:1"],
    ] {
        let mut args = vec!["gen"];
        args.extend(&family);
        let text = stdout(&run(&args));
        let path = files.put("g.txt", &text);
        let first = text.lines().find(|l| l.starts_with("v ")).unwrap();
        let set = files.put("s.txt", first.trim_start_matches("v "));
        let out = run(&["--format", "json", "hull", "--graph", &path, "--set", &set]);
        assert!(out.status.success(), "{family:?}: {}", stderr(&out));
        assert_eq!(json(&out)["hull"].as_array().unwrap().len(), 1);
        let regenerated = stdout(&run(&args));
        assert_eq!(regenerated, text);
    }
}

#[test]
fn tri_tiling_flags_interior() {
    let text = stdout(&run(&["gen", "tri-tiling", "4", "4"]));
    let interior: Vec<&str> = text.lines().filter(|l| l.starts_with("# interior ")).collect();
    assert_eq!(interior.len(), 4);
}

#[test]
fn c4_distance_function_checks() {
    let files = Files::new();
    let g = files.put("c4.txt", C4);
    let f = files.put("f.txt", DIST_A);

    let out = run(&["check", "fn-convex", "--graph", &g, "--fn", &f]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL y:"), "{text}");
    assert_eq!(text.matches("FAIL").count(), 1);

    let out = run(&["--format", "json", "check", "subharmonic", "--graph", &g, "--fn", &f]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let y = &report["results"][2];
    assert_eq!(y["subject"], "y");
    assert_eq!(y["pass"], false);
    assert_eq!(y["detail"], "f = 2, neighborhood mean = 1 (M = 2)");

    let set = files.put("s.txt", "x\ny\nz\n");
    let out = run(&["check", "set-convex", "--graph", &g, "--set", &set]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("a lies between x and z"));
}

#[test]
fn constant_function_is_subharmonic() {
    let files = Files::new();
    let g = files.put("c4.txt", C4);
    let f = files.put("f.txt", "a 3\nx 3\ny 3\nz 3\n");
    assert_eq!(run(&["check", "subharmonic", "--graph", &g, "--fn", &f]).status.code(), Some(0));
    assert_eq!(run(&["check", "harmonic", "--graph", &g, "--fn", &f]).status.code(), Some(0));
}

#[test]
fn unknown_vertex_reports_line() {
    let files = Files::new();
    let g = files.put("c4.txt", C4);
    let f = files.put("f.txt", "a 0\n# comment\nq 1\n");
    let out = run(&["check", "subharmonic", "--graph", &g, "--fn", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn nn_property_witness_on_z() {
    let files = Files::new();
    let set = files.put("F.txt", "(-1)\n(1)\n");
    let out = run(&["--format", "json", "check", "nn-property", "--lattice", "l1", "--window", "-3:3", "--set", &set]);
    assert_eq!(out.status.code(), Some(1));
    let detail = json(&out)["results"][0]["detail"].as_str().unwrap().to_owned();
    assert!(detail.starts_with("y1 = (-1), y2 = (1), z = (0)"), "{detail}");
}

#[test]
fn midpoint_check_on_lattice() {
    let files = Files::new();
    let f = files.put("f.txt", "(-2) 0\n(-1) 1\n(0) 3\n(1) 1\n(2) 0\n");
    let out = run(&["check", "midpoint", "--lattice", "l1", "--window", "-2:2", "--fn", &f]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL (0): z = (1): 2f(x) = 6 > 2"), "{text}");
    assert!(text.contains("pass (-2) [boundary]"), "{text}");
}

#[test]
fn hull_with_oracle() {
    let files = Files::new();
    let g = files.put("c4.txt", C4);
    let set = files.put("s.txt", "a\ny\n");
    let out = run(&["--format", "json", "hull", "--graph", &g, "--set", &set, "--oracle"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["hull"], serde_json::json!(["a", "x", "y", "z"]));
    assert_eq!(report["oracle_agrees"], true);
    assert_eq!(report["input_convex"], false);
    assert_valid(&schema("hull-report.schema.json"), &report);
}

#[test]
fn verify_examples() {
    let files = Files::new();
    let g = files.put("c4.txt", C4);
    let f = files.put("f.txt", DIST_A);
    let cases: &[(&[&str], i32, &str)] = &[
        (&["verify", "thm4-cvx-sub", "--lattice", "l1", "--window", "9"], 0, "verified"),
        (&["verify", "lem-dist-pt", "--lattice", "linf", "--window", "7"], 0, "verified"),
        (&["verify", "thm1", "--graph", &g, "--fn", &f], 0, "verified"),
        (&["verify", "thm2", "--max-n", "5"], 0, "verified"),
        (&["verify", "thm3", "--lattice", "l1", "--window", "-4:4"], 0, "verified"),
        (&["verify", "prop-nn", "--lattice", "linf", "--window", "-4:4"], 0, "verified"),
        (&["verify", "prop-dist-cvx", "--lattice", "l2", "--radius", "1.5", "--window", "-4:4"], 0, "verified"),
        (&["verify", "lem-deg2", "--max-n", "5"], 0, "verified"),
        (&["verify", "lem-deg2", "--max-n", "6"], 1, "refuted"),
    ];
    let validator = schema("claim-report.schema.json");
    for (args, code, verdict) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}{}", stdout(&out), stderr(&out));
        let text = stdout(&out);
        assert!(text.contains(&format!(": {verdict} on ")), "{args:?}: {text}");

        let mut json_args = vec!["--format", "json"];
        json_args.extend(args.iter());
        let out = run(&json_args);
        assert_eq!(out.status.code(), Some(*code));
        let report = json(&out);
        assert_valid(&validator, &report);
        assert_eq!(report["verdict"], *verdict, "{args:?}");
        assert!(text.starts_with(&format!("{}: {}", report["claim"].as_str().unwrap(), verdict)));
    }
}

#[test]
fn verify_vacuous_exits_one() {
    let files = Files::new();
    let g = files.put("k3.txt", "e a b\ne b c\ne c a\n");
    let f = files.put("f.txt", "a 0\nb 0\nc 0\n");
    let out = run(&["--format", "json", "verify", "thm1", "--graph", &g, "--fn", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "vacuous");
}

#[test]
fn verify_unknown_claim() {
    let out = run(&["verify", "thm9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn verify_needs_lattice_for_lattice_claims() {
    assert_eq!(run(&["verify", "lem-dist-pt"]).status.code(), Some(2));
    let files = Files::new();
    let g = files.put("c4.txt", C4);
    assert_eq!(run(&["verify", "prop-nn", "--graph", &g]).status.code(), Some(2));
}

#[test]
fn check_reports_match_schema_and_text() {
    let files = Files::new();
    let g = files.put("c4.txt", C4);
    let f = files.put("f.txt", DIST_A);
    let set = files.put("s.txt", "a\nx\n");
    let validator = schema("check-report.schema.json");
    for kind in ["fn-convex", "subharmonic", "harmonic", "set-convex"] {
        let args = ["check", kind, "--graph", &g, "--fn", &f, "--set", &set];
        let text_out = run(&args);
        let mut json_args = vec!["--format", "json"];
        json_args.extend(args);
        let json_out = run(&json_args);
        assert_eq!(text_out.status.code(), json_out.status.code(), "{kind}");
        let report = json(&json_out);
        assert_valid(&validator, &report);
        let text = stdout(&text_out);
        let failed = text.lines().filter(|l| l.starts_with("FAIL ")).count();
        assert_eq!(failed as u64, report["failed"].as_u64().unwrap(), "{kind}");
        assert_eq!(text.lines().count() - 1, report["results"].as_array().unwrap().len());
    }
}

#[test]
fn fractional_inputs_use_floats() {
    let files = Files::new();
    let g = files.put("g.txt", "e a b 0.5\ne b c 1.5\n");
    let f = files.put("f.txt", "a 0\nb 0.25\nc 1\n");
    let out = run(&["--format", "json", "check", "subharmonic", "--graph", &g, "--fn", &f]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["results"][1]["detail"], "f = 0.25, neighborhood mean = 0.75 (M = 2)");
    assert_eq!(report["results"][2]["pass"], false);
    let out = run(&["--format", "json", "check", "subharmonic", "--unweighted", "--graph", &g, "--fn", &f]);
    assert_eq!(json(&out)["results"][1]["detail"], "f = 0.25, neighborhood mean = 0.5 (M = 2)");
}

#[test]
fn search_finds_path_counterexample() {
    let out = run(&["--format", "json", "search", "--family", "path:3", "--sampler", "distance"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_valid(&schema("search-report.schema.json"), &report);
    assert_eq!(report["counterexample"]["vertex"], "2");
    assert_eq!(report["counterexample"]["function"], "0 0\n1 1\n2 2\n");

    let out = run(&["search", "--family", "cycle:4", "--sampler", "distance"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["search", "--family", "all:5", "--sampler", "exhaustive:0,1,2", "--hypothesis", "triangle-free", "--budget", "100000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["search", "--family", "moebius:3", "--sampler", "distance"]).status.code(), Some(2));
}
