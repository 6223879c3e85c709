#![allow(clippy::excessive_precision)]

use std::path::Path;
use std::process::{Command, Output};

use ksub::report::read_manifest;
use ksub_core::generators::karate;
use ksub_core::SubgraphState;

fn ksub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksub"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = ksub(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    ksub(args).status.code().unwrap()
}

fn records(out: &str) -> Vec<serde_json::Value> {
    out.lines()
        .skip(1)
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn sample_emits_connected_sets() {
    let out = ok(&[
        "sample", "--graph", "karate", "--k", "3", "--method", "rss+", "--eps", "0.05", "--n",
        "100", "--seed", "7",
    ]);
    let g = karate();
    let recs = records(&out);
    assert_eq!(recs.len(), 100);
    for r in recs {
        let nodes: Vec<u32> = r["nodes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap() as u32)
            .collect();
        assert!(SubgraphState::new(&nodes).unwrap().is_valid(&g));
    }
    let m = read_manifest(&out).unwrap();
    assert_eq!(
        (m.seed, m.k, m.method.as_deref()),
        (7, Some(3), Some("rss+"))
    );
}

#[test]
fn sample_records_echo_the_step_ratio() {
    let out = ok(&[
        "sample",
        "--graph",
        "ba:100:2",
        "--k",
        "5",
        "--method",
        "rss",
        "--step-ratio",
        "0.01",
        "--n",
        "3",
    ]);
    let recs = records(&out);
    assert_eq!(recs.len(), 3);
    assert!(recs
        .iter()
        .all(|r| r["step_ratio"] == 0.01 && r["nodes"].as_array().unwrap().len() == 5));
    assert_eq!(
        read_manifest(&out).unwrap().graph.as_deref(),
        Some("ba:100:2")
    );
}

#[test]
fn same_manifest_same_bytes() {
    let args = [
        "sample",
        "--graph",
        "karate",
        "--k",
        "4",
        "--method",
        "psrw",
        "--step-ratio",
        "1e-6",
        "--n",
        "3000",
        "--seed",
        "9",
    ];
    let a = ok(&args);
    assert_eq!(ok(&args), a);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "3", "--cache-levels", "none"]);
    assert_eq!(ok(&parallel), a);
}

#[test]
fn enumerate_prints_sizes() {
    assert!(ok(&["enumerate", "--graph", "karate", "--k", "3"]).starts_with("states 438\n"));
    assert!(ok(&["enumerate", "--graph", "karate", "--k", "4"]).starts_with("states 2363\n"));
    let dir = tempfile::tempdir().unwrap();
    let p4 = dir.path().join("p4.txt");
    std::fs::write(&p4, "1 2\n2 3\n3 4\n").unwrap();
    let json = dir.path().join("p4.json");
    let out = ok(&[
        "enumerate",
        "--graph",
        &format!("file:{}", p4.display()),
        "--k",
        "3",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out, "states 2\nedges 1\ndiameter 1\n");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(
        v["data"]["states"],
        serde_json::json!([[1, 2, 3], [2, 3, 4]])
    );
    assert_eq!(v["manifest"]["subcommand"], "enumerate");
    assert_eq!(
        code(&[
            "enumerate",
            "--graph",
            "karate",
            "--k",
            "4",
            "--max-states",
            "100"
        ]),
        2
    );
}

#[test]
fn bounds_prints_four_values() {
    let out = ok(&[
        "bounds", "--k", "4", "--delta", "3", "--diam", "5", "--n", "10", "--eps", "0.05",
    ]);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# manifest: "));
    assert_eq!(
        lines.next().unwrap(),
        "method,k,delta,diameter,nodes,epsilon,ln_value,value"
    );
    let want = [
        ("mcmc", 949144.20891642631),
        ("psrw", 617499.33998738589),
        ("rss", 352.58350308763618),
        ("rss+", 419.12563242139093),
    ];
    for (line, (method, value)) in lines.zip(want) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], method);
        let got: f64 = cells[7].parse().unwrap();
        assert!((got - value).abs() / value < 1e-10, "{method}: {got}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["sample", "--graph", "karate"]), 1);
    assert_eq!(
        code(&["sample", "--graph", "karate", "--k", "3", "--eps", "1.5"]),
        1
    );
    assert_eq!(
        code(&["sample", "--graph", "karate", "--k", "3", "--method", "nope"]),
        1
    );
    assert_eq!(
        code(&["sample", "--graph", "karate", "--k", "2", "--method", "psrw"]),
        1
    );
    assert_eq!(
        code(&["sample", "--graph", "karate", "--k", "3", "--format", "csv"]),
        1
    );
    assert_eq!(
        code(&["uniformity", "--graph", "karate", "--k", "3", "--runs", "0"]),
        1
    );
    assert_eq!(
        code(&["sweep", "--graph", "karate", "--k", "3", "--ratios", "0,2"]),
        1
    );
    assert_eq!(code(&["motifs", "--graph", "karate", "--k", "5"]), 1);
    assert_eq!(code(&["sample", "--graph", "ba:3:3", "--k", "3"]), 1);
    assert_eq!(
        code(&["sample", "--graph", "file:/no/such/file", "--k", "3"]),
        2
    );
    assert_eq!(code(&["sample", "--graph", "ba:10:2", "--k", "10"]), 2);
}

fn rerun_check(file: &Path) {
    let o = ksub(&["rerun", "--check", file.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn headers_reproduce_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    let uni = path("uni.csv");
    ok(&[
        "uniformity",
        "--graph",
        "karate",
        "--k",
        "3",
        "--method",
        "rss",
        "--runs",
        "3",
        "--n",
        "2000",
        "--seed",
        "4",
        "--out",
        &uni,
    ]);
    let text = std::fs::read_to_string(&uni).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with(",wall_ns"));
    assert_eq!(text.lines().count(), 2 + 3 + 2);
    rerun_check(Path::new(&uni));

    let tampered = path("tampered.csv");
    std::fs::write(&tampered, text.replacen(",2000,", ",2001,", 1)).unwrap();
    assert_eq!(code(&["rerun", "--check", &tampered]), 2);

    let uni_json = path("uni.json");
    ok(&[
        "uniformity",
        "--graph",
        "karate",
        "--k",
        "3",
        "--runs",
        "2",
        "--n",
        "500",
        "--format",
        "json",
        "--out",
        &uni_json,
    ]);
    rerun_check(Path::new(&uni_json));

    let samples = path("s.jsonl");
    ok(&[
        "sample",
        "--graph",
        "karate",
        "--k",
        "3",
        "--method",
        "mcmc",
        "--step-ratio",
        "1e-4",
        "--n",
        "50",
        "--out",
        &samples,
    ]);
    rerun_check(Path::new(&samples));
    let copy = path("copy.jsonl");
    ok(&["rerun", &samples, "--out", &copy]);
    let (a, b) = (
        std::fs::read_to_string(&samples).unwrap(),
        std::fs::read_to_string(&copy).unwrap(),
    );
    assert_eq!(
        a.lines().skip(1).collect::<Vec<_>>(),
        b.lines().skip(1).collect::<Vec<_>>()
    );

    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/signed_synthetic.csv");
    let motifs = path("m.csv");
    ok(&[
        "motifs", "--signed", fixture, "--k", "3", "--n", "1000", "--steps", "0,5", "--out",
        &motifs,
    ]);
    let text = std::fs::read_to_string(&motifs).unwrap();
    assert_eq!(text.lines().count(), 4);
    rerun_check(Path::new(&motifs));

    let sweep = path("sweep.csv");
    ok(&[
        "sweep",
        "--graph",
        "karate",
        "--k",
        "4",
        "--ratios",
        "0,0.0001",
        "--n",
        "3000",
        "--no-wall-time",
        "--out",
        &sweep,
    ]);
    let text = std::fs::read_to_string(&sweep).unwrap();
    assert!(!text.contains("wall_ns"));
    rerun_check(Path::new(&sweep));
}
