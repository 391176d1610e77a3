use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_structmark"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const PATH3: &str = r#"{"n":3,"edges":[[0,1],[1,2]]}"#;

#[test]
fn clique_vector_of_a_path() {
    let t = ok_json(&["tvec", "--graph", PATH3]);
    assert_eq!(
        t,
        json!({ "n": 3, "entries": [
            { "set": [1], "value": -1 },
            { "set": [0, 1], "value": 1 },
            { "set": [1, 2], "value": 1 },
        ]})
    );
}

#[test]
fn counts() {
    let count =
        |kind: &str, n: &str| ok_json(&["enumerate", "--kind", kind, "--n", n, "--count-only"]);
    assert_eq!(count("decomposable", "4"), json!(61));
    assert_eq!(count("dags", "3"), json!(25));
    assert_eq!(count("dagoids", "4"), json!(185));
    let out = run(&["enumerate", "--kind", "decomposable", "--n", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 8);
}

#[test]
fn armstrong_witness() {
    let v = ok_json(&["check-sm", "--law", "armstrong", "--n", "3"]);
    assert_eq!(v["structurally_markov"], json!(false));
    let w = &v["witness"];
    let lhs = w["lhs"]["prob"].as_f64().unwrap();
    let rhs = w["rhs"]["prob"].as_f64().unwrap();
    assert!((lhs - 1.0 / 48.0).abs() < 1e-12);
    assert!((rhs - 1.0 / 144.0).abs() < 1e-12);
    let uniform = ok_json(&["check-sm", "--law", "uniform", "--n", "4"]);
    assert_eq!(uniform, json!({ "structurally_markov": true }));
}

#[test]
fn meta_markov_families() {
    let v = ok_json(&["check-meta", "--family", "forests", "--n", "4"]);
    assert_eq!(v["meta_markov"], json!(true));
    let fam = r#"[{"n":3,"edges":[]},{"n":3,"edges":[[0,1],[1,2]]}]"#;
    let v = ok_json(&["check-meta", "--family", fam]);
    assert_eq!(v["meta_markov"], json!(false));
    assert_eq!(
        v["witness"]["product"]["edges"].as_array().unwrap().len(),
        1
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["tvec"][..],
        &["enumerate", "--kind", "trees", "--n", "3"],
        &["dag-equiv", "--dag", PATH3],
        &["mcmc", "--omega", "{}", "--steps", "10"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one_with_json() {
    let square = r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#;
    for (args, kind) in [
        (&["tvec", "--graph", square][..], "NotDecomposable"),
        (
            &["check-sm", "--law", "no-such-law", "--n", "3"],
            "UnknownLaw",
        ),
        (
            &["enumerate", "--kind", "decomposable", "--n", "40"],
            "CapExceeded",
        ),
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"], json!(kind), "{err}");
        assert!(err["message"].is_string());
    }
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["enumerate", "--kind", "dagoids", "--n", "3"][..],
        &["check-sm", "--law", "armstrong", "--n", "3"],
        &[
            "--format",
            "table",
            "dagoid",
            "--dag",
            r#"{"n":3,"edges":[[0,1],[2,1]]}"#,
        ],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn posterior_map_and_sampler_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let omega = write(d, "omega.json", r#"{"n":3,"entries":[]}"#);
    let hyper = write(
        d,
        "hyper.json",
        r#"{"delta":3,"phi":[[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    let rows: String = (0..40)
        .map(|i| {
            let x = ((i * 37 % 11) as f64 - 5.0) / 3.0;
            let e = ((i * 53 % 7) as f64 - 3.0) / 4.0;
            format!(
                "{x},{},{}\n",
                0.9 * x + e,
                ((i * 29 % 13) as f64 - 6.0) / 5.0
            )
        })
        .collect();
    let data = write(d, "data.csv", &format!("a,b,c\n{rows}"));
    let post = d.join("post.json");
    let post = post.to_str().unwrap();
    let out = run(&[
        "posterior",
        "--omega",
        &omega,
        "--hyper",
        &hyper,
        "--data",
        &data,
        "--header",
        "--out",
        post,
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    let inline = ok_json(&[
        "posterior",
        "--omega",
        &omega,
        "--hyper",
        &hyper,
        "--data",
        &data,
        "--header",
    ]);
    let from_file: Value = serde_json::from_str(&std::fs::read_to_string(post).unwrap()).unwrap();
    assert_eq!(inline, from_file);

    let map = ok_json(&["map", "--omega", post]);
    assert_eq!(map["edges"], json!([[0, 1]]));
    ok_json(&["tvec", "--graph", &map.to_string()]);

    let args = [
        "mcmc",
        "--omega",
        post,
        "--steps",
        "3000",
        "--burn-in",
        "100",
        "--seed",
        "9",
        "--chains",
        "2",
    ];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn class_artifacts_feed_back_in() {
    let collider = r#"{"n":3,"edges":[[0,1],[2,1]]}"#;
    let v = ok_json(&["dagoid", "--dag", collider]);
    assert_eq!(v["members"].as_array().unwrap().len(), 1);
    let class = v["dagoid"].to_string();
    assert_eq!(
        ok_json(&["tvec", "--dagoid", &class]),
        ok_json(&["tvec", "--dag", collider])
    );
    let r = ok_json(&["remainder", "--dagoid", &class, "--set", "0,2"]);
    assert_eq!(r["induced"]["skeleton"]["vertices"], json!([0, 2]));
    ok_json(&["tvec", "--dagoid", &r["remainder"].to_string()]);

    let chain = r#"{"n":3,"edges":[[0,1],[1,2]]}"#;
    let fork = r#"{"n":3,"edges":[[1,0],[1,2]]}"#;
    let e = ok_json(&["dag-equiv", "--dag", chain, "--dag", fork]);
    assert_eq!(
        e,
        json!({ "equivalent": true, "skeleton_immoralities": true, "d_clique_vector": true })
    );
    let e = ok_json(&["dag-equiv", "--dag", chain, "--dag", collider]);
    assert_eq!(e["equivalent"], json!(false));
}

#[test]
fn table_format_is_plain_text() {
    let out = run(&["--format", "table", "tvec", "--graph", PATH3]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n=3\n  {1}\t-1\n  {0,1}\t1\n  {1,2}\t1\n"
    );
}
