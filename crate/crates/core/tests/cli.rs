use std::path::Path;
use std::process::{Command, Output};

use anosov_cert::cayley::{build_ball, geodesic_pairs};
use anosov_cert::certifier::{builtin_example, Certificate, JobConfig};
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anosov-cert"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, config: &JobConfig) -> String {
    let path = dir.join(name);
    std::fs::write(&path, config.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

fn geometry(args: &[&str]) -> Value {
    let mut all = vec!["geometry"];
    all.extend_from_slice(args);
    let o = cli(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(stdout(&o).trim()).unwrap()
}

#[test]
fn example_then_certify_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("example.json");
    let config = config.to_str().unwrap();
    assert_eq!(cli(&["example", "--out", config]).status.code(), Some(0));
    let parsed = JobConfig::load(Path::new(config)).unwrap();
    assert_eq!(parsed, builtin_example());

    let cert_path = dir.path().join("cert.json");
    let o = cli(&[
        "certify",
        "--config",
        config,
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).starts_with("verdict: certified"));
    let cert = Certificate::from_json(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    let s = cert.survey.unwrap();
    assert!((s.spacing - 3.08).abs() < 0.02, "{}", s.spacing);
    assert!(cert.undistortion.is_some());
}

#[test]
fn example_prints_config_without_out() {
    let o = cli(&["example"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        JobConfig::from_json(&stdout(&o)).unwrap(),
        builtin_example()
    );
}

#[test]
fn missing_config_exits_with_one() {
    let o = cli(&["certify", "--config", "/nonexistent/missing.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert!(o.stdout.is_empty());
}

#[test]
fn uncertified_run_exits_with_two_and_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "k1.json",
        &JobConfig {
            half_length: 1,
            ..builtin_example()
        },
    );
    let o = cli(&["certify", "--config", &config, "--t", "0.4", "--grid", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["verdict"], "not-certified-at-this-k");
    assert_eq!(cert["config"]["t"], 0.4);
    assert_eq!(cert["config"]["aux_grid"], 8);
}

#[test]
fn word_list_route_equals_ball_route() {
    let k = 2;
    let config = JobConfig {
        half_length: k,
        ..builtin_example()
    };
    let table = build_ball(
        &config.generator_set::<f64>().unwrap(),
        2 * k,
        config.dedup_grid,
    )
    .unwrap();
    let words: String = geodesic_pairs(&table, k)
        .unwrap()
        .iter()
        .map(|&(a, b)| format!("{}{}\n", table.word(a as usize), table.word(b as usize)))
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let words_path = dir.path().join("words.txt");
    std::fs::write(&words_path, words).unwrap();
    let config = write_config(dir.path(), "k2.json", &config);

    let ball = cli(&["certify", "--config", &config]);
    let list = cli(&[
        "certify",
        "--config",
        &config,
        "--words",
        words_path.to_str().unwrap(),
    ]);
    assert_eq!((ball.status.code(), list.status.code()), (Some(2), Some(2)));
    let ball: Value = serde_json::from_str(&stdout(&ball)).unwrap();
    let list: Value = serde_json::from_str(&stdout(&list)).unwrap();
    assert_eq!(list["survey"]["route"], "word_list");
    assert_eq!(ball["survey"]["pair_count"], list["survey"]["pair_count"]);
    for key in ["spacing", "eps", "eps_plus_max", "eps_minus_max"] {
        let (a, b) = (
            ball["survey"][key].as_f64().unwrap(),
            list["survey"][key].as_f64().unwrap(),
        );
        assert!((a - b).abs() < 1e-9, "{key}: {a} vs {b}");
    }
}

#[test]
fn enumerate_prints_sphere_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let example = write_config(dir.path(), "e.json", &builtin_example());
    let o = cli(&["enumerate", "--config", &example, "--radius", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\t1\n1\t8\n2\t56\n3\t392\n");
    let o = cli(&["enumerate", "--config", &example, "--radius", "0"]);
    assert_eq!(stdout(&o), "0\t1\n");
    assert_eq!(
        cli(&["enumerate", "--config", &example, "--radius", "9"])
            .status
            .code(),
        Some(1)
    );

    let free = JobConfig::from_json(
        r#"{"field":"real","dim":2,"half_length":2,"generators":[
            {"name":"a","matrix":[[1.0,2.0],[0.0,1.0]]},
            {"name":"b","matrix":[[1.0,0.0],[2.0,1.0]]}]}"#,
    )
    .unwrap();
    let free = write_config(dir.path(), "free.json", &free);
    let o = cli(&["enumerate", "--config", &free, "--radius", "3"]);
    assert_eq!(stdout(&o), "0\t1\n1\t4\n2\t12\n3\t36\n");
    let o = cli(&["enumerate", "--config", &free, "--radius", "4"]);
    assert!(
        stdout(&o).ends_with("4\t108\npairs(k=2)\t108\n"),
        "{}",
        stdout(&o)
    );

    let coarse = write_config(
        dir.path(),
        "coarse.json",
        &JobConfig {
            dedup_grid: 0.05,
            ..builtin_example()
        },
    );
    let o = cli(&["enumerate", "--config", &coarse, "--radius", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("collision"));
}

#[test]
fn geometry_operations() {
    let e3 = 3f64.exp();
    let y = format!("[[{e3},0,0],[0,1,0],[0,0,{}]]", 1.0 / e3);
    let id = "[[1,0,0],[0,1,0],[0,0,1]]";
    let d = geometry(&["--op", "d-alpha", "--p", id, "--q", &y]);
    assert!((d.as_f64().unwrap() - 1.5).abs() < 1e-12);
    let eps = geometry(&["--op", "eps-max", "--dim", "3"]);
    assert!((eps.as_f64().unwrap() - 2.0943951023931957).abs() < 1e-15);
    let v = geometry(&["--op", "vec-distance", "--p", id, "--q", &y]);
    assert!((v[0].as_f64().unwrap() - 1.5).abs() < 1e-12);

    // Point diag(e^{2r}, e^{-r}, e^{-r}) seen against the flag ([e₁ + e₂], ker e¹).
    let r: f64 = 0.4;
    let p = format!(
        "[[{},0,0],[0,{},0],[0,0,{}]]",
        (2.0 * r).exp(),
        (-r).exp(),
        (-r).exp()
    );
    let args = [
        "--p",
        p.as_str(),
        "--hyperplane",
        "[1,0,0]",
        "--line",
        "[1,1,0]",
    ];
    let cos = geometry(&[&["--op", "cos-angle"], &args[..]].concat())
        .as_f64()
        .unwrap();
    let dist = geometry(&[&["--op", "dist-to-parallel-set"], &args[..]].concat())
        .as_f64()
        .unwrap();
    let sech_sq = (1.0 - 2.0 * cos) / 3.0;
    assert!((dist - (1.0 / sech_sq.sqrt()).acosh()).abs() < 1e-9);
    assert!(dist > 0.0);
    assert_eq!(
        geometry(&[&["--op", "is-transverse"], &args[..]].concat()),
        Value::Bool(true)
    );
    let tangent = ["--p", id, "--hyperplane", "[0,0,1]", "--line", "[1,0,0]"];
    assert_eq!(
        geometry(&[&["--op", "is-transverse"], &tangent[..]].concat()),
        Value::Bool(false)
    );
    let o = cli(&[&["geometry", "--op", "dist-to-parallel-set"], &tangent[..]].concat());
    assert_eq!(o.status.code(), Some(1));

    let complex = "[[2,[0,1]],[[0,-1],1]]";
    let d = geometry(&[
        "--op",
        "riem-distance",
        "--p",
        "[[1,0],[0,1]]",
        "--q",
        complex,
    ]);
    assert!(d.as_f64().unwrap() > 0.0);
    assert!(cli(&["geometry", "--op", "nope"]).status.code() != Some(0));
    assert_eq!(
        cli(&["geometry", "--op", "d-alpha", "--p", "[[1,0]]", "--q", id])
            .status
            .code(),
        Some(1)
    );
}
