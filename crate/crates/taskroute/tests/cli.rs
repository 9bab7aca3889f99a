//! End-to-end checks of the command line driver: exit codes, emitted files
//! and the printed summary block.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taskroute"))
        .args(args)
        .output()
        .expect("binary failed to spawn")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("killed by signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

const SMALL: &str = r#"{
  "scenario": {"n_nodes": 10, "seed": 3},
  "ga": {"population_size": 30, "max_generations": 40},
  "pso": {"swarm_size": 10, "max_iterations": 60}
}"#;

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["solve", "--help"])), 0);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["solve", "--bogus"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(code(&run(&[])), 1);
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let a_s = a.to_str().unwrap();
    let b_s = b.to_str().unwrap();

    assert_eq!(code(&run(&["generate", "--seed", "7", "--out", a_s])), 0);
    assert_eq!(code(&run(&["generate", "--seed", "7", "--out", b_s])), 0);
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap(), "same seed must give identical files");

    let graph: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
    for key in ["nodes", "edges", "start", "destination"] {
        assert!(graph.get(key).is_some(), "graph file missing {key}");
    }

    assert_eq!(code(&run(&["generate", "--seed", "8", "--out", a_s])), 0);
    assert_ne!(std::fs::read(&a).unwrap(), bytes_a, "different seed, different graph");
}

#[test]
fn solve_prints_summary_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", SMALL);
    let graph = dir.path().join("g.json");
    let graph_s = graph.to_str().unwrap();
    assert_eq!(code(&run(&["generate", "--config", &cfg, "--out", graph_s])), 0);

    let report = dir.path().join("report.csv");
    let out = run(&[
        "solve", "--graph", graph_s, "--algo", "ga", "--config", &cfg, "--seed", "1", "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let text = stdout(&out);
    for label in [
        "Algorithm",
        "Optimum route",
        "CPU Run Time(sec)",
        "Best Cost",
        "Total Available Time(sec)",
        "Route Travel Time(sec)",
        "Total Distance",
        "Total Weight",
        "N-Tasks",
        "Violation",
        "Feasibility                Yes",
    ] {
        assert!(text.contains(label), "summary missing {label:?} in:\n{text}");
    }

    let csv = std::fs::read_to_string(&report).unwrap();
    assert!(csv.starts_with("algorithm,seed,cpu_time_s,best_cost,"), "unexpected header: {csv}");
    assert_eq!(csv.lines().count(), 2, "one record expected");

    let history = dir.path().join("report.history.csv");
    let history = std::fs::read_to_string(history).unwrap();
    assert!(history.starts_with("iteration,best_cost,mean_cost"));
    assert!(history.lines().count() > 2, "history should span generations");
}

#[test]
fn solve_same_seed_reproduces_the_route() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", SMALL);
    let graph = dir.path().join("g.json");
    let graph_s = graph.to_str().unwrap();
    assert_eq!(code(&run(&["generate", "--config", &cfg, "--out", graph_s])), 0);

    let args = ["solve", "--graph", graph_s, "--algo", "pso", "--config", &cfg, "--seed", "9"];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    let route = |s: &str| {
        s.lines()
            .find(|l| l.starts_with("Optimum route"))
            .map(str::to_owned)
            .expect("route line")
    };
    assert_eq!(route(&first), route(&second));
}

#[test]
fn solve_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", SMALL);
    let graph = dir.path().join("g.json");
    let graph_s = graph.to_str().unwrap();
    assert_eq!(code(&run(&["generate", "--config", &cfg, "--out", graph_s])), 0);

    let report = dir.path().join("report.json");
    let out = run(&[
        "solve", "--graph", graph_s, "--algo", "pso", "--config", &cfg, "--out",
        report.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed.as_array().map(Vec::len), Some(1));
    assert!(parsed[0].get("route").is_some());
}

#[test]
fn infeasible_budget_exits_three_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "tight.json",
        r#"{"scenario": {"n_nodes": 10, "seed": 3}, "cost": {"t_available": 1.0}}"#,
    );
    let graph = dir.path().join("g.json");
    let graph_s = graph.to_str().unwrap();
    assert_eq!(code(&run(&["generate", "--config", &cfg, "--out", graph_s])), 0);

    for algo in ["ga", "pso"] {
        let report = dir.path().join(format!("report_{algo}.csv"));
        let out = run(&[
            "solve", "--graph", graph_s, "--algo", algo, "--config", &cfg, "--out",
            report.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 3, "{algo} stdout: {}", stdout(&out));
        assert!(stderr(&out).contains("no feasible route"), "stderr: {}", stderr(&out));
        assert!(!report.exists(), "{algo} must not write a report on failure");
    }
}

#[test]
fn missing_graph_file_is_an_io_error() {
    let out = run(&["solve", "--graph", "/does/not/exist.json", "--algo", "ga"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_config_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.json", r#"{"bogus": 1}"#);
    let graph = dir.path().join("g.json");
    let out = run(&["generate", "--config", &cfg, "--out", graph.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(!graph.exists());
}

#[test]
fn bench_writes_records_summary_and_histories() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "campaign.json",
        r#"{
  "n_runs": 3,
  "scenario": {"n_nodes": 8, "seed": 5},
  "ga": {"population_size": 20, "max_generations": 10},
  "pso": {"swarm_size": 8, "max_iterations": 20}
}"#,
    );
    let out_dir = dir.path().join("bench");
    let out = run(&["bench", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let text = stdout(&out);
    assert!(text.contains("GA:") && text.contains("PSO:"), "missing summaries:\n{text}");

    let records = std::fs::read_to_string(out_dir.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 1 + 6, "3 runs x 2 engines plus header");

    let campaign: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("campaign.json")).unwrap())
            .unwrap();
    assert_eq!(campaign["n_runs"], 3);

    let histories = std::fs::read_dir(out_dir.join("histories")).unwrap().count();
    assert_eq!(histories, 6);
}

#[test]
fn bench_seed_override_changes_records() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "campaign.json",
        r#"{
  "n_runs": 2,
  "scenario": {"n_nodes": 6, "seed": 5},
  "ga": {"population_size": 10, "max_generations": 5},
  "pso": {"swarm_size": 5, "max_iterations": 10}
}"#,
    );
    let dir_a = dir.path().join("a");
    let dir_b = dir.path().join("b");
    assert_eq!(code(&run(&["bench", "--config", &cfg, "--out", dir_a.to_str().unwrap()])), 0);
    assert_eq!(
        code(&run(&["bench", "--config", &cfg, "--seed", "77", "--out", dir_b.to_str().unwrap()])),
        0
    );
    let records = |d: &Path| std::fs::read_to_string(d.join("records.csv")).unwrap();
    assert_ne!(records(&dir_a), records(&dir_b));
}

#[test]
fn oracle_reports_the_optimum_and_compares_engines() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", SMALL);
    let graph = dir.path().join("g.json");
    let graph_s = graph.to_str().unwrap();
    assert_eq!(code(&run(&["generate", "--config", &cfg, "--out", graph_s])), 0);

    let out = run(&["oracle", "--graph", graph_s, "--config", &cfg, "--compare", "--seed", "4"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("optimal route"));
    assert!(text.contains("optimal cost"));
    assert!(text.contains("simple paths enumerated"));
    assert!(text.contains("gap"), "comparison lines missing:\n{text}");
}

#[test]
fn oracle_guard_refuses_large_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "big.json", r#"{"scenario": {"n_nodes": 13, "seed": 9}}"#);
    let graph = dir.path().join("g.json");
    let graph_s = graph.to_str().unwrap();
    assert_eq!(code(&run(&["generate", "--config", &cfg, "--out", graph_s])), 0);

    let refused = run(&["oracle", "--graph", graph_s]);
    assert_eq!(code(&refused), 1);
    assert!(stderr(&refused).contains("13"), "stderr: {}", stderr(&refused));

    let allowed = run(&["oracle", "--graph", graph_s, "--guard", "13"]);
    assert_eq!(code(&allowed), 0, "stderr: {}", stderr(&allowed));
}
