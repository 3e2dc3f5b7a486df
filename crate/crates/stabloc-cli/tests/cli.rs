use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn stabloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabloc"))
        .args(args)
        .env("STABLOC_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stabloc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

/// Drops the trailing timing, which is the only nondeterministic part.
fn untimed(s: &str) -> Vec<String> {
    s.lines().map(|l| l.split(" (").next().unwrap().to_string()).collect()
}

#[test]
fn check_passes_on_a_small_run() {
    let o = stabloc(&["check", "--seed", "3", "--graphs", "10", "--max-n", "5", "--noisy-cases", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("pure PASS"));
    assert!(stdout(&o).contains("noisy PASS"));
}

#[test]
fn check_fails_on_injected_self_loop() {
    let o = stabloc(&["check", "--graphs", "2", "--max-n", "4", "--noisy-cases", "1", "--inject-self-loop"]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("invariant FAIL"));
}

#[test]
fn check_is_reproducible_per_seed() {
    let args = ["check", "--seed", "11", "--graphs", "8", "--max-n", "5", "--noisy-cases", "4"];
    let a = stabloc(&args);
    let b = stabloc(&args);
    assert_eq!(untimed(&stdout(&a)), untimed(&stdout(&b)));
}

#[test]
fn reduce_prints_regions_and_outcomes() {
    let ring = scratch("ring5.txt", "5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let o = stabloc(&["reduce", "--graph", ring.to_str().unwrap(), "--pms", "pms: 3:Z 4:Z"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("S [0, 1, 2]"), "{out}");
    assert!(out.contains("outcomes gamma"), "{out}");
}

#[test]
fn complete_graph_y_measurements_stay_within_the_bound() {
    let n = 24;
    let mut body = format!("{n}\n");
    for i in 0..n {
        for j in i + 1..n {
            body += &format!("{i} {j}\n");
        }
    }
    let k24 = scratch("k24.txt", &body);
    let pms = format!("pms: {}", (4..24).map(|j| format!("{j}:Y")).collect::<Vec<_>>().join(" "));
    let o = stabloc(&["reduce", "--graph", k24.to_str().unwrap(), "--pms", &pms]);
    assert!(o.status.success());
    let ops: u64 = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("op_count "))
        .expect("op_count line")
        .trim()
        .parse()
        .unwrap();
    assert!(ops <= 20 * (24 * 24 - 24 + 6), "op_count {ops}");
}

#[test]
fn sweep_and_qc_write_csv() {
    let o = stabloc(&["sweep", "--lattice", "linear:8", "--subsystem", "line:bulk", "--noise", "PD:eps=0", "--q-grid", "0:0.2:0.1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "q,E");
    assert_eq!(lines.len(), 4);

    let o = stabloc(&["qc", "--lattice", "linear:8", "--subsystem", "line:boundary", "--noise", "BF", "--eps-grid", "0:0.2:0.1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("eps,q_c"));
    let first: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((first - 0.271469604).abs() < 1e-6, "{first}");
}

#[test]
fn census_writes_csv() {
    let o = stabloc(&["census", "--lattice", "ladder:4", "--sizes", "2:3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("n,log10M"));
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn bad_input_exits_with_code_two() {
    let o = stabloc(&["reduce", "--graph", "/nonexistent/graph.txt", "--pms", "pms: 0:X"]);
    assert_eq!(o.status.code(), Some(2));
    let o = stabloc(&["sweep", "--lattice", "linear:8", "--subsystem", "line:bulk", "--noise", "XX"]);
    assert_eq!(o.status.code(), Some(2));
}
