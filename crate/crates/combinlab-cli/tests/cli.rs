use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_combinlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn combinlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// A scratch file unique to this test process.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("combinlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn twosat_exit_codes() {
    let sat = scratch("sat.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    let o = run(&["twosat", s(&sat)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("SAT"));

    let unsat = scratch("unsat.cnf", "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
    let o = run(&["twosat", s(&unsat)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("UNSAT"));

    let wide = scratch("wide.cnf", "p cnf 3 1\n1 2 3 0\n");
    assert_eq!(run(&["twosat", s(&wide)]).status.code(), Some(2));
}

#[test]
fn euler_on_k5_is_a_closed_walk_over_every_edge() {
    let k5 = scratch("k5.txt", &stdout(&run(&["gen", "graph", "--n", "5", "--p", "1"])));
    let o = run(&["--format", "json", "solve", "euler", s(&k5)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let walk: Vec<usize> = serde_json::from_value(v["walk"].clone()).unwrap();
    assert_eq!(walk.len(), 11);
    assert_eq!(walk.first(), walk.last());
    let mut used: Vec<(usize, usize)> = walk.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    used.sort_unstable();
    used.dedup();
    assert_eq!(used.len(), 10);

    // a path has odd vertices
    let path = scratch("p3.txt", "p 3 2\ne 1 2\ne 2 3\n");
    assert_eq!(run(&["solve", "euler", s(&path)]).status.code(), Some(1));
}

#[test]
fn bench_sorting_stays_within_f() {
    let o = run(&["--format", "json", "bench", "sorting", "--n", "1..64"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 64);
    for r in rows {
        assert!(r[3].as_u64().unwrap() <= r[2].as_u64().unwrap(), "{r}");
    }
}

#[test]
fn bench_json_is_reproducible() {
    for suite in ["sorting", "tournament", "approx"] {
        let args = ["--format", "json", "bench", suite, "--n", "1..20", "--seed", "11", "--trials", "10"];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{suite}");
        assert_eq!(a.stdout, b.stdout, "{suite}");
    }
}

#[test]
fn verify_accepts_solver_and_reduction_output() {
    let g = scratch("g.txt", "p 5 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\ne 1 3\n");
    let w = stdout(&run(&["solve", "vertex-cover", s(&g), "--k", "3"]));
    let w = scratch("vc.json", &w);
    assert_eq!(run(&["verify", "vertex_cover", s(&g), s(&w), "--k", "3"]).status.code(), Some(0));
    // a cycle of five needs three vertices
    assert_eq!(run(&["solve", "vertex-cover", s(&g), "--k", "2"]).status.code(), Some(1));

    let target = std::env::temp_dir().join(format!("combinlab-cli-{}/target.json", std::process::id()));
    let o = run(&["reduce", "is-to-vc", s(&g), "--k", "2", "--target-out", s(&target)]);
    assert_eq!(o.status.code(), Some(0));
    let tw = scratch("tw.json", &stdout(&run(&["solve", "vertex_cover", s(&target)])));
    assert_eq!(run(&["verify", "vertex_cover", s(&target), s(&tw)]).status.code(), Some(0));
    let back = scratch("back.json", &stdout(&run(&["reduce", "is-to-vc", s(&g), "--k", "2", "--backward", s(&tw)])));
    assert_eq!(run(&["verify", "independent_set", s(&g), s(&back), "--k", "2"]).status.code(), Some(0));

    let bad = scratch("bad.json", "{\"vertices\":[0]}\n");
    assert_eq!(run(&["verify", "vertex_cover", s(&g), s(&bad), "--k", "3"]).status.code(), Some(1));
    let junk = scratch("junk.json", "{\"nonsense\":1}\n");
    assert_eq!(run(&["verify", "vertex_cover", s(&g), s(&junk), "--k", "3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "euler", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "sat-to-nothing", "/dev/null"]).status.code(), Some(2));
}

#[test]
fn oracle_limit_exits_3() {
    let g = scratch("big.txt", &stdout(&run(&["gen", "graph", "--n", "30", "--p", "0.2"])));
    let o = bin().args(["solve", "clique", s(&g), "--k", "4"]).env("COMBINLAB_ORACLE_LIMIT", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sort_and_select_report_counts() {
    let perm = scratch("perm.txt", &stdout(&run(&["gen", "permutation", "--n", "21", "--seed", "4"])));
    let o = run(&["--format", "json", "sort", "merge-insertion", s(&perm)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sorted: Vec<i64> = serde_json::from_value(v["sorted"].clone()).unwrap();
    assert_eq!(sorted, (1..=21).collect::<Vec<_>>());
    assert!(v["comparisons"].as_u64().unwrap() <= v["budgets"]["f_n"].as_u64().unwrap());

    let o = run(&["--format", "json", "select", "linear", s(&perm), "--t", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"][0], 17);
}

#[test]
fn dp_inputs() {
    let chain = scratch("chain.txt", "[10, 20, 30, 40, 30]\n");
    let o = run(&["solve", "matrix-chain", s(&chain)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("30000 "), "{}", stdout(&o));

    let lcs = scratch("lcs.json", "{\"x\": \"ABCBDAB\", \"y\": \"BDCABA\"}\n");
    assert!(stdout(&run(&["solve", "lcs", s(&lcs)])).starts_with("4 "));
}
