use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cga::experiments::SWEEP_HEADER;
use cga::generator::sample_graph;
use cga::graph::Graph;
use cga::tree::TreeParams;

fn cga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cga")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_header_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.el"), dir.path().join("b.el"));
    for out in [&a, &b] {
        let o = cga(&["generate", "--b", "2", "--height", "4", "--c", "2", "--seed", "7", "--out", path(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().next(), Some("# cga b=2 H=4 c=2 seed=7 directed=0"));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let loaded = Graph::parse_edge_list(&text).unwrap();
    let p = TreeParams::new(2, 4, 2.0).unwrap();
    assert_eq!(loaded, sample_graph(&p, 7, false).unwrap());
}

#[test]
fn generate_rejects_bad_params() {
    let o = cga(&["generate", "--b", "2", "--height", "4", "--c", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("c=0.5"));
    assert_eq!(cga(&["generate", "--b", "2"]).status.code(), Some(2));
    let o = cga(&["generate", "--b", "2", "--height", "2", "--c", "2", "--out", "/nonexistent/dir/g.el"]);
    assert_eq!(o.status.code(), Some(3));
}

fn write_graph(dir: &Path, text: &str) -> String {
    let file = dir.join("g.el");
    fs::write(&file, text).unwrap();
    path(&file).to_string()
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "# cga b=2 H=2 c=2 seed=0 directed=0\n0 1\n");
    let base = ["verify", "--graph", &g, "--alpha", "0.5", "--beta", "0.5", "--set"];
    let run = |set: &str| {
        let mut args = base.to_vec();
        args.push(set);
        cga(&args)
    };
    let ok = run("0,1");
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("# alpha=0.5") && text.contains("cluster=yes"), "{text}");

    let no = run("0,2");
    assert_eq!(no.status.code(), Some(1));
    let text = stdout(&no);
    assert!(text.contains("dense=no") && text.contains("dense_witness=vertex 0"), "{text}");

    assert_eq!(run("0,9").status.code(), Some(2));
    assert_eq!(run("0,x").status.code(), Some(2));
    let mut bad_alpha = base.to_vec();
    bad_alpha[4] = "1.5";
    bad_alpha.push("0,1");
    assert_eq!(cga(&bad_alpha).status.code(), Some(2));
}

#[test]
fn verify_reports_events_with_hstar() {
    let dir = tempfile::tempdir().unwrap();
    // 0-1 inside, 4 joined to both, outside S(M, 2) = {0..3}
    let g = write_graph(dir.path(), "# cga b=2 H=3 c=2 seed=0 directed=0\n0 1\n0 4\n1 4\n");
    let o = cga(&["verify", "--graph", &g, "--alpha", "0.5", "--beta", "0.5", "--set", "0,1", "--hstar", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("e1=yes") && text.contains("e2=yes") && text.contains("e3=no"), "{text}");
    assert!(text.contains("e3_witness=vertex 4 with 2 edges"), "{text}");
}

#[test]
fn oracle_enumerate_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.el");
    cga(&["generate", "--b", "2", "--height", "4", "--c", "2", "--seed", "3", "--out", path(&g)]);
    let args = ["oracle", "--graph", path(&g), "--alpha", "0.5", "--beta", "0.5", "--max-size", "5"];
    let first = cga(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&cga(&args)));
    assert!(stdout(&first).contains("\ncount="));

    let refused = Command::new(env!("CARGO_BIN_EXE_cga"))
        .args(args)
        .env("CGA_WORK_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(refused.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("budget 1000"));

    let o = cga(&["enumerate", "--graph", path(&g), "--alpha", "0.5", "--beta", "0.5", "--height", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# height=1"));
    let o = cga(&["enumerate", "--graph", path(&g), "--alpha", "0.5", "--beta", "0.5", "--height", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_prints_m_star() {
    let o = cga(&["bounds", "--b", "2", "--c", "2", "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "m_star=2.0"));
    let o = cga(&["bounds", "--b", "2", "--c", "2", "--alpha", "0.5", "--height", "4", "--m", "1"]);
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("sparse_set_bound=")).unwrap();
    let v: f64 = line["sparse_set_bound=".len()..].parse().unwrap();
    assert!((v - (-2f64).exp()).abs() < 1e-12);
    assert_eq!(cga(&["bounds", "--b", "2", "--c", "2", "--alpha", "0"]).status.code(), Some(2));
}

#[test]
fn experiment_sweep_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, "b=2\nc=2\nH=6\nalpha=0.5\nbeta=0.5\ntrials=2\nheights=0,1\n").unwrap();
    let out = dir.path().join("out.csv");
    let o = cga(&["experiment", "sweep", "--config", path(&cfg), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines().skip_while(|l| l.starts_with("# "));
    assert_eq!(lines.next(), Some(SWEEP_HEADER));
    assert_eq!(lines.count(), 4);
    assert!(text.starts_with("# b=2\n"));
    assert!(text.contains("# timing=0\n"));

    fs::write(&cfg, "b=2\nc=2\nH=6\nalpha=0.5\nbeta=0.5\nbogus=1\n").unwrap();
    let o = cga(&["experiment", "sweep", "--config", path(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&cfg, "b=2\nc=2\nH=8\nalpha=0.5\nbeta=0.5\nmax_n=100\n").unwrap();
    let o = cga(&["experiment", "sweep", "--config", path(&cfg)]);
    assert_eq!(o.status.code(), Some(4));
    let o = cga(&["experiment", "events", "--config", path(&dir.path().join("missing.cfg"))]);
    assert_eq!(o.status.code(), Some(3));
}
