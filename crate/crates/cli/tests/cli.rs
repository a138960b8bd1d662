use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn homlab(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_homlab"));
    cmd.args(args).env_remove("HOMLAB_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cycle(n: usize) -> String {
    let mut t = format!("graph {n}\n");
    for i in 1..=n {
        t.push_str(&format!("e {i} {}\n", i % n + 1));
    }
    t
}

#[test]
fn hom_brute_and_enumerate() {
    let dir = TempDir::new().unwrap();
    let c5 = file(dir.path(), "c5.txt", &cycle(5));
    let c3 = file(dir.path(), "c3.txt", &cycle(3));
    for method in ["brute", "enumerate"] {
        let o = homlab(&["hom", s(&c5), s(&c3), "--method", method], &[]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.starts_with("YES\n"), "{out}");
        let map: Vec<usize> = out
            .lines()
            .skip(1)
            .map(|l| l.split_whitespace().nth(2).unwrap().parse().unwrap())
            .collect();
        assert_eq!(map.len(), 5);
        for i in 0..5 {
            assert_ne!(map[i], map[(i + 1) % 5]);
        }
        let o = homlab(&["hom", s(&c3), s(&c5), "--method", method], &[]);
        assert_eq!(stdout(&o), "NO\n");
    }
}

#[test]
fn valhom_with_costs() {
    let dir = TempDir::new().unwrap();
    let mut g = String::from("digraph 9\n");
    for i in 1..=9 {
        g.push_str(&format!("a {i} {}\n", i % 9 + 1));
    }
    let g = file(dir.path(), "g.txt", &g);
    let h = file(dir.path(), "h.txt", "digraph 3\na 1 2\na 2 3\na 3 1\n");
    let cost = file(dir.path(), "cost.txt", "");
    let o = homlab(&["valhom", s(&g), s(&h), "--cost", s(&cost), "--default", "0"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("value 0\n"));

    let p2 = file(dir.path(), "p2.txt", "digraph 2\na 1 2\n");
    let c3 = file(dir.path(), "c3.txt", "digraph 3\na 1 2\na 2 3\na 3 1\n");
    let o = homlab(&["valhom", s(&c3), s(&p2), "--cost", s(&cost)], &[]);
    assert!(stdout(&o).starts_with("value inf\n"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let c5 = file(dir.path(), "c5.txt", &cycle(5));
    let c3 = file(dir.path(), "c3.txt", &cycle(3));
    assert_eq!(homlab(&["hom", "missing.txt", s(&c3)], &[]).status.code(), Some(66));
    assert_eq!(homlab(&["frobnicate"], &[]).status.code(), Some(64));
    assert_eq!(homlab(&["hom", s(&c5)], &[]).status.code(), Some(64));
    let bad = file(dir.path(), "bad.txt", "graph 2\ne 1 3\n");
    assert_eq!(homlab(&["hom", s(&bad), s(&c3)], &[]).status.code(), Some(65));
    let o = homlab(&["hom", s(&c5), s(&c3)], &[("HOMLAB_BUDGET", "subproblems=0")]);
    assert_eq!(o.status.code(), Some(2));
    let o = homlab(&["hom", s(&c5), s(&c3)], &[("HOMLAB_BUDGET", "widgets=3")]);
    assert_eq!(o.status.code(), Some(64));
    assert_eq!(homlab(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn odd_cycle_language_has_no_triple() {
    let dir = TempDir::new().unwrap();
    let o = homlab(&["language", "--odd-cycle", "4"], &[]);
    let lang = file(dir.path(), "l.txt", &stdout(&o));
    let o = homlab(&["triple", "search", s(&lang)], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NONE\n"));
}

#[test]
fn triple_files_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    let g = file(dir.path(), "g.txt", &cycle(6));
    let t = dir.path().join("t.txt");
    let c = dir.path().join("c.txt");
    let o = homlab(&["triple", "cohen", s(&g), "--out", s(&t), "--coloring-out", s(&c)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let lang = file(dir.path(), "lang.txt", &stdout(&homlab(&["language", s(&g), s(&c)], &[])));
    assert_eq!(stdout(&homlab(&["triple", "verify", s(&lang), s(&t)], &[])), "VALID\n");

    let layout = file(dir.path(), "layout.txt", "c 1 1\nc 2 2\nc 3 1\norder 1 2 3\n");
    let p3 = file(dir.path(), "p3.txt", "graph 3\ne 1 2\ne 2 3\n");
    let o = homlab(&["triple", "from-track", s(&p3), s(&layout)], &[]);
    let tt = file(dir.path(), "tt.txt", &stdout(&o));
    let parsed = homlab_core::poly::io::parse_triple(&fs::read_to_string(&tt).unwrap()).unwrap();
    assert_eq!(homlab_core::poly::io::write_triple(&parsed), fs::read_to_string(&tt).unwrap());
    let l2 = file(dir.path(), "l2.txt", "language 3\nrelation R\np 1 3\np 3 1\n");
    assert!(stdout(&homlab(&["triple", "verify", s(&l2), s(&tt)], &[])).starts_with("INVALID"));

    let layering = file(dir.path(), "layers.txt", "layer 0 1\nlayer 1 2\nlayer 2 3\n");
    let o = homlab(&["triple", "combine", s(&p3), s(&layering), "--coloring-out", s(&c)], &[]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sa_reports() {
    let dir = TempDir::new().unwrap();
    let neq = "t 1 2 0\nt 2 1 0\n";
    let k3 = file(
        dir.path(),
        "k3.txt",
        &format!("vcsp 2 3\nterm 2 1 2\n{neq}term 2 2 3\n{neq}term 2 1 3\n{neq}"),
    );
    let p2 = file(dir.path(), "p2.txt", &format!("vcsp 2 2\nterm 2 1 2\n{neq}"));
    assert_eq!(stdout(&homlab(&["sa", s(&k3), "--k", "2", "--l", "3"], &[])), "infeasible\n");
    assert_eq!(stdout(&homlab(&["sa", s(&p2)], &[])), "optimum 0\n");
    let lp = dir.path().join("lp.txt");
    let o = homlab(&["sa", s(&p2), "--full", "--dump-lp", s(&lp)], &[]);
    assert_eq!(stdout(&o), "optimum 0\n");
    let text = fs::read_to_string(&lp).unwrap();
    let parsed = homlab_core::lp::RationalLp::parse(&text).unwrap();
    assert_eq!(parsed.dump(), text);
}

#[test]
fn oddcycle_records_seed_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = file(dir.path(), "g.txt", &cycle(7));
    let args = ["oddcycle", s(&g), "--k", "3", "--seed", "11", "--transcript"];
    let a = stdout(&homlab(&args, &[]));
    let b = stdout(&homlab(&args, &[]));
    assert_eq!(a, b);
    assert!(a.starts_with("seed 11\n"));
    let k4 = file(dir.path(), "k4.txt", "graph 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let o = homlab(&["oddcycle", s(&k4), "--k", "2", "--trials", "20"], &[]);
    assert!(stdout(&o).ends_with("NO\n"));
}

#[test]
fn bench_suites() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("alpha.csv");
    let o = homlab(&["bench", "--suite", "alpha-table", "--out", s(&out)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().skip(1).all(|l| l.ends_with("=true")));

    let audit = stdout(&homlab(&["bench", "--suite", "polymorphism-audit"], &[]));
    assert!(audit.lines().skip(1).all(|l| l.ends_with("verified=true")));

    let strip_millis = |csv: &str| -> Vec<String> {
        csv.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(9);
                f.join(",")
            })
            .collect()
    };
    let a = stdout(&homlab(&["bench", "--suite", "oracle-equivalence", "--seed", "3"], &[]));
    let b = stdout(&homlab(&["bench", "--suite", "oracle-equivalence", "--seed", "3"], &[]));
    assert_eq!(strip_millis(&a), strip_millis(&b));
    assert!(a.lines().skip(1).all(|l| l.ends_with("match=true;witness=true")));
}
