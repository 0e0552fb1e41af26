use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn streett(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_streett"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn single_vertex_parity() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one.pg", "parity 1;\n0 2 0 0;\n");
    let out = streett(&["solve-parity3", s(&f)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("W_E: 0"));
}

#[test]
fn two_cycle_certificate_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two.st", "streett 2 1;\ne 0 1; e 1 0; p 0 L=0 U=1;\n");
    let out = streett(&["certificate", s(&f), "--from", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "stem: 0\ncycle: 0 1 0\n");

    let cert = write(&dir, "cert.txt", &stdout(&out));
    assert_eq!(streett(&["verify", s(&f), s(&cert)]).status.code(), Some(0));
    let bad = write(&dir, "bad.txt", "stem: 0\ncycle: 0 0\n");
    assert_eq!(streett(&["verify", s(&f), s(&bad)]).status.code(), Some(1));
}

#[test]
fn losing_start_has_no_certificate() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "lose.st", "streett 2 1;\ne 0 1; e 1 1; p 0 L=1 U=0;\n");
    let out = streett(&["solve-streett", s(&f)]);
    assert_eq!(stdout(&out), "W:\n");
    assert_eq!(streett(&["certificate", s(&f), "--from", "0"]).status.code(), Some(1));
}

#[test]
fn generated_parity_solutions_verify() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.pg");
    for seed in 0..5 {
        let seed = seed.to_string();
        let gen = streett(&["generate", "parity3", "--n", "40", "--m", "120", "--seed", &seed, "-o", s(&g)]);
        assert!(gen.status.success());
        for solver in ["hierarchical", "classical"] {
            let out = streett(&["solve-parity3", "--strategies", "--solver", solver, s(&g)]);
            let sol = write(&dir, "g.sol", &stdout(&out));
            assert_eq!(streett(&["verify", s(&g), s(&sol)]).status.code(), Some(0));
        }
        let out = streett(&["solve-buchi", "--strategies", s(&g)]);
        let sol = write(&dir, "b.sol", &stdout(&out));
        assert_eq!(streett(&["verify", "--buchi", s(&g), s(&sol)]).status.code(), Some(0));
    }
}

#[test]
fn swapped_winning_sets_are_rejected() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.pg", "parity 2;\n0 2 0 0;\n1 3 1 1;\n");
    let sol = write(&dir, "s.sol", "W_E: 1\nW_O: 0\n");
    assert_eq!(streett(&["verify", s(&g), s(&sol)]).status.code(), Some(1));
    let sol = write(&dir, "t.sol", "W_E: 0\nW_O: 1\n");
    assert_eq!(streett(&["verify", s(&g), s(&sol)]).status.code(), Some(0));
}

#[test]
fn streett_winning_sets_and_certificates_verify() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.st");
    let gen = streett(&[
        "generate", "streett", "--n", "30", "--m", "80", "--k", "3", "--seed", "4", "-o", s(&g),
    ]);
    assert!(gen.status.success());
    let w = stdout(&streett(&["solve-streett", s(&g)]));
    let sol = write(&dir, "w.sol", &w);
    assert_eq!(streett(&["verify", s(&g), s(&sol)]).status.code(), Some(0));
    let winners: Vec<&str> = w.trim_start_matches("W:").split_whitespace().collect();
    for x in winners.iter().take(5) {
        let cert = stdout(&streett(&["certificate", s(&g), "--from", x]));
        let c = write(&dir, "c.sol", &cert);
        assert_eq!(streett(&["verify", s(&g), s(&c)]).status.code(), Some(0), "{cert}");
    }
}

#[test]
fn figure_family_matches_shape() {
    let out = streett(&["generate", "streett", "--family", "figure-nk", "--path-len", "16", "--fan", "4"]);
    let text = stdout(&out);
    assert!(text.starts_with("streett 21 4;\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 16 + 8);
}

#[test]
fn generation_is_deterministic() {
    let a = streett(&["generate", "parity3", "--n", "4", "--m", "4", "--seed", "7"]);
    let b = streett(&["generate", "parity3", "--n", "4", "--m", "4", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_dense_total_work_grows() {
    let out = streett(&["bench", "--family", "dense", "--sizes", "100,200,400", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 6);
    for solver in ["parity3", "classical"] {
        let work: Vec<u64> = rows
            .iter()
            .filter(|r| r[col("solver")] == solver)
            .map(|r| {
                ["lift_steps", "attractor_edge_scans", "scc_edge_visits"]
                    .iter()
                    .map(|c| r[col(c)].parse::<u64>().unwrap())
                    .sum()
            })
            .collect();
        assert!(work.windows(2).all(|w| w[0] < w[1]), "{solver}: {work:?}");
    }
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(streett(&["solve-parity3", "/no/such/file"]).status.code(), Some(2));
    let f = write(&dir, "bad.pg", "parity 2;\n0 2 0 1;\n1 3 1;\n");
    let out = streett(&["solve-parity3", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let f = write(&dir, "odd.txt", "hello;\n");
    let sol = write(&dir, "s.sol", "W: 0\n");
    assert_eq!(streett(&["verify", s(&f), s(&sol)]).status.code(), Some(2));
}
