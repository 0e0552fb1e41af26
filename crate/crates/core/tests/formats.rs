use std::fs;
use std::path::PathBuf;

use streett_core::format::{emit_parity, emit_streett, parse_parity, parse_streett};
use streett_core::{Digraph, Error, GameView, Player};

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    fs::read_to_string(p).unwrap()
}

fn corpus(ext: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .filter(|p| !p.file_name().unwrap().to_str().unwrap().starts_with("messy"))
        .collect();
    files.sort();
    assert!(!files.is_empty());
    files
        .into_iter()
        .map(|p| (p.display().to_string(), fs::read_to_string(&p).unwrap()))
        .collect()
}

#[test]
fn canonical_parity_files_round_trip() {
    for (name, text) in corpus("pg") {
        let p3 = parse_parity(&text).unwrap();
        assert_eq!(emit_parity(&p3), text, "{name}");
    }
}

#[test]
fn canonical_streett_files_round_trip() {
    for (name, text) in corpus("st") {
        let inst = parse_streett(&text).unwrap();
        assert_eq!(emit_streett(&inst), text, "{name}");
    }
}

#[test]
fn messy_files_normalise() {
    let p3 = parse_parity(&data("messy.pg")).unwrap();
    assert_eq!(emit_parity(&p3), "parity 3;\n0 3 0 2,1;\n1 2 1 1;\n2 1 1 0;\n");
    assert_eq!(p3.priorities(), &[1, 0, -1]);
    assert_eq!(p3.game.owner(1), Player::Odd);

    let inst = parse_streett(&data("messy.st")).unwrap();
    assert_eq!(
        emit_streett(&inst),
        "streett 3 2;\ne 0 1;\ne 1 2;\ne 2 0;\np 0 L=0,1 U=-;\np 1 L=- U=2;\n"
    );
}

#[test]
fn two_cycle_example() {
    let inst = parse_streett(&data("two_cycle.st")).unwrap();
    assert_eq!(inst.graph.capacity(), 2);
    assert!(inst.graph.has_edge(0, 1) && inst.graph.has_edge(1, 0));
    assert_eq!((inst.pairs.l(0), inst.pairs.u(0)), (&[0][..], &[1][..]));
    assert_eq!(inst.solve().winning.to_sorted_vec(), vec![0, 1]);
}

#[test]
fn malformed_inputs_cite_lines() {
    let cases = [
        ("parity 2;\n0 2 0 1;\n1 2 0;\n", 3),
        ("parity 2;\n0 2 0 1;\n", 0),
        ("parity 1;\n0 4 0 0;\n", 2),
        ("parity 1;\n0 2 2 0;\n", 2),
        ("parity 1;\n0 2 0 0;\n0 2 0 0;\n", 3),
        ("parity 1;\n0 2 0 5;\n", 2),
        ("parity 1\n", 1),
    ];
    for (text, line) in cases {
        match parse_parity(text) {
            Err(Error::Parse { line: l, .. }) => {
                if line > 0 {
                    assert_eq!(l, line, "{text:?}");
                }
            }
            other => panic!("{text:?} gave {other:?}"),
        }
    }
    let cases = [
        ("streett 2 1;\ne 0 2;\np 0 L=- U=-;\n", 2),
        ("streett 2 1;\np 1 L=0 U=1;\n", 2),
        ("streett 2 1;\np 0 L=0 U=1;\np 0 L=0 U=1;\n", 3),
        ("streett 2 1;\nx 0 1;\n", 2),
    ];
    for (text, line) in cases {
        match parse_streett(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}
