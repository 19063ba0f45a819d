use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use brooks::{families, io, FiniteGraph};

fn brooks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brooks")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn graph_file(dir: &Path, name: &str, g: &FiniteGraph) -> String {
    write(dir, name, &io::write_graph(g)).to_str().unwrap().to_string()
}

#[test]
fn color_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = graph_file(dir.path(), "petersen", &families::petersen());
    let out = dir.path().join("c.txt");
    let o = brooks(&["color", &g, "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c = io::parse_coloring(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c.palette(), 3);
    let o = brooks(&["verify", &g, out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn hypothesis_violations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = graph_file(dir.path(), "c5", &families::cycle(5));
    let o = brooks(&["color", &c5, "--degree", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("odd cycle"));
    let k5 = graph_file(dir.path(), "k5", &families::complete(5));
    let o = brooks(&["color", &k5, "--degree", "4"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("[0, 1, 2, 3, 4]"), "{}", stderr(&o));
    let o = brooks(&["color", &k5, "--degree", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = graph_file(dir.path(), "k3", &families::complete(3));
    let zero = write(dir.path(), "zero", "palette 3\n0 0\n1 0\n2 0\n");
    let o = brooks(&["verify", &k3, zero.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("edge (0,1)"));
    let partial = write(dir.path(), "partial", "palette 3\n0 0\n1 1\n");
    let o = brooks(&["verify", &k3, partial.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("incomplete"));
    let bad = write(dir.path(), "bad", "graph 2 1\n0 0\n");
    let o = brooks(&["verify", bad.to_str().unwrap(), zero.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn chromatic_numbers() {
    let dir = tempfile::tempdir().unwrap();
    for (name, g, chi) in [
        ("k4", families::complete(4), "4"),
        ("petersen", families::petersen(), "3"),
        ("c5", families::cycle(5), "3"),
    ] {
        let f = graph_file(dir.path(), name, &g);
        let o = brooks(&["chi", &f]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), chi);
    }
    let k4 = graph_file(dir.path(), "k4", &families::complete(4));
    let o = brooks(&["chi", &k4, "--cap", "3"]);
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_brooks"))
        .args(["chi", &k4])
        .env("BROOKS_CHI_MAX_VERTICES", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn gadgets_and_separation() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write(dir.path(), "pair", "f 2\ng 5\nn 6\n");
    let o = brooks(&["gadget", "h2", pair.to_str().unwrap(), "--extract"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("X ⊇ {2}, X ∩ {5} = ∅: OK"), "{text}");
    let g = io::parse_graph(&text).unwrap();
    assert_eq!(g.edge_count(), 5);

    let pair4 = write(dir.path(), "pair4", "f 0 3 1\ng 2 5\nn 7\n");
    let coloring = dir.path().join("col");
    let o = brooks(&["gadget", "hd", pair4.to_str().unwrap(), "--d", "4", "--extract", "--color", coloring.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains(": OK"));
    let gfile = write(dir.path(), "hd", &stdout(&o));
    assert_eq!(code(&brooks(&["verify", gfile.to_str().unwrap(), coloring.to_str().unwrap()])), 0);

    let o = brooks(&["gadget", "ladder", pair.to_str().unwrap(), "--horizon", "9", "--extract"]);
    assert_eq!(code(&o), 0);
    assert_eq!(io::parse_graph(&stdout(&o)).unwrap().n(), 3 * 81);

    let overlap = write(dir.path(), "overlap", "f 1\ng 1\nn 3\n");
    let o = brooks(&["gadget", "h2", overlap.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("share"));
}

#[test]
fn schmerl_reports() {
    for h in ["2", "6", "12"] {
        let t = Instant::now();
        let o = brooks(&["schmerl", "--levels", h]);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        assert!(text.contains("level conditions: OK"));
        assert!(text.contains("property A: FALSE, witness c(a)=c(b)=0"), "{text}");
        assert!(t.elapsed().as_secs() < 5);
    }
    assert_eq!(code(&brooks(&["schmerl", "--levels", "1"])), 1);
}

#[test]
fn traces_are_written_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    for (name, g) in [("petersen", families::petersen()), ("k4e", families::k4_minus_edge())] {
        let f = graph_file(dir.path(), name, &g);
        let trace = dir.path().join(format!("{name}.trace"));
        let o = brooks(&["color", &f, "--degree", "3", "--trace", trace.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let o = brooks(&["check-trace", &f, trace.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stdout(&o).starts_with("ok:"));
    }
    let f = graph_file(dir.path(), "c8", &families::circulant(8, &[1, 2]));
    let o = brooks(&["color", &f, "--trace", dir.path().join("x").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn generation_is_seeded() {
    let a = brooks(&["generate", "cubic", "--n", "20", "--seed", "7"]);
    let b = brooks(&["--seed", "7", "generate", "cubic", "--n", "20"]);
    let c = brooks(&["generate", "cubic", "--n", "20", "--seed", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    let g = io::parse_graph(&stdout(&a)).unwrap();
    assert!(g.is_regular(3));
    let o = brooks(&["generate", "regular", "--n", "5", "--d", "3"]);
    assert_eq!(code(&o), 1);
}
