use std::fs;
use std::process::{Command, Output};

fn dg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dg(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn skew_products_have_the_predicted_size() {
    let out = stdout(&["f", "skew", "--n", "4", "--signs", "random:7"]);
    assert!(out.starts_with("n,signs,member_cells,product_cells,expected_cells\n"));
    let table = rows(&out);
    assert_eq!(table.len(), 7);
    for r in table {
        assert_eq!(r[2], "12");
        assert_eq!(r[3], "94");
        assert_eq!(r[4], "94");
    }
    let all = stdout(&["f", "skew", "--n", "2", "--signs", "all"]);
    assert_eq!(all.lines().count(), 17);
    let one = stdout(&["f", "skew", "--n", "1", "--signs", "+-"]);
    assert_eq!(rows(&one)[0][3], "10");
    let with_lengths = stdout(&["f", "skew", "--n", "1", "--signs", "all", "--lengths"]);
    assert!(rows(&with_lengths).iter().all(|r| r[5] == "5"));
}

#[test]
fn wr2_lengths_lie_in_range() {
    let table = rows(&stdout(&["wreath", "wr2", "--h", "z", "--n", "3"]));
    assert_eq!(table.len(), 7);
    for r in table {
        let l: usize = r[2].parse().unwrap();
        assert!((7..=10).contains(&l));
        assert_eq!(l, 7 + r[1].parse::<usize>().unwrap());
    }
    for r in rows(&stdout(&["wreath", "wr2", "--n", "2", "--products", "5"])) {
        assert!(r[1].parse::<usize>().unwrap() > r[2].parse::<usize>().unwrap());
    }
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        stdout(&[
            "--seed",
            "11",
            "--out",
            p.to_str().unwrap(),
            "u",
            "rewrite",
            "--random",
            "20",
        ]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let other = stdout(&["--seed", "12", "u", "rewrite", "--random", "20"]);
    assert_ne!(fs::read_to_string(&a).unwrap(), other);
    for r in rows(&other) {
        assert_eq!(r[8], "true");
    }
}

#[test]
fn reduce_a_diagram_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.dg");
    // a cell followed by its mirror
    fs::write(&input, "x\n0 0 -1\n0 0 1\n").unwrap();
    let out = dg(&["reduce", "--preset", "f", "--in", input.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "x\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("2,0"));
}

#[test]
fn distances_and_embedding_agree() {
    let out = stdout(&["dist", "x0 x1 x0^-1", "x1^-1"]);
    let r = &rows(&out)[0];
    assert_eq!(r[0], r[1]);
    assert_eq!(rows(&stdout(&["embed", "x0"])).len(), 4);
    for r in rows(&stdout(&["zwrz", "embed", "t a t^-1", "b=t^2; phi=1:3"])) {
        assert_eq!(r[r.len() - 1], r[r.len() - 2]);
    }
}

#[test]
fn growth_and_lengths() {
    let out = stdout(&["growth", "--group", "z", "--radius", "3"]);
    assert_eq!(out, "radius,sphere,ball\n0,1,1\n1,2,3\n2,2,5\n3,2,7\n");
    let f = stdout(&["growth", "--group", "f", "--radius", "2"]);
    assert_eq!(rows(&f)[2], vec!["2", "12", "17"]);
    let w = stdout(&["growth", "--group", "w", "--radius", "3"]);
    assert_eq!(w, stdout(&["growth", "--group", "zwrz", "--radius", "3"]));
    let len = stdout(&["wreath", "len", "t a t^-1", "a^3"]);
    assert_eq!(len, "element,length\nt a t^-1,3\na^3,3\n");
}

#[test]
fn propb_and_ball_tables() {
    let out = dg(&["zwrz", "propb", "--radius", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 54);
    assert_eq!(rows(&stdout(&["f", "ball", "--radius", "3"])).len(), 53);
}

#[test]
fn selftest_passes() {
    let out = stdout(&["selftest", "--seed", "3"]);
    assert!(out.lines().all(|l| l.ends_with("PASS")), "{out}");
}

#[test]
fn dot_export_is_stable() {
    let a = stdout(&["--preset", "w", "export-dot", "t a"]);
    assert!(a.starts_with("digraph"));
    assert_eq!(a, stdout(&["--preset", "w", "export-dot", "t a"]));
}

#[test]
fn exit_codes_are_distinct() {
    assert_eq!(dg(&["f", "skew", "--n", "20"]).status.code(), Some(4));
    assert_eq!(dg(&["reduce", "--in", "/no/such/file"]).status.code(), Some(5));
    assert_eq!(dg(&["mul", "y7"]).status.code(), Some(3));
    assert_eq!(
        dg(&["f", "ball", "--radius", "6", "--max-ball", "100"]).status.code(),
        Some(4)
    );
    assert_eq!(dg(&["--max-ball", "0", "selftest"]).status.code(), Some(2));
    assert_eq!(dg(&["frobnicate"]).status.code(), Some(2));
}
