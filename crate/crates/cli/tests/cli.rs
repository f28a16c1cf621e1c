use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const K3: &str = "REL v1\nk1 3\nk2 3\nn 3\nbipartite 0\n\
e 0 1 1/1 6 1 2 1 3 2 1 2 3 3 1 3 2\n\
e 0 2 1/1 6 1 2 1 3 2 1 2 3 3 1 3 2\n\
e 1 2 1/1 6 1 2 1 3 2 1 2 3 3 1 3 2\n";

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Out {
    fn has(&self, line: &str) -> bool {
        self.stdout.lines().any(|l| l == line)
    }
}

fn gugp(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_gugp"))
        .args(args)
        .output()
        .unwrap();
    Out {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn repeat_then_pwt1_then_verify_passes() {
    let dir = TempDir::new().unwrap();
    let base = put(&dir, "k3.rel", K3);
    let rep = dir.path().join("k3l2.rel");
    let gadget = dir.path().join("g.gugp");
    assert_eq!(
        gugp(&[
            "reduce",
            "repeat3cut",
            "--l",
            "2",
            "--in",
            s(&base),
            "--out",
            s(&rep)
        ])
        .code,
        0
    );
    let r = gugp(&["reduce", "pwt1", "--in", s(&rep), "--out", s(&gadget)]);
    assert_eq!(r.code, 0);
    assert!(r.has("BUNDLES=18"));
    let v = gugp(&[
        "verify",
        "gadget-pwt1",
        "--in",
        s(&gadget),
        "--source",
        s(&rep),
    ]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    assert!(v.has("VERDICT=PASS"));
    assert!(v.has("RATIO=3/4"));
    assert!(v.has("SIGMA=45/4"));
}

#[test]
fn pwt1_value_transfer_runs_when_small() {
    let dir = TempDir::new().unwrap();
    let base = put(&dir, "k3.rel", K3);
    let gadget = dir.path().join("g.gugp");
    gugp(&["reduce", "pwt1", "--in", s(&base), "--out", s(&gadget)]);
    let v = gugp(&[
        "verify",
        "gadget-pwt1",
        "--in",
        s(&gadget),
        "--source",
        s(&base),
    ]);
    assert_eq!(v.code, 0);
    assert!(v.has("CHECK=value-transfer"));
    assert!(v.has("SOURCE_VALUE=1/1"));
    assert!(v.has("GADGET_VALUE=0/1"));
}

#[test]
fn metrics_of_half_gadget() {
    let dir = TempDir::new().unwrap();
    let t22 = put(
        &dir,
        "t.t22",
        "T22 v1\nk 2\nn 2\ne 0 1 1/1 pu 1 2 3 4 pv 1 2 3 4\n",
    );
    let gadget = dir.path().join("h.gugp");
    assert_eq!(
        gugp(&["reduce", "pwt-half", "--in", s(&t22), "--out", s(&gadget)]).code,
        0
    );
    let m = gugp(&["metrics", "--in", s(&gadget)]);
    assert_eq!(m.code, 0);
    for line in ["WPLUS=4/3", "WMINUS=-2/3", "SIGMA=2/3", "RATIO=1/2"] {
        assert!(m.has(line), "missing {line} in {}", m.stdout);
    }
    let v = gugp(&[
        "verify",
        "gadget-pwt-half",
        "--in",
        s(&gadget),
        "--source",
        s(&t22),
    ]);
    assert_eq!(v.code, 0);
    assert!(v.has("VERDICT=PASS"));
}

#[test]
fn capacity_exit_code() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("big.gugp");
    let gen = gugp(&[
        "gen",
        "random-gugp",
        "--n",
        "10",
        "--k",
        "3",
        "--edges",
        "12",
        "--seed",
        "4",
        "--max-ratio",
        "1/2",
        "--out",
        s(&g),
    ]);
    assert_eq!(gen.code, 0);
    let r = gugp(&[
        "solve",
        "brute",
        "--objective",
        "min-pwt",
        "--cap",
        "100",
        "--in",
        s(&g),
    ]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("cap is 100"));
}

#[test]
fn failing_gadget_exits_2_with_witness() {
    let dir = TempDir::new().unwrap();
    // two identical identity edges on k = 3: a fake one-edge bundle gadget
    let g = put(
        &dir,
        "bad.gugp",
        "GUGP v1\nk 3\nn 2\ne 0 1 1/1 1 2 3\ne 0 1 1/1 1 2 3\ne 0 1 1/1 1 2 3\n",
    );
    let v = gugp(&["verify", "gadget-pwt1", "--in", s(&g)]);
    assert_eq!(v.code, 2);
    assert!(v.has("VERDICT=FAIL"));
    assert!(v.has("WITNESS=0 labels=1,1 expected=1/1 actual=3/1"));
}

#[test]
fn usage_and_io_errors_exit_1() {
    assert_eq!(gugp(&["solve"]).code, 1);
    assert_eq!(gugp(&["metrics", "--in", "/nonexistent/file"]).code, 1);
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "z.gugp", "GUGP v1\nk 2\nn 2\ne 0 1 0/1 1 2\n");
    let r = gugp(&["metrics", "--in", s(&bad)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("zero-weight edge"));
}

#[test]
fn gen_is_byte_identical() {
    let a = gugp(&[
        "gen",
        "random-t22",
        "--n",
        "4",
        "--k",
        "2",
        "--edges",
        "5",
        "--seed",
        "9",
        "--satisfiable",
    ]);
    let b = gugp(&[
        "gen",
        "random-t22",
        "--n",
        "4",
        "--k",
        "2",
        "--edges",
        "5",
        "--seed",
        "9",
        "--satisfiable",
    ]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with("T22 v1\n"));
}

#[test]
fn solve_eval_and_local_search() {
    let dir = TempDir::new().unwrap();
    let g = put(
        &dir,
        "m.gugp",
        "GUGP v1\nk 2\nn 2\ne 0 1 1/1 1 2\ne 0 1 -1/3 2 1\n",
    );
    let lab = dir.path().join("f.lab");
    let r = gugp(&[
        "solve",
        "brute",
        "--objective",
        "min-pwt",
        "--in",
        s(&g),
        "--out",
        s(&lab),
    ]);
    assert_eq!(r.code, 0);
    assert!(r.has("VAL=-1/2"));
    let e = gugp(&[
        "eval",
        "--in",
        s(&g),
        "--labeling",
        s(&lab),
        "--objective",
        "min-pwt",
    ]);
    assert!(e.has("VAL=-1/2"));

    let nwa = put(&dir, "n.gugp", "GUGP v1\nk 2\nn 2\ne 0 1 -1/1 1 2\n");
    let l = gugp(&["solve", "local2", "--in", s(&nwa)]);
    assert_eq!(l.code, 0);
    assert!(l.has("VAL=1/1"));
    assert!(l.has("ITERATIONS=1"));
    let h = gugp(&["verify", "half-guarantee", "--in", s(&nwa)]);
    assert!(h.has("VERDICT=PASS"));
}

#[test]
fn tsp_and_strip_and_smoothness() {
    let dir = TempDir::new().unwrap();
    let t = put(
        &dir,
        "t.tsp",
        "TSP v1\nn 3\nw 0 1 1/1\nw 0 2 1/1\nw 1 2 1/1\n",
    );
    let v = gugp(&["verify", "tsp-equiv", "--in", s(&t)]);
    assert_eq!(v.code, 0);
    assert!(v.has("TSP_OPT=3/1"));

    let g = put(
        &dir,
        "m.gugp",
        "GUGP v1\nk 2\nn 2\ne 0 1 1/1 1 2\ne 0 1 -1/3 2 1\n",
    );
    let v = gugp(&["verify", "strip-bounds", "--in", s(&g)]);
    assert_eq!(v.code, 0);
    assert!(v.has("NORMALIZED_UPPER=VIOLATED"));
    assert!(v.has("VERDICT=PASS"));
    let stripped = gugp(&["reduce", "strip-neg", "--in", s(&g)]);
    assert_eq!(stripped.stdout, "GUGP v1\nk 2\nn 2\ne 0 1 1/1 1 2\n");

    let p = put(
        &dir,
        "p.rel",
        "REL v1\nk1 2\nk2 2\nn 3\nbipartite 1\ns 0 V\ns 1 W\ns 2 W\ne 0 1 1/1 2 1 1 2 1\ne 0 2 1/1 2 1 1 2 2\n",
    );
    let sm = gugp(&["verify", "smoothness", "--in", s(&p), "--expect", "1/2"]);
    assert_eq!(sm.code, 0);
    assert!(sm.has("ETA=1/2"));
}
