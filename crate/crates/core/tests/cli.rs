use std::path::Path;
use std::process::{Command, Output};

use skeinlab::apollonian::{eval_four, eval_three, eval_two, CirclePacking};

fn skeinlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skeinlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const THETA_222: &str = r#"{"edges":[{"id":"a","label":2},{"id":"b","label":2},{"id":"c","label":2}],
  "vertices":[{"id":"u","ends":["a","b","c"]},{"id":"v","ends":["a","c","b"]}]}"#;

const VERTEX_111: &str = r#"{"edges":[{"id":"a","label":1},{"id":"b","label":1},{"id":"c","label":1}],
  "vertices":[{"id":"u","ends":["a","b","c"]},{"id":"v","ends":["a","c","b"]}]}"#;

#[test]
fn symbols_theta() {
    let o = skeinlab(&["symbols", "theta", "2", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-3\n");
}

#[test]
fn net_eval_methods() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "theta_222.json", THETA_222);
    let auto = skeinlab(&["net", "eval", "--method", "auto", &f]);
    assert_eq!((auto.status.code(), stdout(&auto).as_str()), (Some(0), "-3\n"));
    assert!(stderr(&auto).contains("method:"));
    for m in ["brute", "recoupling"] {
        assert_eq!(stdout(&skeinlab(&["net", "eval", "--method", m, &f])), "-3\n");
    }
}

#[test]
fn inadmissible_net_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "vertex_111.json", VERTEX_111);
    let o = skeinlab(&["net", "eval", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parity"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn budget_exit_code_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "theta_222.json", THETA_222);
    assert_eq!(skeinlab(&["net", "eval", "--method", "brute", "--budget", "3", &f]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_skeinlab"))
        .args(["net", "eval", "--method", "brute", &f])
        .env("SKEINLAB_STATE_BUDGET", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_flags_are_rejected() {
    assert_eq!(skeinlab(&["symbols", "theta", "2", "2", "2", "--frob"]).status.code(), Some(2));
    assert_eq!(skeinlab(&["ford", "gen"]).status.code(), Some(2));
}

#[test]
fn diagram_eval() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "eight.json",
        r#"{"nodes":[{"kind":"cup","ports":[0,1]},{"kind":"crossing","ports":[2,3,4,5]},{"kind":"cap","ports":[6,7]}],
            "wires":[[0,2],[1,3],[4,6],[5,7]]}"#,
    );
    for m in ["contract", "loops", "both"] {
        assert_eq!(stdout(&skeinlab(&["diagram", "eval", &f, "--method", m])), "2\n");
    }
}

#[test]
fn packing_round_trip_matches_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (CirclePacking::two_disks(1, 2), eval_two(1, 2)),
        (CirclePacking::three_disks(1, 2, 1), eval_three(1, 2, 1)),
        (CirclePacking::four_disks(1, 1, 1, 1), eval_four(1, 1, 1, 1)),
    ];
    for (k, (p, want)) in cases.iter().enumerate() {
        let pf = write(dir.path(), &format!("p{k}.json"), &serde_json::to_string(p).unwrap());
        let nf = dir.path().join(format!("n{k}.json"));
        let o = skeinlab(&["pack2net", &pf, "--out", nf.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let e = skeinlab(&["net", "eval", nf.to_str().unwrap()]);
        assert_eq!(stdout(&e), format!("{want}\n"));
    }
}

#[test]
fn generation_and_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let pk = dir.path().join("gasket.json");
    let svg = dir.path().join("gasket.svg");
    let o = skeinlab(&["apollonian", "gen", "--root=-1,2,2,3", "--depth", "2", "--out", pk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = skeinlab(&["render", pk.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let ford = skeinlab(&["ford", "gen", "--qmax", "5"]);
    assert_eq!(ford.status.code(), Some(0));
    assert!(stdout(&ford).contains("\"line\""));
}

#[test]
fn analytic_sampling() {
    let o = skeinlab(&["analytic", "sample", "--fn", "theta", "--path", "1,x,x", "--range", "0:2", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,re,im");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "0,-2,0");
    let pole = skeinlab(&["analytic", "sample", "--fn", "theta", "--path", "x,1,1", "--range=-2:0", "--steps", "2"]);
    assert_eq!(pole.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "theta_222.json", THETA_222);
    let runs: Vec<Output> = ["1", "4", "4"]
        .iter()
        .map(|t| skeinlab(&["--threads", t, "net", "eval", "--method", "brute", &f]))
        .collect();
    assert!(runs.windows(2).all(|w| w[0].stdout == w[1].stdout));
    let a = skeinlab(&["--threads", "1", "apollonian", "gen", "--root=-1,2,2,3", "--depth", "3"]);
    let b = skeinlab(&["--threads", "3", "apollonian", "gen", "--root=-1,2,2,3", "--depth", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = skeinlab(&["analytic", "sample", "--fn", "delta", "--path", "1,x", "--range=-3:7", "--steps", "1000", "--out", "svg"]);
    let d = skeinlab(&["--threads", "2", "analytic", "sample", "--fn", "delta", "--path", "1,x", "--range=-3:7", "--steps", "1000", "--out", "svg"]);
    assert_eq!(c.stdout, d.stdout);
}
