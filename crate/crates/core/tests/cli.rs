use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use limpack::bounds::{names, BoundReport};
use limpack::cli::{ExactOutput, PackOutput, VerifyOutput};
use limpack::experiments::{SandwichReport, TrialStats};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_limpack"));
    cmd.env_remove("LIMPACK_ORACLE_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn gen_file(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    write(dir, name, &stdout(&o))
}

#[test]
fn gen_rook_three() {
    let o = run(&["gen", "--family", "rook", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let g = limpack::graph::parse_graph(&stdout(&o)).unwrap();
    assert_eq!(g.n(), 9);
    assert!(g.degrees().all(|d| d == 4));
}

#[test]
fn exact_on_six_cycle_and_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = gen_file(dir.path(), "c6.txt", &["--family", "cycle", "--n", "6"]);
    let o = run(&["exact", c6.to_str().unwrap(), "--k", "1", "--ktuple"]);
    assert_eq!(o.status.code(), Some(0));
    let out: ExactOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out.size, 2);
    assert_eq!(out.set.len(), 2);
    assert_eq!(out.ktuple_size, Some(2));

    let witness: String = out.set.iter().map(|v| format!("{v}\n")).collect();
    let set = write(dir.path(), "x.txt", &witness);
    let o = run(&[
        "verify",
        c6.to_str().unwrap(),
        set.to_str().unwrap(),
        "--k",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.valid);

    let dom: String = out
        .ktuple_set
        .unwrap()
        .iter()
        .map(|v| format!("{v}\n"))
        .collect();
    let dom = write(dir.path(), "y.txt", &dom);
    let o = run(&[
        "verify",
        c6.to_str().unwrap(),
        dom.to_str().unwrap(),
        "--k",
        "1",
        "--ktuple",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_invalid_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.txt", "3 3\n0 1\n0 2\n1 2\n");
    let set = write(dir.path(), "x.txt", "0\n1\n");
    let o = run(&[
        "verify",
        k3.to_str().unwrap(),
        set.to_str().unwrap(),
        "--k",
        "1",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "invalid\n");
    let o = run(&[
        "verify",
        k3.to_str().unwrap(),
        set.to_str().unwrap(),
        "--k",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid\n");
}

#[test]
fn pack_witnesses_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_file(
        dir.path(),
        "g.txt",
        &["--family", "gnp", "--n", "40", "--p", "0.2", "--seed", "4"],
    );
    for seed in ["0", "1", "99"] {
        let o = run(&["pack", g.to_str().unwrap(), "--k", "2", "--seed", seed]);
        assert_eq!(o.status.code(), Some(0));
        let out: PackOutput = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(out.size, out.set.len());
        assert!(out.is_maximal);
        let set = write(
            dir.path(),
            "x.txt",
            &out.set.iter().map(|v| format!("{v}\n")).collect::<String>(),
        );
        let v = run(&[
            "verify",
            g.to_str().unwrap(),
            set.to_str().unwrap(),
            "--k",
            "2",
        ]);
        assert_eq!(v.status.code(), Some(0));
    }
}

#[test]
fn capacity_errors_exit_three_and_cap_is_configurable() {
    let dir = tempfile::tempdir().unwrap();
    let c = gen_file(dir.path(), "c.txt", &["--family", "cycle", "--n", "12"]);
    let path = c.to_str().unwrap();

    let o = run(&["exact", path, "--k", "1", "--oracle-cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());

    let o = bin()
        .args(["exact", path, "--k", "1"])
        .env("LIMPACK_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    // flag beats env
    let o = bin()
        .args(["exact", path, "--k", "1", "--oracle-cap", "12"])
        .env("LIMPACK_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out: ExactOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out.size, 4);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 1\n0 3\n");
    let o = run(&["bounds", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(run(&["pack", "--k", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["bounds", bad.to_str().unwrap(), "--k", "1", "--unknown"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["experiment", "sharpness", "--k", "0"]).status.code(),
        Some(2)
    );

    let p3 = write(dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    assert_eq!(
        run(&["exact", p3.to_str().unwrap(), "--k", "3", "--ktuple"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bounds_json_schema_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    let o = run(&["bounds", p3.to_str().unwrap(), "--k", "2", "--ktuple"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report: BoundReport = serde_json::from_str(&text).unwrap();
    assert_eq!((report.n, report.m, report.k), (3, 2, 2));
    assert!(report.entry(names::PROBABILISTIC_LOWER).unwrap().applicable);
    assert!(!report.entry(names::CONNECTED_UPPER).unwrap().applicable);
    assert!(
        !report
            .entry(names::KTUPLE_FORMULA_UPPER)
            .unwrap()
            .applicable
    );
    assert_eq!(
        report.entry(names::KTUPLE_NUMBER_UPPER).unwrap().value,
        Some(3.0)
    );
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again + "\n", text);
}

#[test]
fn other_formats() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = gen_file(dir.path(), "c5.txt", &["--family", "cycle", "--n", "5"]);
    let o = run(&[
        "bounds",
        c5.to_str().unwrap(),
        "--k",
        "1",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("name,kind,value,applicable,precondition\n"));
    assert_eq!(text.lines().count(), 7);

    let o = run(&[
        "experiment",
        "trials",
        c5.to_str().unwrap(),
        "--k",
        "1",
        "--trials",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o).lines().count(), 6);

    let o = run(&["pack", c5.to_str().unwrap(), "--k", "1", "--format", "text"]);
    assert!(stdout(&o).starts_with("size 1\n"));

    let o = run(&["experiment", "sharpness", "--k", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "1 0.5\n2 0.57735026919\n");
}

#[test]
fn stdin_graph_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["exact", "-", "--k", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"4 3\n0 1\n1 2\n2 3\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    let out: ExactOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out.size, 2);
}

#[test]
fn trials_json_and_sandwich() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_file(
        dir.path(),
        "g.txt",
        &[
            "--family",
            "random-regular",
            "--n",
            "30",
            "--d",
            "4",
            "--seed",
            "2",
        ],
    );
    let o = run(&[
        "experiment",
        "trials",
        g.to_str().unwrap(),
        "--k",
        "2",
        "--trials",
        "20",
        "--seed",
        "5",
    ]);
    let stats: TrialStats = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(stats.sizes.len(), 20);
    assert_eq!(stats.seed, 5);

    let o = run(&["experiment", "sandwich", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: SandwichReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.rows.len() >= 200);
    assert!(report.violations.is_empty(), "{:?}", report.violations);
}
