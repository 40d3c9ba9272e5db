use std::fs;
use std::process::{Command, Output};

fn angles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_angles"))
        .args(args)
        .output()
        .expect("run angles")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_then_count_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("helix.txt");
    let p = path.to_str().unwrap();
    let g = angles(&["generate", "--construction", "helix", "--n", "12", "--out", p]);
    assert_eq!(g.status.code(), Some(0));
    let from_file = angles(&["count", "--in", p]);
    let direct = angles(&["count", "--construction", "helix", "--n", "12"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&direct));
    // float counts report clustering on stderr
    assert!(String::from_utf8_lossy(&direct.stderr).contains("min_gap"));
}

#[test]
fn exact_square_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.txt");
    fs::write(&path, "0 0\n1 0\n1 1\n0 1\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&angles(&["count", "--in", p])), "2\n");
    assert_eq!(stdout(&angles(&["chains", "--in", p, "--k", "2"])), "4\n");
    assert_eq!(stdout(&angles(&["chains", "--in", p, "--k", "2", "--chains-all-distinct"])), "2\n");
    assert_eq!(stdout(&angles(&["pinned", "--in", p, "--pin-kind", "center", "--a", "0"])), "2\n");
    let e = stdout(&angles(&["energy", "--in", p]));
    assert!(e.contains("energy 320\n"), "{e}");
    assert!(e.contains("bound_holds true\n"), "{e}");
    // every corner touches both classes
    assert_eq!(stdout(&angles(&["selfsim", "--in", p])), "0 1 2 3\n");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.txt");
    fs::write(&path, "0 0\n1 0\n1 1\n0 1\n").unwrap();
    let v = angles(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(2));
    assert!(stdout(&v).contains("concyclic 0 1 2 3\n"));
    let ok = angles(&["verify", "--construction", "random", "--n", "8", "--seed", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("general_position true\n"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(angles(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(angles(&["count"]).status.code(), Some(1));
    assert_eq!(angles(&["count", "--construction", "helix", "--exact"]).status.code(), Some(1));
    assert_eq!(angles(&["pinned", "--construction", "helix", "--pin-kind", "middle"]).status.code(), Some(1));
    assert_eq!(angles(&["count", "--construction", "cones", "--n", "30"]).status.code(), Some(1));
    assert_eq!(angles(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "1 2\n3 4 5\n").unwrap();
    let o = angles(&["count", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn generator_rejection_exits_two() {
    // with beta = pi every point lands on the x-axis
    let o = angles(&["generate", "--construction", "log_spiral", "--n", "6", "--beta", "3.141592653589793"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn sweep_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let c = csv.to_str().unwrap();
    let args = [
        "sweep", "--construction", "helix", "--n", "10,20,30", "--quantity", "distinct_angles,energy",
        "--no-timing", "--out", c,
    ];
    assert_eq!(angles(&args).status.code(), Some(0));
    let first = fs::read_to_string(&csv).unwrap();
    assert!(first.starts_with("construction,n,quantity,value,eps,elapsed_ms\nhelix,10,distinct_angles,56,"));
    angles(&args);
    assert_eq!(fs::read_to_string(&csv).unwrap(), first);

    let f = angles(&["fit", "--in", c, "--quantity", "distinct_angles"]);
    assert_eq!(f.status.code(), Some(0));
    assert!(stdout(&f).starts_with("slope 2."));
    // mixed quantities need a filter
    assert_eq!(angles(&["fit", "--in", c]).status.code(), Some(1));
}

#[test]
fn sweep_skips_invalid_sizes_with_warning() {
    let o = angles(&["sweep", "--construction", "cones", "--n", "29,30", "--quantity", "pinned_pair_all_roles"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.contains("cones,29,pinned_pair_all_roles,5,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped n = 30"));
}

#[test]
fn empty_sweep_is_header_only() {
    let o = angles(&["sweep", "--construction", "helix", "--n"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "construction,n,quantity,value,eps,elapsed_ms\n");
}

#[test]
fn thread_count_does_not_change_output() {
    let one = angles(&["--threads", "1", "count", "--construction", "conchospiral", "--n", "15"]);
    let four = angles(&["--threads", "4", "count", "--construction", "conchospiral", "--n", "15"]);
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(stdout(&one), "273\n");
}

#[test]
fn exact_flag_reads_decimals_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dec.txt");
    fs::write(&path, "0 0\n0.5 0\n0.5 0.5\n0 0.5\n").unwrap();
    let o = angles(&["count", "--in", path.to_str().unwrap(), "--exact"]);
    assert_eq!(stdout(&o), "2\n");
    // exact mode prints no clustering diagnostics
    assert!(o.stderr.is_empty());
}
