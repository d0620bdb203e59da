use std::fs;
use std::path::Path;
use std::process::Command;

fn bench(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lacas-bench"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

#[test]
fn gen_run_solve_render_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let out = bench(
        &[
            "gen",
            "--family",
            "trap,split",
            "--seeds",
            "1..=2",
            "--out",
            "corpus",
            "--locations",
            "200",
        ],
        d,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest = fs::read_to_string(d.join("corpus/manifest.txt")).unwrap();
    assert_eq!(manifest.lines().count(), 4);
    assert!(d.join("corpus/trap-1.txt").exists());

    let out = bench(
        &[
            "run",
            "--manifest",
            "corpus/manifest.txt",
            "--algo",
            "lacas*",
            "--algo",
            "astar-k,k=5",
            "--timeout",
            "5",
            "--workers",
            "2",
            "--csv",
            "runs.csv",
        ],
        d,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(d.join("runs.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 8);
    assert!(csv.starts_with("run_id,scenario,seed,algorithm"));
    assert!(d.join("runs.improvements.csv").exists());

    let out = bench(
        &[
            "solve",
            "--instance",
            "corpus/trap-1.txt",
            "--timeout",
            "5",
            "--out",
            "trap.sol",
        ],
        d,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = bench(
        &[
            "render",
            "--instance",
            "corpus/trap-1.txt",
            "--solution",
            "trap.sol",
            "--explore",
            "lacas",
            "--out",
            "trap.svg",
        ],
        d,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let svg = fs::read_to_string(d.join("trap.svg")).unwrap();
    assert!(svg.starts_with("<svg"));

    let out = bench(
        &[
            "sweep",
            "--manifest",
            "corpus/manifest.txt",
            "--b",
            "1,10",
            "--timeout",
            "5",
            "--csv",
            "sweep.csv",
        ],
        d,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = fs::read_to_string(d.join("sweep.summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 3);
}

#[test]
fn missing_instance_is_recorded_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.txt"), "trap 1 nowhere.txt\n").unwrap();
    let out = bench(
        &[
            "run",
            "--manifest",
            "m.txt",
            "--algo",
            "lacas",
            "--csv",
            "r.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().contains(",error,"));
}

#[test]
fn harness_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = bench(
        &[
            "run",
            "--manifest",
            "absent.txt",
            "--algo",
            "lacas",
            "--csv",
            "r.csv",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
    let out = bench(
        &["gen", "--family", "mystery", "--seeds", "1", "--out", "x"],
        dir.path(),
    );
    assert!(!out.status.success());
    fs::write(dir.path().join("m.txt"), "").unwrap();
    let out = bench(
        &[
            "run",
            "--manifest",
            "m.txt",
            "--algo",
            "dijkstra",
            "--csv",
            "r.csv",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
}
