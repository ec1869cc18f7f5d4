use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_sta-otto");
const BASELINE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/baseline.conf");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn adiabatic_cycle_prints_exact_efficiency() {
    let o = run(&["cycle", "--config", BASELINE, "--method", "AD"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"eta\": 0.680000000000"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["cycle", "--config", BASELINE, "--tau", "0.4"])), 3);
    let missing = run(&[
        "cycle", "--omega1", "0.32", "--beta1", "0.5", "--beta2", "0.05", "--tau", "1", "--method",
        "AD",
    ]);
    assert_eq!(code(&missing), 1);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("omega2"));
    assert_eq!(
        code(&run(&["cycle", "--config", BASELINE, "--beta1", "0.01"])),
        1
    );
    assert_eq!(code(&run(&["cycle", "--config", "/no/such/file.conf"])), 1);
    assert_eq!(code(&run(&["cycle", "--config", BASELINE, "--bogus", "1"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(
        code(&run(&[
            "sweep",
            "--config",
            BASELINE,
            "--out",
            "/no/such/dir/x.csv"
        ])),
        4
    );
}

#[test]
fn unknown_key_in_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "omega1 = 0.32\ntemperature = 3\n").unwrap();
    let o = run(&["cycle", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("temperature"));
}

#[test]
fn flag_overrides_file() {
    let o = run(&[
        "cycle", "--config", BASELINE, "--method", "AD", "--omega1", "0.15",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["omega1"], 0.15);
    assert_eq!(v["eta"].as_f64().unwrap(), 0.85);
}

#[test]
fn non_engine_regime_exits_2() {
    // hot bath barely hotter than the cold one and a large frequency ratio:
    // the adiabatic works cannot extract energy
    let o = run(&[
        "cycle", "--omega1", "0.32", "--omega2", "1", "--beta1", "0.5", "--beta2", "0.45", "--tau",
        "0.05", "--method", "NA",
    ]);
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["engine_valid"], false);
    assert!(v["eta"].is_null());
}

#[test]
fn sweep_file_is_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["1", "4"]
        .iter()
        .map(|w| {
            let p = dir.path().join(format!("sweep{w}.csv"));
            let o = run(&[
                "sweep",
                "--config",
                BASELINE,
                "--n_points",
                "12",
                "--workers",
                w,
                "--out",
                p.to_str().unwrap(),
            ]);
            assert_eq!(code(&o), 0);
            p
        })
        .collect();
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(!text.contains('\r') && !text.contains("NaN"));
    assert_eq!(text.lines().count(), 1 + 12 * 5);
}

#[test]
fn sweep_power_shared_by_shortcuts() {
    let o = run(&[
        "sweep",
        "--config",
        BASELINE,
        "--n_points",
        "6",
        "--tau_min",
        "3",
    ]);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    for chunk in rows.chunks(5) {
        let power = |m: &str| chunk.iter().find(|r| r[1] == m).unwrap()[10];
        assert_eq!(power("CD"), power("IE"));
        assert_eq!(power("LCD"), power("IE"));
        assert_eq!(power("AD"), power("IE"));
    }
}

#[test]
fn trace_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("trace.csv");
    let o = run(&[
        "trace",
        "--config",
        BASELINE,
        "--n_samples",
        "21",
        "--stroke",
        "expansion",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(Path::new(&p)).unwrap();
    assert_eq!(text.lines().count(), 22);
    assert!(text.starts_with("t,s,omega,domega,ddomega,qstar,cost_density\n"));
}

#[test]
fn pareto_absurd_params_header_only() {
    let o = run(&[
        "pareto",
        "--config",
        BASELINE,
        "--tau_min",
        "0.05",
        "--tau_max",
        "0.4",
        "--n_points",
        "3",
        "--methods",
        "CD,LCD,IE",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout(&o), "method,tau,eta,power\n");
}
