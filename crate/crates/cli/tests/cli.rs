use std::process::{Command, Output};

use pbg_cli::{figure_manifest, RunConfig};

fn pbg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn single_trace_to_stdout() {
    let out = pbg(&[
        "--mode",
        "single",
        "--delta-over-beta",
        "-5",
        "--tmax",
        "5",
        "--steps",
        "500",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta_t,P,S"));
    assert_eq!(
        lines.next(),
        Some("0.00000000000e0,1.00000000000e0,0.00000000000e0")
    );
    assert_eq!(text.lines().count(), 502);
    assert!(!text.contains('\r'));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for path in [&first, &second] {
        let out = pbg(&["--preset", "fig3c", "--out", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty());
    }
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        &["--mode", "triple"][..],
        &["--preset", "fig9"],
        &["--theta0", "7"],
        &["--steps", "10"],
        &["--config", "/nonexistent/pbg.conf"],
        &["--alpha2", "x"],
    ] {
        let out = pbg(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
    }
}

#[test]
fn numeric_failures_exit_with_three_and_name_the_operation() {
    let out = pbg(&["--mode", "two", "--tmax", "150"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("numeric failure in amplitude_U"), "{err}");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(
        &path,
        "# two qubits\nmode = two\nfamily = psi\nalpha2 = 0.3\ntmax = 2\nsteps = 200\n",
    )
    .unwrap();
    let out = pbg(&[
        "--config",
        path.to_str().unwrap(),
        "--alpha2",
        "0.9",
        "--dump-config",
    ]);
    assert!(out.status.success());
    let config = RunConfig::from_text(&stdout(&out)).unwrap();
    assert_eq!(config.alpha2, 0.9);
    assert_eq!(config.family, pbg_core::Family::Psi);
    assert_eq!(config.tmax, 2.0);
}

#[test]
fn dumped_config_reproduces_the_run() {
    let args = [
        "--preset", "fig2b", "--tmax", "3", "--steps", "300", "--theta0", "1.2",
    ];
    let dump = stdout(&pbg(&[&args[..], &["--dump-config"]].concat()));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dump.conf");
    std::fs::write(&path, &dump).unwrap();
    let again = stdout(&pbg(&["--config", path.to_str().unwrap(), "--dump-config"]));
    assert_eq!(dump, again);
    assert_eq!(
        stdout(&pbg(&args)),
        stdout(&pbg(&["--config", path.to_str().unwrap()]))
    );
}

#[test]
fn oracle_flag_selects_oracle_check() {
    let out = pbg(&["--oracle", "--dump-config"]);
    let config = RunConfig::from_text(&stdout(&out)).unwrap();
    assert_eq!(config.mode, pbg_cli::Mode::OracleCheck);
    assert_eq!(config.delta_grid, vec![-5.0, -1.0, 0.0, 1.0, 2.0]);
}

#[test]
fn manifest_lists_every_preset() {
    let text = stdout(&pbg(&["--manifest"]));
    for p in figure_manifest() {
        assert!(text.contains(&format!("[{}]", p.name)));
    }
}

#[test]
fn sweep_columns_follow_the_grid() {
    let out = pbg(&[
        "--mode",
        "sweep-alpha",
        "--alpha2-grid",
        "0.2,0.5",
        "--tmax",
        "1",
        "--steps",
        "100",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).lines().next(),
        Some("beta_t,c_a2_0.2,c_a2_0.5")
    );
    let out = pbg(&[
        "--mode",
        "sweep-delta",
        "--delta-grid",
        "-2,1",
        "--tmax",
        "1",
        "--steps",
        "100",
    ]);
    assert_eq!(
        stdout(&out).lines().next(),
        Some("beta_t,c_delta_-2,c_delta_1")
    );
}
