//! End-to-end tests of the command layer: in-process `cmd_*` calls plus
//! smoke tests of the installed binary.

use std::path::PathBuf;
use std::process::Command;

use auglag::cli::{
    cmd_compare, cmd_solve, cmd_sweep, resolve_config, CliOverrides, MethodChoice, RunConfig,
};
use auglag::outer::OuterStatus;

fn out_in(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn base_cfg(problem: &str, dir: &tempfile::TempDir, out: &str) -> RunConfig {
    let mut cfg = RunConfig::new(problem);
    cfg.omega = Some(0.1);
    cfg.out = Some(out_in(dir, out));
    cfg
}

#[test]
fn solve_summary_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_cfg("qp1d", &dir, "trace.csv");
    cfg.omega_e = 0.1;
    let outcome = cmd_solve(&cfg).unwrap();
    assert_eq!(outcome.exit_code, 0);
    assert!(outcome.summary.contains("0.909091"), "{}", outcome.summary);
    let text = std::fs::read_to_string(&outcome.out_path).unwrap();
    assert!(text.starts_with("# method=MALM_Sub status=Converged\n"), "{text}");
}

#[test]
fn coincidence_traces_differ_only_in_method_line() {
    let dir = tempfile::tempdir().unwrap();
    let mut malm = base_cfg("qp1d", &dir, "malm.csv");
    malm.omega_e = 0.0;
    let mut alm = base_cfg("qp1d", &dir, "alm.csv");
    alm.method = MethodChoice::Alm;
    cmd_solve(&malm).unwrap();
    cmd_solve(&alm).unwrap();
    let malm_text = std::fs::read_to_string(out_in(&dir, "malm.csv")).unwrap();
    let alm_text = std::fs::read_to_string(out_in(&dir, "alm.csv")).unwrap();
    let (m_head, m_rest) = malm_text.split_once('\n').unwrap();
    let (a_head, a_rest) = alm_text.split_once('\n').unwrap();
    assert_eq!(m_head.replace("MALM_Sub", "ALM"), a_head);
    assert_eq!(m_rest, a_rest);
}

#[test]
fn repeat_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut first = base_cfg("rosenbrock_circle", &dir, "a.csv");
    first.omega_e = 0.01;
    let second = RunConfig { out: Some(out_in(&dir, "b.csv")), ..first.clone() };
    cmd_solve(&first).unwrap();
    cmd_solve(&second).unwrap();
    let a = std::fs::read(out_in(&dir, "a.csv")).unwrap();
    let b = std::fs::read(out_in(&dir, "b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sweep_reaches_the_constrained_solution() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_cfg("qp1d", &dir, "sweep.csv");
    cfg.omega_e_schedule = Some(vec![1e-1, 1e-2, 1e-3, 0.0]);
    let outcome = cmd_sweep(&cfg).unwrap();
    assert_eq!(outcome.exit_code, 0);
    let last = outcome.rows.last().unwrap();
    assert!((last.x_final[0] - 1.0).abs() <= 1e-6, "x_final={}", last.x_final[0]);
    let text = std::fs::read_to_string(&outcome.out_path).unwrap();
    assert!(text.starts_with("omega_e,status,f,c_norm,dist_oracle,x0\n"), "{text}");
    // Every sweep row on a consistent QP carries an oracle distance.
    assert!(outcome.rows.iter().all(|r| r.dist_oracle.is_some()));
}

#[test]
fn sweep_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_cfg("qp1d", &dir, "sweep.csv");
    assert!(cmd_sweep(&cfg).unwrap_err().to_string().contains("schedule"));
    cfg.omega_e_schedule = Some(vec![]);
    assert!(cmd_sweep(&cfg).unwrap_err().to_string().contains("non-empty"));
    cfg.omega_e_schedule = Some(vec![1e-3, 1e-2]);
    assert!(cmd_sweep(&cfg).unwrap_err().to_string().contains("decreasing"));
    cfg.omega_e_schedule = Some(vec![1e-1, 1e-2]);
    cfg.method = MethodChoice::Penalty;
    assert!(cmd_sweep(&cfg).is_err());
}

#[test]
fn compare_requires_positive_omega_e() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = base_cfg("qp1d", &dir, "cmp.csv");
    let err = cmd_compare(&cfg).unwrap_err();
    assert!(err.to_string().contains("omega_e"));
}

#[test]
fn compare_reports_the_conditioning_gap() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_cfg("qp1d", &dir, "cmp.csv");
    cfg.omega_e = 1e-4;
    let outcome = cmd_compare(&cfg).unwrap();
    let pen = &outcome.rows[0];
    let malm = &outcome.rows[1];
    assert_eq!(pen.method.as_str(), "PenaltyDirect");
    assert_eq!(malm.method.as_str(), "MALM_Sub");
    assert!(pen.max_condition.unwrap() >= 1e4);
    assert!(malm.max_condition.unwrap() <= 11.0);
    let text = std::fs::read_to_string(&outcome.out_path).unwrap();
    assert!(text.starts_with(
        "method,status,outer_iters,inner_iters_total,max_condition,final_upnp_residual,final_c_norm\n"
    ));
}

// Regression pin from the first verified run (toy_ocp, omega=0.1,
// omega_e=1e-6, defaults otherwise): with exact second derivatives the
// direct penalty solve needs exactly one Newton iteration regardless of its
// 4e7 conditioning, while the modified scheme pays one inner iteration per
// outer iteration and hits the 50-outer cap. The conditioning gap — the
// claim the table exists to show — still spans five orders of magnitude.
#[test]
fn compare_toy_ocp_small_omega_e_regression() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_cfg("toy_ocp", &dir, "cmp.csv");
    cfg.omega_e = 1e-6;
    let outcome = cmd_compare(&cfg).unwrap();
    let pen = &outcome.rows[0];
    let malm = &outcome.rows[1];
    assert_eq!(pen.status, OuterStatus::Converged);
    assert_eq!(pen.inner_iters_total, 1);
    assert_eq!(malm.status, OuterStatus::MaxOuter);
    assert_eq!(malm.inner_iters_total, 50);
    assert!(pen.max_condition.unwrap() >= 1e7);
    assert!(malm.max_condition.unwrap() <= 5e2);
}

// A constraint that is identically zero makes both compare routes the same
// single unconstrained minimization.
#[test]
fn compare_on_an_unconstrained_problem_is_symmetric() {
    let dir = tempfile::tempdir().unwrap();
    let qp = out_in(&dir, "free.toml");
    std::fs::write(&qp, "n = 1\nm = 1\nQ = [2.0]\nq = [-4.0]\nA = [0.0]\nb = [0.0]\n").unwrap();
    let mut cfg = base_cfg(qp.to_str().unwrap(), &dir, "cmp.csv");
    cfg.omega_e = 1e-3;
    let outcome = cmd_compare(&cfg).unwrap();
    assert_eq!(outcome.exit_code, 0);
    let pen = &outcome.rows[0];
    let malm = &outcome.rows[1];
    assert_eq!(pen.status, OuterStatus::Converged);
    assert_eq!(malm.status, OuterStatus::Converged);
    assert_eq!(pen.inner_iters_total, malm.inner_iters_total);
    assert_eq!(pen.max_condition, malm.max_condition);
    assert!((pen.final_upnp_residual - malm.final_upnp_residual).abs() <= 1e-12);
}

#[test]
fn qp_file_solve_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let qp = out_in(&dir, "overdet.toml");
    std::fs::write(&qp, "n = 1\nm = 2\nQ = [1.0]\nq = [-1.0]\nA = [1.0, 1.0]\nb = [1.0, -1.0]\n")
        .unwrap();
    let mut cfg = base_cfg(qp.to_str().unwrap(), &dir, "trace.csv");
    cfg.method = MethodChoice::Penalty;
    cfg.omega_e = 0.1;
    let outcome = cmd_solve(&cfg).unwrap();
    assert_eq!(outcome.exit_code, 0);
    // Penalty form: x = (omega_e + A'b)/(omega_e·Q + A'A) = 0.1/2.1.
    assert!((outcome.trace.x_final[0] - 0.1 / 2.1).abs() <= 1e-9);
}

#[test]
fn config_file_drives_a_full_solve() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_in(&dir, "trace.csv");
    let cfg_path = out_in(&dir, "run.toml");
    std::fs::write(
        &cfg_path,
        format!(
            "problem = \"qp1d\"\nmethod = \"malm-root\"\nomega = 0.1\nomega_e = 0.1\n\
             outer_tol = 1e-10\ninner_grad_tol = 1e-13\nmax_outer = 30\nx0 = [0.3]\nout = \"{}\"\n",
            out.display()
        ),
    )
    .unwrap();
    let cfg = resolve_config(Some(&cfg_path), &CliOverrides::default()).unwrap();
    let outcome = cmd_solve(&cfg).unwrap();
    assert_eq!(outcome.exit_code, 0);
    assert!((outcome.trace.x_final[0] - 10.0 / 11.0).abs() <= 1e-8);
    assert!(out.is_file());
}

// ---------------------------------------------------------------------------
// Binary smoke tests.

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_auglag"))
}

#[test]
fn bin_solve_prints_summary_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_in(&dir, "trace.csv");
    let res = bin()
        .args(["solve", "--problem", "qp1d", "--method", "malm", "--omega", "0.1"])
        .args(["--omega-e", "0.1", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&res.stdout);
    assert!(stdout.contains("0.909091"), "{stdout}");
    assert!(out.is_file());
}

#[test]
fn bin_unknown_problem_exits_one() {
    let res = bin()
        .args(["solve", "--problem", "nosuch", "--method", "malm", "--omega", "0.1"])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("unknown problem"));
}

#[test]
fn bin_outer_cap_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_in(&dir, "trace.csv");
    let res = bin()
        .args(["solve", "--problem", "toy_ocp", "--method", "malm", "--omega", "0.1"])
        .args(["--omega-e", "0.01", "--max-outer", "2", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn bin_missing_problem_and_bad_flags_exit_one() {
    let res = bin().args(["solve", "--method", "malm", "--omega", "0.1"]).output().unwrap();
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("problem"));
    let res = bin().args(["solve", "--nonsense"]).output().unwrap();
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn bin_help_exits_zero() {
    let res = bin().arg("--help").output().unwrap();
    assert_eq!(res.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&res.stdout);
    for sub in ["solve", "compare", "sweep"] {
        assert!(stdout.contains(sub), "{stdout}");
    }
}

#[test]
fn bin_sweep_without_schedule_exits_one() {
    let res = bin()
        .args(["sweep", "--problem", "qp1d", "--omega", "0.1"])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("schedule"));
}

#[test]
fn bin_sweep_runs_a_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_in(&dir, "sweep.csv");
    let res = bin()
        .args(["sweep", "--problem", "qp1d", "--omega", "0.1"])
        .args(["--schedule", "1e-1,1e-2,1e-3,0", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("0.0000000000000000e0,Converged,"), "{last}");
}
