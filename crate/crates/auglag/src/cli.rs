//! Command-line front end: configuration resolution and the `solve`,
//! `compare`, and `sweep` entry points.
//!
//! The thin `auglag` binary parses flags and delegates here; everything in
//! this module is plain library code so the commands can be driven (and
//! tested) in-process. Configuration comes from an optional TOML file plus
//! flag overrides, with flags winning; unknown keys in the file are hard
//! errors so typos cannot silently fall back to defaults.
//!
//! Exit-code convention (mapped from the trace status):
//! `0` Converged, `2` MaxOuter, `3` InnerFailure, `1` configuration or
//! file errors.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, DenseVector};
use crate::oracle::qp_bi_objective_limit;
use crate::outer::{
    alm_solve, fmt_float, malm_solve, malm_solve_root_form, penalty_direct_solve, upnp_residual,
    Method, OuterOptions, OuterStatus, SolveTrace,
};
use crate::problem::{
    catalog, catalog_qp, catalog_start, make_qp_problem, NlpProblem, PenaltyConfig, QpData,
    CATALOG_NAMES,
};

/// Which solver a run uses, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Alm,
    Malm,
    MalmRoot,
    Penalty,
}

impl FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alm" => Ok(MethodChoice::Alm),
            "malm" => Ok(MethodChoice::Malm),
            "malm-root" => Ok(MethodChoice::MalmRoot),
            "penalty" => Ok(MethodChoice::Penalty),
            other => Err(Error::Config(format!(
                "unknown method '{other}' (expected alm, malm, malm-root, or penalty)"
            ))),
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Alm => "alm",
            MethodChoice::Malm => "malm",
            MethodChoice::MalmRoot => "malm-root",
            MethodChoice::Penalty => "penalty",
        })
    }
}

/// Fully resolved run configuration (file values + flag overrides).
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Catalog name or path to a QP data file.
    pub problem: String,
    pub method: MethodChoice,
    /// Proximal weight; required by alm/malm/malm-root, ignored by penalty.
    pub omega: Option<f64>,
    /// Penalty-form weight; 0 means the pure equality-constrained target.
    pub omega_e: f64,
    /// Start point override (defaults to the problem's designated start).
    pub x0: Option<Vec<f64>>,
    /// Initial multipliers (default zeros).
    pub lambda0: Option<Vec<f64>>,
    pub outer_tol: f64,
    pub max_outer: usize,
    pub inner_grad_tol: f64,
    pub inner_max_iters: usize,
    pub warm_start: bool,
    /// Output CSV path (per-command default when unset).
    pub out: Option<PathBuf>,
    /// Strictly decreasing omega_e schedule for `sweep` (0 allowed last).
    pub omega_e_schedule: Option<Vec<f64>>,
}

impl RunConfig {
    /// Configuration with all defaults for the given problem.
    pub fn new(problem: impl Into<String>) -> Self {
        Self {
            problem: problem.into(),
            method: MethodChoice::Malm,
            omega: None,
            omega_e: 0.0,
            x0: None,
            lambda0: None,
            outer_tol: 1e-8,
            max_outer: 50,
            inner_grad_tol: 1e-9,
            inner_max_iters: 200,
            warm_start: true,
            out: None,
            omega_e_schedule: None,
        }
    }
}

/// Raw flag values collected by the binary; `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct CliOverrides {
    pub problem: Option<String>,
    pub method: Option<String>,
    pub omega: Option<f64>,
    pub omega_e: Option<f64>,
    pub outer_tol: Option<f64>,
    pub max_outer: Option<usize>,
    pub out: Option<PathBuf>,
    pub x0: Option<Vec<f64>>,
    pub lambda0: Option<Vec<f64>>,
    pub schedule: Option<Vec<f64>>,
}

const CONFIG_KEYS: [&str; 13] = [
    "problem",
    "method",
    "omega",
    "omega_e",
    "x0",
    "lambda0",
    "outer_tol",
    "max_outer",
    "inner_grad_tol",
    "inner_max_iters",
    "warm_start",
    "out",
    "omega_e_schedule",
];

fn toml_f64(v: &toml::Value, key: &str) -> Result<f64> {
    match v {
        toml::Value::Float(f) => Ok(*f),
        toml::Value::Integer(i) => Ok(*i as f64),
        _ => Err(Error::Config(format!("config key '{key}' must be a number"))),
    }
}

fn toml_f64_array(v: &toml::Value, key: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Config(format!("config key '{key}' must be an array of numbers")))?;
    arr.iter().map(|e| toml_f64(e, key)).collect()
}

fn toml_usize(v: &toml::Value, key: &str) -> Result<usize> {
    let i = v
        .as_integer()
        .ok_or_else(|| Error::Config(format!("config key '{key}' must be an integer")))?;
    usize::try_from(i)
        .map_err(|_| Error::Config(format!("config key '{key}' must be non-negative")))
}

fn parse_table(text: &str, what: &str) -> Result<toml::Table> {
    text.parse::<toml::Table>()
        .map_err(|e| Error::Config(format!("failed to parse {what}: {e}")))
}

fn reject_unknown_keys(table: &toml::Table, known: &[&str], what: &str) -> Result<()> {
    let mut unknown: Vec<&str> =
        table.keys().map(String::as_str).filter(|k| !known.contains(k)).collect();
    if unknown.is_empty() {
        return Ok(());
    }
    unknown.sort_unstable();
    Err(Error::Config(format!("unknown {what} key(s): {}", unknown.join(", "))))
}

/// Merges an optional config file with flag overrides (flags win) into a
/// validated [`RunConfig`].
pub fn resolve_config(file: Option<&Path>, ov: &CliOverrides) -> Result<RunConfig> {
    let mut problem: Option<String> = None;
    let mut cfg = RunConfig::new(String::new());

    if let Some(path) = file {
        let text = std::fs::read_to_string(path)?;
        let table = parse_table(&text, &format!("config file {}", path.display()))?;
        reject_unknown_keys(&table, &CONFIG_KEYS, "config")?;
        if let Some(v) = table.get("problem") {
            problem = Some(
                v.as_str()
                    .ok_or_else(|| Error::Config("config key 'problem' must be a string".into()))?
                    .to_string(),
            );
        }
        if let Some(v) = table.get("method") {
            cfg.method = v
                .as_str()
                .ok_or_else(|| Error::Config("config key 'method' must be a string".into()))?
                .parse()?;
        }
        if let Some(v) = table.get("omega") {
            cfg.omega = Some(toml_f64(v, "omega")?);
        }
        if let Some(v) = table.get("omega_e") {
            cfg.omega_e = toml_f64(v, "omega_e")?;
        }
        if let Some(v) = table.get("x0") {
            cfg.x0 = Some(toml_f64_array(v, "x0")?);
        }
        if let Some(v) = table.get("lambda0") {
            cfg.lambda0 = Some(toml_f64_array(v, "lambda0")?);
        }
        if let Some(v) = table.get("outer_tol") {
            cfg.outer_tol = toml_f64(v, "outer_tol")?;
        }
        if let Some(v) = table.get("max_outer") {
            cfg.max_outer = toml_usize(v, "max_outer")?;
        }
        if let Some(v) = table.get("inner_grad_tol") {
            cfg.inner_grad_tol = toml_f64(v, "inner_grad_tol")?;
        }
        if let Some(v) = table.get("inner_max_iters") {
            cfg.inner_max_iters = toml_usize(v, "inner_max_iters")?;
        }
        if let Some(v) = table.get("warm_start") {
            cfg.warm_start = v
                .as_bool()
                .ok_or_else(|| Error::Config("config key 'warm_start' must be a boolean".into()))?;
        }
        if let Some(v) = table.get("out") {
            cfg.out = Some(PathBuf::from(v.as_str().ok_or_else(|| {
                Error::Config("config key 'out' must be a string path".into())
            })?));
        }
        if let Some(v) = table.get("omega_e_schedule") {
            cfg.omega_e_schedule = Some(toml_f64_array(v, "omega_e_schedule")?);
        }
    }

    if let Some(p) = &ov.problem {
        problem = Some(p.clone());
    }
    if let Some(m) = &ov.method {
        cfg.method = m.parse()?;
    }
    if let Some(v) = ov.omega {
        cfg.omega = Some(v);
    }
    if let Some(v) = ov.omega_e {
        cfg.omega_e = v;
    }
    if let Some(v) = ov.outer_tol {
        cfg.outer_tol = v;
    }
    if let Some(v) = ov.max_outer {
        cfg.max_outer = v;
    }
    if let Some(p) = &ov.out {
        cfg.out = Some(p.clone());
    }
    if let Some(v) = &ov.x0 {
        cfg.x0 = Some(v.clone());
    }
    if let Some(v) = &ov.lambda0 {
        cfg.lambda0 = Some(v.clone());
    }
    if let Some(v) = &ov.schedule {
        cfg.omega_e_schedule = Some(v.clone());
    }

    cfg.problem = problem
        .ok_or_else(|| Error::Config("no problem given (--problem flag or config key)".into()))?;
    Ok(cfg)
}

/// Loads a QP data file: TOML with keys `n`, `m`, `Q` (row-major, length
/// n*n), `q` (length n), `A` (row-major, length m*n), `b` (length m).
pub fn load_qp_file(path: &Path) -> Result<QpData> {
    let text = std::fs::read_to_string(path)?;
    let table = parse_table(&text, &format!("QP data file {}", path.display()))?;
    reject_unknown_keys(&table, &["n", "m", "Q", "q", "A", "b"], "QP data file")?;
    let fetch = |key: &str| {
        table
            .get(key)
            .ok_or_else(|| Error::Config(format!("QP data file is missing key '{key}'")))
    };
    let n = toml_usize(fetch("n")?, "n")?;
    let m = toml_usize(fetch("m")?, "m")?;
    let q_mat = toml_f64_array(fetch("Q")?, "Q")?;
    let q_vec = toml_f64_array(fetch("q")?, "q")?;
    let a_mat = toml_f64_array(fetch("A")?, "A")?;
    let b_vec = toml_f64_array(fetch("b")?, "b")?;
    if q_mat.len() != n * n || a_mat.len() != m * n {
        return Err(Error::Config(format!(
            "QP data file shapes disagree: expected Q of length {} and A of length {}, got {} and {}",
            n * n,
            m * n,
            q_mat.len(),
            a_mat.len()
        )));
    }
    QpData::new(
        DenseMatrix::from_row_major(n, n, q_mat)?,
        DenseVector::from_vec(q_vec)?,
        DenseMatrix::from_row_major(m, n, a_mat)?,
        DenseVector::from_vec(b_vec)?,
    )
}

/// A problem ready to run: evaluators, the QP data when there is one (for
/// oracle comparisons), and the designated start point.
pub struct ResolvedProblem {
    pub problem: NlpProblem,
    pub qp: Option<QpData>,
    pub default_start: DenseVector,
}

impl fmt::Debug for ResolvedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResolvedProblem")
            .field("problem", &self.problem.name())
            .field("n", &self.problem.n())
            .field("m", &self.problem.m())
            .field("is_qp", &self.qp.is_some())
            .finish()
    }
}

/// Resolves a `--problem` value: catalog name first, then a path to a QP
/// data file.
pub fn resolve_problem(name: &str) -> Result<ResolvedProblem> {
    if CATALOG_NAMES.contains(&name) {
        return Ok(ResolvedProblem {
            problem: catalog(name)?,
            qp: catalog_qp(name),
            default_start: catalog_start(name)?,
        });
    }
    let path = Path::new(name);
    if path.is_file() {
        let data = load_qp_file(path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("qp_file");
        let problem = make_qp_problem(stem, &data)?;
        let default_start = DenseVector::zeros(data.n());
        return Ok(ResolvedProblem { problem, qp: Some(data), default_start });
    }
    Err(Error::UnknownProblem(name.into()))
}

fn exit_code_for(status: OuterStatus) -> i32 {
    match status {
        OuterStatus::Converged => 0,
        OuterStatus::MaxOuter => 2,
        OuterStatus::InnerFailure => 3,
    }
}

fn resolve_starts(
    cfg: &RunConfig,
    rp: &ResolvedProblem,
) -> Result<(DenseVector, DenseVector)> {
    let n = rp.problem.n();
    let m = rp.problem.m();
    let x0 = match &cfg.x0 {
        Some(v) if v.len() == n => DenseVector::from_slice(v)?,
        Some(v) => {
            return Err(Error::Config(format!(
                "x0 has length {}, problem '{}' needs {n}",
                v.len(),
                rp.problem.name()
            )))
        }
        None => rp.default_start.clone(),
    };
    let lambda0 = match &cfg.lambda0 {
        Some(v) if v.len() == m => DenseVector::from_slice(v)?,
        Some(v) => {
            return Err(Error::Config(format!(
                "lambda0 has length {}, problem '{}' needs {m}",
                v.len(),
                rp.problem.name()
            )))
        }
        None => DenseVector::zeros(m),
    };
    Ok((x0, lambda0))
}

fn outer_options(cfg: &RunConfig) -> Result<OuterOptions> {
    let omega = match cfg.method {
        // The direct penalty route has no proximal term; omega is unused.
        MethodChoice::Penalty => cfg.omega.unwrap_or(1.0),
        _ => cfg.omega.ok_or_else(|| {
            Error::Config(format!("method '{}' requires --omega", cfg.method))
        })?,
    };
    let mut opts = OuterOptions::new(PenaltyConfig::new(omega, cfg.omega_e)?);
    opts.max_outer = cfg.max_outer;
    opts.outer_tol = cfg.outer_tol;
    opts.warm_start = cfg.warm_start;
    opts.inner.grad_tol = cfg.inner_grad_tol;
    opts.inner.max_iters = cfg.inner_max_iters;
    Ok(opts)
}

/// Result of [`cmd_solve`], exposed for in-process driving.
#[derive(Debug)]
pub struct SolveOutcome {
    pub exit_code: i32,
    pub summary: String,
    pub trace: SolveTrace,
    pub out_path: PathBuf,
}

/// Runs the configured method and writes its CSV trace.
pub fn cmd_solve(cfg: &RunConfig) -> Result<SolveOutcome> {
    let rp = resolve_problem(&cfg.problem)?;
    let (x0, lambda0) = resolve_starts(cfg, &rp)?;
    let opts = outer_options(cfg)?;
    let trace = match cfg.method {
        MethodChoice::Alm => alm_solve(&rp.problem, &x0, &lambda0, &opts)?,
        MethodChoice::Malm => malm_solve(&rp.problem, &x0, &lambda0, &opts)?,
        MethodChoice::MalmRoot => malm_solve_root_form(&rp.problem, &x0, &lambda0, &opts)?,
        MethodChoice::Penalty => penalty_direct_solve(&rp.problem, &x0, &opts)?,
    };
    let out_path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("trace.csv"));
    trace.write_csv(&out_path)?;
    Ok(SolveOutcome {
        exit_code: exit_code_for(trace.status),
        summary: trace.one_line_summary(),
        trace,
        out_path,
    })
}

/// One row of the comparison table.
#[derive(Clone, Debug)]
pub struct CompareRow {
    pub method: Method,
    pub status: OuterStatus,
    pub outer_iters: usize,
    pub inner_iters_total: usize,
    pub max_condition: Option<f64>,
    pub final_upnp_residual: f64,
    pub final_c_norm: f64,
}

/// Result of [`cmd_compare`].
#[derive(Debug)]
pub struct CompareOutcome {
    pub exit_code: i32,
    pub rows: Vec<CompareRow>,
    pub table: String,
    pub out_path: PathBuf,
}

fn compare_row(trace: &SolveTrace, p: &NlpProblem, omega_e: f64) -> Result<CompareRow> {
    Ok(CompareRow {
        method: trace.method,
        status: trace.status,
        outer_iters: trace.records.len(),
        inner_iters_total: trace.total_inner_iters(),
        max_condition: trace.max_condition(),
        final_upnp_residual: upnp_residual(p, &trace.x_final, omega_e)?,
        final_c_norm: p.eval_c(&trace.x_final)?.norm2(),
    })
}

/// Benchmarks the direct penalty solve against the modified scheme on the
/// same problem and `omega_e`, writing a CSV table and returning the rows.
///
/// Requires `omega_e > 0` (both routes target the penalty form). The exit
/// code is the worse of the two statuses.
pub fn cmd_compare(cfg: &RunConfig) -> Result<CompareOutcome> {
    if cfg.omega_e <= 0.0 {
        return Err(Error::Config(format!(
            "compare needs omega_e > 0, got {}",
            cfg.omega_e
        )));
    }
    let rp = resolve_problem(&cfg.problem)?;
    let (x0, lambda0) = resolve_starts(cfg, &rp)?;

    let pen_cfg = RunConfig { method: MethodChoice::Penalty, ..cfg.clone() };
    let pen_opts = outer_options(&pen_cfg)?;
    let malm_cfg = RunConfig { method: MethodChoice::Malm, ..cfg.clone() };
    let malm_opts = outer_options(&malm_cfg)?;

    let pen_trace = penalty_direct_solve(&rp.problem, &x0, &pen_opts)?;
    let malm_trace = malm_solve(&rp.problem, &x0, &lambda0, &malm_opts)?;
    let rows = vec![
        compare_row(&pen_trace, &rp.problem, cfg.omega_e)?,
        compare_row(&malm_trace, &rp.problem, cfg.omega_e)?,
    ];

    let mut csv = String::from(
        "method,status,outer_iters,inner_iters_total,max_condition,final_upnp_residual,final_c_norm\n",
    );
    let mut table = format!(
        "{:<14} {:<13} {:>6} {:>12} {:>12} {:>14} {:>12}\n",
        "method", "status", "outer", "inner_total", "max_cond", "upnp_residual", "c_norm"
    );
    for r in &rows {
        let cond_csv = r.max_condition.map(fmt_float).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.method,
            r.status,
            r.outer_iters,
            r.inner_iters_total,
            cond_csv,
            fmt_float(r.final_upnp_residual),
            fmt_float(r.final_c_norm),
        ));
        let cond_tab = r.max_condition.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        table.push_str(&format!(
            "{:<14} {:<13} {:>6} {:>12} {:>12} {:>14.3e} {:>12.3e}\n",
            r.method.as_str(),
            r.status.as_str(),
            r.outer_iters,
            r.inner_iters_total,
            cond_tab,
            r.final_upnp_residual,
            r.final_c_norm,
        ));
    }
    let out_path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("compare.csv"));
    std::fs::write(&out_path, &csv)?;

    let exit_code = rows.iter().map(|r| exit_code_for(r.status)).max().unwrap_or(0);
    Ok(CompareOutcome { exit_code, rows, table, out_path })
}

/// One row of a continuation sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub omega_e: f64,
    pub status: OuterStatus,
    pub f_val: f64,
    pub c_norm: f64,
    /// `||x_final − x*||_2` against the bi-objective oracle, when the
    /// problem is a QP with a unique limit point.
    pub dist_oracle: Option<f64>,
    pub x_final: DenseVector,
}

/// Result of [`cmd_sweep`].
#[derive(Debug)]
pub struct SweepOutcome {
    pub exit_code: i32,
    pub rows: Vec<SweepRow>,
    pub table: String,
    pub out_path: PathBuf,
}

fn validate_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::Config("sweep needs a non-empty omega_e schedule".into()));
    }
    for v in schedule {
        if !(v.is_finite() && *v >= 0.0) {
            return Err(Error::Config(format!(
                "schedule values must be finite and non-negative, got {v}"
            )));
        }
    }
    for w in schedule.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::Config(format!(
                "schedule must be strictly decreasing, got {} before {}",
                w[0], w[1]
            )));
        }
    }
    if schedule[..schedule.len() - 1].contains(&0.0) {
        return Err(Error::Config("omega_e = 0 is only allowed as the final entry".into()));
    }
    Ok(())
}

/// Continuation over a strictly decreasing `omega_e` schedule, warm-starting
/// each solve from the previous `(x, lambda)`. A final `omega_e = 0` entry
/// targets the equality-constrained problem itself.
///
/// Runs the modified scheme (`malm` or `malm-root`); per-row output carries
/// the distance to the bi-objective oracle for QP problems. The exit code
/// is the final solve's status.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<SweepOutcome> {
    let schedule = cfg
        .omega_e_schedule
        .as_deref()
        .ok_or_else(|| Error::Config("sweep needs an omega_e schedule (--schedule or config)".into()))?;
    validate_schedule(schedule)?;
    let solver = match cfg.method {
        MethodChoice::Malm => malm_solve,
        MethodChoice::MalmRoot => malm_solve_root_form,
        other => {
            return Err(Error::Config(format!(
                "sweep drives the modified scheme; method '{other}' is not supported (use malm or malm-root)"
            )))
        }
    };
    let rp = resolve_problem(&cfg.problem)?;
    let (mut x, mut lam) = resolve_starts(cfg, &rp)?;
    // Oracle target, when the problem is a QP with a unique limit.
    let oracle_x = rp.qp.as_ref().and_then(|data| qp_bi_objective_limit(data).ok().map(|s| s.x));

    let mut rows = Vec::with_capacity(schedule.len());
    let mut last_status = OuterStatus::Converged;
    for &omega_e in schedule {
        let step_cfg = RunConfig { omega_e, ..cfg.clone() };
        let opts = outer_options(&step_cfg)?;
        let trace = solver(&rp.problem, &x, &lam, &opts)?;
        x = trace.x_final.clone();
        lam = trace.lambda_final.clone();
        last_status = trace.status;
        let r = trace.final_record();
        rows.push(SweepRow {
            omega_e,
            status: trace.status,
            f_val: r.f_val,
            c_norm: r.c_norm,
            dist_oracle: oracle_x.as_ref().map(|xs| x.sub(xs).norm2()),
            x_final: x.clone(),
        });
    }

    let n = rp.problem.n();
    let mut csv = String::from("omega_e,status,f,c_norm,dist_oracle");
    for j in 0..n {
        csv.push_str(&format!(",x{j}"));
    }
    csv.push('\n');
    let mut table = format!(
        "{:>12} {:<13} {:>14} {:>12} {:>12}\n",
        "omega_e", "status", "f", "c_norm", "dist_oracle"
    );
    for r in &rows {
        let dist_csv = r.dist_oracle.map(fmt_float).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{}",
            fmt_float(r.omega_e),
            r.status,
            fmt_float(r.f_val),
            fmt_float(r.c_norm),
            dist_csv,
        ));
        for j in 0..n {
            csv.push_str(&format!(",{}", fmt_float(r.x_final[j])));
        }
        csv.push('\n');
        let dist_tab = r.dist_oracle.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        table.push_str(&format!(
            "{:>12.3e} {:<13} {:>14.6e} {:>12.3e} {:>12}\n",
            r.omega_e,
            r.status.as_str(),
            r.f_val,
            r.c_norm,
            dist_tab,
        ));
    }
    let out_path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("sweep.csv"));
    std::fs::write(&out_path, &csv)?;

    Ok(SweepOutcome { exit_code: exit_code_for(last_status), rows, table, out_path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::io::Write;

    fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
        let path = dir.path().join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(text.as_bytes()).unwrap();
        path
    }

    #[test]
    fn method_names_parse() {
        assert_eq!("alm".parse::<MethodChoice>().unwrap(), MethodChoice::Alm);
        assert_eq!("malm".parse::<MethodChoice>().unwrap(), MethodChoice::Malm);
        assert_eq!("malm-root".parse::<MethodChoice>().unwrap(), MethodChoice::MalmRoot);
        assert_eq!("penalty".parse::<MethodChoice>().unwrap(), MethodChoice::Penalty);
        assert!("newton".parse::<MethodChoice>().is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(
            &dir,
            "run.toml",
            "problem = \"qp1d\"\nmethod = \"alm\"\nomega = 0.5\nmax_outer = 10\n",
        );
        let ov = CliOverrides {
            omega: Some(0.1),
            method: Some("malm".into()),
            ..Default::default()
        };
        let cfg = resolve_config(Some(&path), &ov).unwrap();
        assert_eq!(cfg.problem, "qp1d");
        assert_eq!(cfg.method, MethodChoice::Malm);
        assert_abs_diff_eq!(cfg.omega.unwrap(), 0.1);
        assert_eq!(cfg.max_outer, 10);
    }

    #[test]
    fn unknown_config_key_is_a_hard_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(&dir, "run.toml", "problem = \"qp1d\"\nomgea = 0.5\n");
        let err = resolve_config(Some(&path), &CliOverrides::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("omgea"), "{msg}");
    }

    #[test]
    fn missing_problem_is_a_config_error() {
        let err = resolve_config(None, &CliOverrides::default()).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn qp_file_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        // qp_overdet written out by hand.
        let path = write_temp(
            &dir,
            "overdet.toml",
            "n = 1\nm = 2\nQ = [1.0]\nq = [-1.0]\nA = [1.0, 1.0]\nb = [1.0, -1.0]\n",
        );
        let data = load_qp_file(&path).unwrap();
        assert_eq!((data.n(), data.m()), (1, 2));
        let rp = resolve_problem(path.to_str().unwrap()).unwrap();
        assert_eq!(rp.problem.name(), "overdet");
        assert!(rp.qp.is_some());
        // Integer literals coerce to floats.
        let path = write_temp(
            &dir,
            "ints.toml",
            "n = 1\nm = 1\nQ = [2]\nq = [0]\nA = [1]\nb = [1]\n",
        );
        assert!(load_qp_file(&path).is_ok());
    }

    #[test]
    fn qp_file_rejects_bad_input() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp(
            &dir,
            "bad_key.toml",
            "n = 1\nm = 1\nQ = [1.0]\nq = [0.0]\nA = [1.0]\nb = [1.0]\nextra = 3\n",
        );
        assert!(load_qp_file(&path).unwrap_err().to_string().contains("extra"));
        let path = write_temp(
            &dir,
            "bad_shape.toml",
            "n = 2\nm = 1\nQ = [1.0]\nq = [0.0, 0.0]\nA = [1.0, 0.0]\nb = [1.0]\n",
        );
        assert!(load_qp_file(&path).is_err());
        let path = write_temp(
            &dir,
            "missing.toml",
            "n = 1\nm = 1\nQ = [1.0]\nq = [0.0]\nA = [1.0]\n",
        );
        assert!(load_qp_file(&path).unwrap_err().to_string().contains("'b'"));
    }

    #[test]
    fn unknown_problem_is_reported_by_name() {
        let err = resolve_problem("nosuch").unwrap_err();
        assert!(err.to_string().contains("unknown problem"));
    }

    #[test]
    fn start_overrides_are_validated() {
        let mut cfg = RunConfig::new("qp1d");
        cfg.method = MethodChoice::Malm;
        cfg.omega = Some(0.1);
        cfg.omega_e = 0.1;
        cfg.x0 = Some(vec![1.0, 2.0]);
        let err = cmd_solve(&cfg).unwrap_err();
        assert!(err.to_string().contains("x0"));
    }

    #[test]
    fn schedule_validation() {
        assert!(validate_schedule(&[]).is_err());
        assert!(validate_schedule(&[0.1, 0.1]).is_err());
        assert!(validate_schedule(&[0.1, 0.2]).is_err());
        assert!(validate_schedule(&[0.1, 0.0, 1e-3]).is_err());
        assert!(validate_schedule(&[f64::NAN]).is_err());
        assert!(validate_schedule(&[0.1, 1e-2, 0.0]).is_ok());
        assert!(validate_schedule(&[1e-1]).is_ok());
    }

    #[test]
    fn omega_is_required_except_for_penalty() {
        let mut cfg = RunConfig::new("qp1d");
        cfg.method = MethodChoice::Malm;
        cfg.omega_e = 0.1;
        assert!(cmd_solve(&cfg).unwrap_err().to_string().contains("omega"));
        let dir = tempfile::tempdir().unwrap();
        cfg.method = MethodChoice::Penalty;
        cfg.out = Some(dir.path().join("t.csv"));
        assert_eq!(cmd_solve(&cfg).unwrap().exit_code, 0);
    }
}
