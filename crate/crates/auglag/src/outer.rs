//! Outer iterations and iterate traces.
//!
//! Four solve routes share the trace/record machinery:
//!
//! * [`alm_solve`] — the classical augmented Lagrangian reference scheme:
//!   minimize `L(x, lambda) + ||c||^2 / (2 omega)`, then
//!   `lambda <- lambda - c(x)/omega`, stopping on the KKT residual.
//! * [`malm_solve`] — the modified scheme: minimize
//!   `L(x, lambda) + ||c + omega_e lambda||^2 / (2 (omega + omega_e))`, then
//!   `lambda <- lambda + lambda_tilde` with
//!   `lambda_tilde = -(c + omega_e lambda) / (omega + omega_e)`. For
//!   `omega_e > 0` it stops on the penalty-form stationarity residual; at
//!   `omega_e = 0` every formula degenerates to the ALM one and the two
//!   routes produce identical iterates.
//! * [`malm_solve_root_form`] — same outer updates, but each subproblem is
//!   solved as a coupled root-finding problem in `(x, lambda_tilde)`
//!   (see [`crate::inner::solve_root_fk`]).
//! * [`penalty_direct_solve`] — one unconstrained minimization of
//!   `f + ||c||^2 / (2 omega_e)`, the brute-force baseline the modified
//!   scheme is meant to replace when `omega_e` is small.
//!
//! Every route returns a [`SolveTrace`] whose per-iteration records carry
//! the objective, constraint norms, inner work, a subproblem conditioning
//! estimate, and the route's terminal residual; [`SolveTrace::to_csv`]
//! serializes them deterministically (17 significant digits, stable column
//! order) so repeated runs are byte-identical.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::inner::{
    anchored_condition, minimize, solve_root_fk, InnerOptions, InnerResult, InnerStatus,
    Objective,
};
use crate::linalg::{DenseMatrix, DenseVector};
use crate::problem::{NlpProblem, PenaltyConfig};

/// Which outer route produced a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Alm,
    MalmSub,
    MalmRoot,
    PenaltyDirect,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Alm => "ALM",
            Method::MalmSub => "MALM_Sub",
            Method::MalmRoot => "MALM_Root",
            Method::PenaltyDirect => "PenaltyDirect",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How an outer solve ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterStatus {
    /// Terminal residual reached `outer_tol`.
    Converged,
    /// Outer iteration cap reached first.
    MaxOuter,
    /// An inner solve stopped without converging; the trace ends at the
    /// offending iteration.
    InnerFailure,
}

impl OuterStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            OuterStatus::Converged => "Converged",
            OuterStatus::MaxOuter => "MaxOuter",
            OuterStatus::InnerFailure => "InnerFailure",
        }
    }
}

impl fmt::Display for OuterStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One outer iteration's worth of diagnostics.
#[derive(Clone, Debug)]
pub struct IterateRecord {
    /// Outer iteration index, starting at 1.
    pub k: usize,
    /// Primal iterate `x_k`.
    pub x: DenseVector,
    /// Multiplier after this iteration's update, `lambda_k`.
    pub lambda: DenseVector,
    /// Objective `f(x_k)`.
    pub f_val: f64,
    /// `||c(x_k)||_2`.
    pub c_norm: f64,
    /// `||c(x_k) + omega_e lambda_{k-1}||_2`, the shifted feasibility the
    /// modified update drives to zero (equals `c_norm` when `omega_e = 0`).
    pub shifted_c_norm: f64,
    /// Inner iterations spent on this subproblem.
    pub inner_iters: usize,
    /// Unit-anchored condition estimate of the subproblem Hessian at
    /// `x_k`; `None` when no exact Hessian is available.
    pub subproblem_condition: Option<f64>,
    /// The route's terminal residual at `(x_k, lambda_k)`: KKT for ALM
    /// (and `omega_e = 0`), penalty-form stationarity otherwise.
    pub terminal_residual: f64,
}

/// Full history of one outer solve.
#[derive(Clone, Debug)]
pub struct SolveTrace {
    pub method: Method,
    pub status: OuterStatus,
    pub records: Vec<IterateRecord>,
    pub x_final: DenseVector,
    pub lambda_final: DenseVector,
}

/// Floats in CSV output carry 17 significant digits so values round-trip
/// exactly and reruns are byte-identical.
pub(crate) fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_x_short(x: &DenseVector) -> String {
    let parts: Vec<String> = if x.len() <= 6 {
        x.iter().map(|v| format!("{v:.6}")).collect()
    } else {
        let mut parts: Vec<String> = x.iter().take(4).map(|v| format!("{v:.6}")).collect();
        parts.push(format!("... ({} entries)", x.len()));
        parts
    };
    parts.join(", ")
}

impl SolveTrace {
    /// Deterministic CSV rendering: a comment line naming the method and
    /// final status, a fixed header, then one row per outer iteration.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# method={} status={}\n", self.method, self.status));
        out.push_str("k,f,c_norm,shifted_c_norm,inner_iters,cond,residual\n");
        for r in &self.records {
            let cond = r.subproblem_condition.map(fmt_float).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.k,
                fmt_float(r.f_val),
                fmt_float(r.c_norm),
                fmt_float(r.shifted_c_norm),
                r.inner_iters,
                cond,
                fmt_float(r.terminal_residual),
            ));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn total_inner_iters(&self) -> usize {
        self.records.iter().map(|r| r.inner_iters).sum()
    }

    /// Largest recorded subproblem condition estimate, if any iteration
    /// produced one.
    pub fn max_condition(&self) -> Option<f64> {
        self.records
            .iter()
            .filter_map(|r| r.subproblem_condition)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }

    pub fn final_record(&self) -> &IterateRecord {
        self.records.last().expect("a solve trace always has at least one record")
    }

    /// Compact single-line report for terminal output.
    pub fn one_line_summary(&self) -> String {
        let r = self.final_record();
        format!(
            "{}: status={} outer={} inner_total={} f={:.6e} ||c||={:.3e} residual={:.3e} x_final=[{}]",
            self.method,
            self.status,
            self.records.len(),
            self.total_inner_iters(),
            r.f_val,
            r.c_norm,
            r.terminal_residual,
            fmt_x_short(&self.x_final),
        )
    }
}

/// Options shared by all outer routes.
#[derive(Clone, Copy, Debug)]
pub struct OuterOptions {
    /// Penalty split `(omega, omega_e)`.
    pub cfg: PenaltyConfig,
    /// Outer iteration cap.
    pub max_outer: usize,
    /// Stop when the terminal residual drops to this level.
    pub outer_tol: f64,
    /// Inner solver options applied to every subproblem.
    pub inner: InnerOptions,
    /// Start each subproblem from the previous iterate (`true`, default)
    /// or from the caller's `x0` every time.
    pub warm_start: bool,
    /// Per-outer-iteration multiplier on the inner gradient tolerance
    /// (`1.0` keeps it fixed; values below one tighten subproblems as the
    /// outer iteration proceeds).
    pub inner_tol_shrink: f64,
}

impl OuterOptions {
    pub fn new(cfg: PenaltyConfig) -> Self {
        Self {
            cfg,
            max_outer: 50,
            outer_tol: 1e-8,
            inner: InnerOptions::default(),
            warm_start: true,
            inner_tol_shrink: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_outer == 0 {
            return Err(Error::Config("max_outer must be at least 1".into()));
        }
        if !(self.outer_tol.is_finite() && self.outer_tol > 0.0) {
            return Err(Error::Config(format!(
                "outer_tol must be positive, got {}",
                self.outer_tol
            )));
        }
        if !(self.inner_tol_shrink.is_finite()
            && self.inner_tol_shrink > 0.0
            && self.inner_tol_shrink <= 1.0)
        {
            return Err(Error::Config(format!(
                "inner_tol_shrink must lie in (0, 1], got {}",
                self.inner_tol_shrink
            )));
        }
        if self.outer_tol < self.inner.grad_tol {
            log::warn!(
                "outer_tol {:e} is tighter than the inner grad_tol {:e}; outer convergence may stall at the inner tolerance",
                self.outer_tol,
                self.inner.grad_tol
            );
        }
        Ok(())
    }

    /// Inner options for outer iteration `k` (1-based), applying the
    /// tightening multiplier.
    fn inner_for(&self, k: usize) -> InnerOptions {
        InnerOptions {
            grad_tol: self.inner.grad_tol * self.inner_tol_shrink.powi(k as i32 - 1),
            ..self.inner
        }
    }
}

/// Eliminated multiplier step
/// `lambda_tilde = -(c + omega_e lambda_prev) / (omega + omega_e)`.
pub fn eliminate_lambda_tilde(
    c_val: &DenseVector,
    lambda_prev: &DenseVector,
    cfg: &PenaltyConfig,
) -> Result<DenseVector> {
    if c_val.len() != lambda_prev.len() {
        return Err(Error::ShapeMismatch(format!(
            "eliminate_lambda_tilde: c has length {}, lambda has length {}",
            c_val.len(),
            lambda_prev.len()
        )));
    }
    let shifted = c_val.add_scaled(cfg.omega_e, lambda_prev);
    Ok(shifted.scaled(-1.0 / cfg.total()))
}

/// Multiplier update `lambda_k = lambda_prev + lambda_tilde`.
pub fn dual_update(
    lambda_prev: &DenseVector,
    c_val: &DenseVector,
    cfg: &PenaltyConfig,
) -> Result<DenseVector> {
    Ok(lambda_prev.add(&eliminate_lambda_tilde(c_val, lambda_prev, cfg)?))
}

/// KKT residual `max(||grad_x L(x, lambda)||_inf, ||c(x)||_inf)`.
pub fn kkt_residual(p: &NlpProblem, x: &DenseVector, lambda: &DenseVector) -> Result<f64> {
    let grad_l = crate::problem::eval_grad_lagrangian(p, x, lambda)?;
    let c = p.eval_c(x)?;
    Ok(grad_l.norm_inf().max(c.norm_inf()))
}

/// Stationarity residual of the penalty form
/// `min f + ||c||^2 / (2 omega_e)`, namely
/// `||grad f + J^T c / omega_e||_inf`. Requires `omega_e > 0`.
pub fn upnp_residual(p: &NlpProblem, x: &DenseVector, omega_e: f64) -> Result<f64> {
    if !(omega_e.is_finite() && omega_e > 0.0) {
        return Err(Error::Config(format!(
            "upnp_residual needs omega_e > 0, got {omega_e}"
        )));
    }
    let g = p.eval_grad_f(x)?;
    let j = p.eval_jac_c(x)?;
    let c = p.eval_c(x)?;
    Ok(g.add(&j.tr_matvec(&c.scaled(1.0 / omega_e))).norm_inf())
}

/// The modified scheme's subproblem as a standalone [`Objective`]:
///
/// ```text
/// f_k(x)      = L(x, lambda_prev) + ||c(x) + omega_e lambda_prev||^2 / (2 (omega + omega_e))
/// grad f_k(x) = grad f + J^T ( (c + omega_e lambda_prev) / (omega + omega_e) - lambda_prev )
/// hess f_k(x) = hess_x L(x, lambda_prev + lambda_tilde(x)) + J^T J / (omega + omega_e)
/// ```
///
/// The Hessian uses the *eliminated* multiplier, which is what makes a
/// single Newton step on the subproblem equivalent to a Newton step on the
/// coupled root system. With `omega_e = 0` every expression reduces to the
/// classical augmented Lagrangian.
pub fn build_subproblem(
    p: &NlpProblem,
    lambda_prev: &DenseVector,
    cfg: &PenaltyConfig,
) -> Result<Objective> {
    if lambda_prev.len() != p.m() {
        return Err(Error::ShapeMismatch(format!(
            "build_subproblem on '{}': lambda has length {}, expected m={}",
            p.name(),
            lambda_prev.len(),
            p.m()
        )));
    }
    let cfg = *cfg;
    let total = cfg.total();

    let pv = p.clone();
    let lv = lambda_prev.clone();
    let value = Box::new(move |x: &DenseVector| -> Result<f64> {
        let f = pv.eval_f(x)?;
        let c = pv.eval_c(x)?;
        let shifted = c.add_scaled(cfg.omega_e, &lv);
        Ok(f - lv.dot(&c) + 0.5 * shifted.norm2_squared() / total)
    });

    let pg = p.clone();
    let lg = lambda_prev.clone();
    let gradient = Box::new(move |x: &DenseVector| -> Result<DenseVector> {
        let g = pg.eval_grad_f(x)?;
        let c = pg.eval_c(x)?;
        let j = pg.eval_jac_c(x)?;
        let shifted = c.add_scaled(cfg.omega_e, &lg);
        let w = shifted.scaled(1.0 / total).sub(&lg);
        Ok(g.add(&j.tr_matvec(&w)))
    });

    let hessian = if p.has_hessian() {
        let ph = p.clone();
        let lh = lambda_prev.clone();
        Some(Box::new(move |x: &DenseVector| -> Result<DenseMatrix> {
            let c = ph.eval_c(x)?;
            let j = ph.eval_jac_c(x)?;
            let lt = eliminate_lambda_tilde(&c, &lh, &cfg)?;
            let mu = lh.add(&lt);
            let h = ph
                .eval_hess_lagrangian(x, &mu)
                .expect("has_hessian() guarantees an evaluator")?;
            Ok(h.add(&j.gram().scaled(1.0 / total)))
        }) as _)
    } else {
        None
    };

    Ok(Objective { value, gradient, hessian })
}

fn check_outer_inputs(
    p: &NlpProblem,
    x0: &DenseVector,
    lambda0: &DenseVector,
    opts: &OuterOptions,
) -> Result<()> {
    opts.validate()?;
    if x0.len() != p.n() || lambda0.len() != p.m() {
        return Err(Error::ShapeMismatch(format!(
            "outer solve on '{}': got x0 len {}, lambda0 len {}, expected n={}, m={}",
            p.name(),
            x0.len(),
            lambda0.len(),
            p.n(),
            p.m()
        )));
    }
    Ok(())
}

fn status_from_inner(status: InnerStatus) -> Option<OuterStatus> {
    match status {
        InnerStatus::Converged => None,
        InnerStatus::MaxIters | InnerStatus::LineSearchFailed => Some(OuterStatus::InnerFailure),
    }
}

/// Classical augmented Lagrangian method.
///
/// Subproblem `min_x L(x, lambda) + ||c(x)||^2 / (2 omega)`, multiplier
/// update `lambda <- lambda - c(x)/omega`, stopping on the KKT residual.
/// `opts.cfg.omega_e` is ignored: ALM addresses the equality-constrained
/// problem itself.
pub fn alm_solve(
    p: &NlpProblem,
    x0: &DenseVector,
    lambda0: &DenseVector,
    opts: &OuterOptions,
) -> Result<SolveTrace> {
    check_outer_inputs(p, x0, lambda0, opts)?;
    let omega = opts.cfg.omega;
    let mut x = x0.clone();
    let mut lam = lambda0.clone();
    let mut records = Vec::new();
    let mut status = OuterStatus::MaxOuter;

    for k in 1..=opts.max_outer {
        let pv = p.clone();
        let lv = lam.clone();
        let value = Box::new(move |x: &DenseVector| -> Result<f64> {
            let f = pv.eval_f(x)?;
            let c = pv.eval_c(x)?;
            Ok(f - lv.dot(&c) + 0.5 * c.norm2_squared() / omega)
        });
        let pg = p.clone();
        let lg = lam.clone();
        let gradient = Box::new(move |x: &DenseVector| -> Result<DenseVector> {
            let g = pg.eval_grad_f(x)?;
            let c = pg.eval_c(x)?;
            let j = pg.eval_jac_c(x)?;
            let w = c.scaled(1.0 / omega).sub(&lg);
            Ok(g.add(&j.tr_matvec(&w)))
        });
        let hessian = if p.has_hessian() {
            let ph = p.clone();
            let lh = lam.clone();
            Some(Box::new(move |x: &DenseVector| -> Result<DenseMatrix> {
                let c = ph.eval_c(x)?;
                let j = ph.eval_jac_c(x)?;
                let lt = c.scaled(-1.0 / omega);
                let mu = lh.add(&lt);
                let h = ph
                    .eval_hess_lagrangian(x, &mu)
                    .expect("has_hessian() guarantees an evaluator")?;
                Ok(h.add(&j.gram().scaled(1.0 / omega)))
            }) as _)
        } else {
            None
        };
        let obj = Objective { value, gradient, hessian };

        let start = if opts.warm_start { &x } else { x0 };
        let inner: InnerResult = minimize(&obj, start, &opts.inner_for(k))?;
        x = inner.x.clone();

        let f_val = p.eval_f(&x)?;
        let c = p.eval_c(&x)?;
        let c_norm = c.norm2();
        let lt = c.scaled(-1.0 / omega);
        let lam_new = lam.add(&lt);
        let residual = kkt_residual(p, &x, &lam_new)?;

        records.push(IterateRecord {
            k,
            x: x.clone(),
            lambda: lam_new.clone(),
            f_val,
            c_norm,
            shifted_c_norm: c_norm,
            inner_iters: inner.iters,
            subproblem_condition: inner.hessian_condition,
            terminal_residual: residual,
        });
        lam = lam_new;

        if let Some(fail) = status_from_inner(inner.status) {
            status = fail;
            break;
        }
        if residual <= opts.outer_tol {
            status = OuterStatus::Converged;
            break;
        }
    }

    Ok(SolveTrace { method: Method::Alm, status, records, x_final: x, lambda_final: lam })
}

/// Modified augmented Lagrangian method, subproblem route.
///
/// Per iteration: minimize the shifted subproblem from
/// [`build_subproblem`], update `lambda` via [`dual_update`], and stop on
/// the penalty-form stationarity residual (`omega_e > 0`) or the KKT
/// residual (`omega_e = 0`, where the route coincides with ALM).
pub fn malm_solve(
    p: &NlpProblem,
    x0: &DenseVector,
    lambda0: &DenseVector,
    opts: &OuterOptions,
) -> Result<SolveTrace> {
    check_outer_inputs(p, x0, lambda0, opts)?;
    let cfg = opts.cfg;
    let mut x = x0.clone();
    let mut lam = lambda0.clone();
    let mut records = Vec::new();
    let mut status = OuterStatus::MaxOuter;

    for k in 1..=opts.max_outer {
        let obj = build_subproblem(p, &lam, &cfg)?;
        let start = if opts.warm_start { &x } else { x0 };
        let inner: InnerResult = minimize(&obj, start, &opts.inner_for(k))?;
        x = inner.x.clone();

        let f_val = p.eval_f(&x)?;
        let c = p.eval_c(&x)?;
        let c_norm = c.norm2();
        let shifted_c_norm = c.add_scaled(cfg.omega_e, &lam).norm2();
        let lam_new = dual_update(&lam, &c, &cfg)?;
        let residual = if cfg.omega_e > 0.0 {
            upnp_residual(p, &x, cfg.omega_e)?
        } else {
            kkt_residual(p, &x, &lam_new)?
        };

        records.push(IterateRecord {
            k,
            x: x.clone(),
            lambda: lam_new.clone(),
            f_val,
            c_norm,
            shifted_c_norm,
            inner_iters: inner.iters,
            subproblem_condition: inner.hessian_condition,
            terminal_residual: residual,
        });
        lam = lam_new;

        if let Some(fail) = status_from_inner(inner.status) {
            status = fail;
            break;
        }
        if residual <= opts.outer_tol {
            status = OuterStatus::Converged;
            break;
        }
    }

    Ok(SolveTrace { method: Method::MalmSub, status, records, x_final: x, lambda_final: lam })
}

/// Modified augmented Lagrangian method, root-finding route.
///
/// Identical outer updates to [`malm_solve`], but each subproblem is
/// solved as the coupled system `F(x, lambda_tilde) = 0` instead of an
/// eliminated minimization. The two routes agree on the solutions they
/// find; this one exposes the multiplier step directly and is the natural
/// home for nonsymmetric step control.
pub fn malm_solve_root_form(
    p: &NlpProblem,
    x0: &DenseVector,
    lambda0: &DenseVector,
    opts: &OuterOptions,
) -> Result<SolveTrace> {
    check_outer_inputs(p, x0, lambda0, opts)?;
    let cfg = opts.cfg;
    let total = cfg.total();
    let mut x = x0.clone();
    let mut lam = lambda0.clone();
    let mut records = Vec::new();
    let mut status = OuterStatus::MaxOuter;

    for k in 1..=opts.max_outer {
        let start = if opts.warm_start { &x } else { x0 };
        let root =
            solve_root_fk(p, &lam, &cfg, start, &DenseVector::zeros(p.m()), &opts.inner_for(k))?;
        x = root.x.clone();

        let f_val = p.eval_f(&x)?;
        let c = p.eval_c(&x)?;
        let c_norm = c.norm2();
        let shifted_c_norm = c.add_scaled(cfg.omega_e, &lam).norm2();
        let lam_new = lam.add(&root.lambda_tilde);
        let residual = if cfg.omega_e > 0.0 {
            upnp_residual(p, &x, cfg.omega_e)?
        } else {
            kkt_residual(p, &x, &lam_new)?
        };

        // Condition estimate of the equivalent subproblem Hessian at the
        // root, for parity with the subproblem route's diagnostics.
        let subproblem_condition = if p.has_hessian() {
            let h = p
                .eval_hess_lagrangian(&x, &lam_new)
                .expect("has_hessian() guarantees an evaluator")?;
            let j = p.eval_jac_c(&x)?;
            anchored_condition(&h.add(&j.gram().scaled(1.0 / total)))
        } else {
            None
        };

        records.push(IterateRecord {
            k,
            x: x.clone(),
            lambda: lam_new.clone(),
            f_val,
            c_norm,
            shifted_c_norm,
            inner_iters: root.iters,
            subproblem_condition,
            terminal_residual: residual,
        });
        lam = lam_new;

        if let Some(fail) = status_from_inner(root.status) {
            status = fail;
            break;
        }
        if residual <= opts.outer_tol {
            status = OuterStatus::Converged;
            break;
        }
    }

    Ok(SolveTrace { method: Method::MalmRoot, status, records, x_final: x, lambda_final: lam })
}

/// Direct single-shot minimization of the penalty form
/// `f(x) + ||c(x)||^2 / (2 omega_e)`.
///
/// This is the baseline whose conditioning degrades like `1/omega_e`; it
/// reuses the subproblem machinery with a zero multiplier and the whole
/// penalty weight in the quadratic term. Requires `omega_e > 0`.
pub fn penalty_direct_solve(
    p: &NlpProblem,
    x0: &DenseVector,
    opts: &OuterOptions,
) -> Result<SolveTrace> {
    let zeros_m = DenseVector::zeros(p.m());
    check_outer_inputs(p, x0, &zeros_m, opts)?;
    let omega_e = opts.cfg.omega_e;
    if omega_e <= 0.0 {
        return Err(Error::Config(format!(
            "penalty_direct_solve needs omega_e > 0, got {omega_e}"
        )));
    }
    // The penalty objective is the lambda = 0 subproblem with the entire
    // weight in the omega slot.
    let pen_cfg = PenaltyConfig::new(omega_e, 0.0)?;
    let obj = build_subproblem(p, &zeros_m, &pen_cfg)?;
    let inner: InnerResult = minimize(&obj, x0, &opts.inner)?;
    let x = inner.x.clone();

    let f_val = p.eval_f(&x)?;
    let c_norm = p.eval_c(&x)?.norm2();
    let residual = upnp_residual(p, &x, omega_e)?;

    let status = match status_from_inner(inner.status) {
        Some(fail) => fail,
        None if residual <= opts.outer_tol => OuterStatus::Converged,
        None => OuterStatus::MaxOuter,
    };
    let records = vec![IterateRecord {
        k: 1,
        x: x.clone(),
        lambda: zeros_m.clone(),
        f_val,
        c_norm,
        shifted_c_norm: c_norm,
        inner_iters: inner.iters,
        subproblem_condition: inner.hessian_condition,
        terminal_residual: residual,
    }];

    Ok(SolveTrace {
        method: Method::PenaltyDirect,
        status,
        records,
        x_final: x,
        lambda_final: zeros_m,
    })
}
