//! Inner solvers.
//!
//! Two damped-Newton iterations live here:
//!
//! * [`minimize`] — unconstrained minimization of a smooth [`Objective`]
//!   (value / gradient / optional Hessian closures) with Armijo
//!   backtracking. When no Hessian is supplied the curvature model is an
//!   SR1 secant approximation seeded at the identity.
//! * [`solve_root_fk`] — damped Newton on the coupled stationarity system
//!   in `(x, lambda_tilde)` used by the root-form outer iteration:
//!
//!   ```text
//!   F(x, lt) = [ grad_x L(x, lambda_prev + lt)                        ]
//!              [ c(x) + omega_e * lambda_prev + (omega + omega_e) lt  ]
//!   ```
//!
//!   with merit `phi = ||F||^2 / 2` and the exact-Newton slope surrogate
//!   `-2 phi` in the Armijo test.
//!
//! Both report an [`InnerStatus`] instead of erroring on the expected
//! runtime outcomes (iteration cap, stalled line search); hard errors are
//! reserved for contract violations (shapes, non-finite inputs, exhausted
//! damping).

use crate::error::{Error, Result};
use crate::linalg::{
    solve_spd_damped, symmetric_eigen, DenseMatrix, DenseVector, DAMPING_CEILING,
};
use crate::problem::{eval_grad_lagrangian, NlpProblem, PenaltyConfig};

/// Maximum Armijo halvings before the line search is declared stalled.
const MAX_BACKTRACKS: usize = 60;

/// SR1 updates are skipped when `|r.s| <= SR1_SKIP_TOL * ||r|| * ||s||`,
/// the standard guard against exploding rank-one corrections.
const SR1_SKIP_TOL: f64 = 1e-8;

/// Objective value closure: `x -> f(x)`.
pub type ObjValueFn = Box<dyn Fn(&DenseVector) -> Result<f64> + Send + Sync>;
/// Objective gradient closure: `x -> grad f(x)`.
pub type ObjGradFn = Box<dyn Fn(&DenseVector) -> Result<DenseVector> + Send + Sync>;
/// Objective Hessian closure: `x -> hess f(x)` (symmetric n×n).
pub type ObjHessFn = Box<dyn Fn(&DenseVector) -> Result<DenseMatrix> + Send + Sync>;

/// A smooth objective handed to [`minimize`].
///
/// The Hessian is optional; without it the solver falls back to an SR1
/// secant model, so only values and gradients are ever required.
pub struct Objective {
    pub value: ObjValueFn,
    pub gradient: ObjGradFn,
    pub hessian: Option<ObjHessFn>,
}

impl Objective {
    pub fn has_hessian(&self) -> bool {
        self.hessian.is_some()
    }
}

/// Tuning knobs shared by the inner solvers.
#[derive(Clone, Copy, Debug)]
pub struct InnerOptions {
    /// Stop when the gradient (or residual) inf-norm drops to this level.
    pub grad_tol: f64,
    /// Iteration cap; hitting it yields [`InnerStatus::MaxIters`].
    pub max_iters: usize,
    /// Armijo sufficient-decrease constant.
    pub armijo_c: f64,
    /// Step-length multiplier per backtrack.
    pub backtrack_factor: f64,
    /// First non-zero damping value tried when a Newton system is not
    /// positive definite (escalates by 10x up to an internal ceiling).
    pub damping_seed: f64,
}

impl Default for InnerOptions {
    fn default() -> Self {
        Self {
            grad_tol: 1e-9,
            max_iters: 200,
            armijo_c: 1e-4,
            backtrack_factor: 0.5,
            damping_seed: 1e-4,
        }
    }
}

impl InnerOptions {
    fn validate(&self) -> Result<()> {
        if !(self.grad_tol.is_finite() && self.grad_tol > 0.0) {
            return Err(Error::Config(format!("grad_tol must be positive, got {}", self.grad_tol)));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.armijo_c.is_finite() && self.armijo_c > 0.0 && self.armijo_c < 1.0) {
            return Err(Error::Config(format!(
                "armijo_c must lie in (0, 1), got {}",
                self.armijo_c
            )));
        }
        if !(self.backtrack_factor.is_finite()
            && self.backtrack_factor > 0.0
            && self.backtrack_factor < 1.0)
        {
            return Err(Error::Config(format!(
                "backtrack_factor must lie in (0, 1), got {}",
                self.backtrack_factor
            )));
        }
        if !(self.damping_seed.is_finite() && self.damping_seed >= 0.0) {
            return Err(Error::Config(format!(
                "damping_seed must be non-negative, got {}",
                self.damping_seed
            )));
        }
        Ok(())
    }
}

/// How an inner solve ended. These are expected outcomes, not errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerStatus {
    /// Gradient (or residual) inf-norm reached `grad_tol`.
    Converged,
    /// Iteration cap reached first.
    MaxIters,
    /// Armijo backtracking ran out of halvings on a descent direction,
    /// i.e. progress stalled at floating-point resolution.
    LineSearchFailed,
}

/// Result of a [`minimize`] call.
#[derive(Clone, Debug)]
pub struct InnerResult {
    /// Final iterate.
    pub x: DenseVector,
    /// Gradient inf-norm at `x`.
    pub grad_norm: f64,
    /// Accepted Newton steps.
    pub iters: usize,
    pub status: InnerStatus,
    /// Unit-anchored condition estimate of the exact Hessian at `x`
    /// (see [`anchored_condition`]); `None` when the objective carries no
    /// Hessian or the estimate is unavailable (non-PSD extension).
    pub hessian_condition: Option<f64>,
}

/// Result of a [`solve_root_fk`] call.
#[derive(Clone, Debug)]
pub struct RootResult {
    /// Final primal iterate.
    pub x: DenseVector,
    /// Final shifted-multiplier step `lambda_tilde`.
    pub lambda_tilde: DenseVector,
    /// Residual inf-norm `||F(x, lambda_tilde)||_inf`.
    pub residual_norm: f64,
    /// Accepted Newton steps.
    pub iters: usize,
    pub status: InnerStatus,
}

/// Condition estimate of `H` extended by a unit-scale direction:
/// `max(lambda_max, 1) / min(lambda_min, 1)`.
///
/// Anchoring at 1 keeps the figure meaningful in the scalar case (a 1×1
/// matrix always has a plain condition number of 1, hiding how stiff the
/// subproblem actually is against unit-scale perturbations) and comparable
/// across problems of different dimension. Returns `None` when the
/// extended spectrum is not positive or the eigensolve fails.
pub(crate) fn anchored_condition(h: &DenseMatrix) -> Option<f64> {
    let (evals, _) = symmetric_eigen(h).ok()?;
    let lo = evals.as_slice().first().copied()?.min(1.0);
    let hi = evals.as_slice().last().copied()?.max(1.0);
    if lo <= 0.0 {
        return None;
    }
    Some(hi / lo)
}

/// SR1 secant model of the Hessian, seeded at the identity.
struct SecantModel {
    b: DenseMatrix,
}

impl SecantModel {
    fn new(n: usize) -> Self {
        Self { b: DenseMatrix::identity(n) }
    }

    /// Symmetric rank-one update from step `s` and gradient difference `y`.
    fn update(&mut self, s: &DenseVector, y: &DenseVector) {
        let r = y.sub(&self.b.matvec(s));
        let denom = r.dot(s);
        if denom.abs() > SR1_SKIP_TOL * r.norm2() * s.norm2() && denom.is_finite() {
            self.b.rank_one_update(&r, 1.0 / denom);
        }
    }
}

/// Evaluate a trial point during a line search. Non-finite values and
/// non-finite-evaluation errors reject the trial (the step was too long);
/// anything else is a hard error.
fn probe_value(obj: &Objective, x: &DenseVector) -> Result<Option<f64>> {
    match (obj.value)(x) {
        Ok(v) if v.is_finite() => Ok(Some(v)),
        Ok(_) => Ok(None),
        Err(Error::NonFiniteEvaluation(_)) | Err(Error::NonFiniteInput(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Damped-Newton minimization with Armijo backtracking.
///
/// Each iteration solves `(H + tau I) d = -g` with the smallest damping
/// `tau` from `{0, seed, 10 seed, ...}` that yields a positive definite
/// system, then backtracks from a unit step until
/// `f(x + alpha d) <= f(x) + armijo_c * alpha * g.d`. Iteration counts are
/// accepted steps; convergence is checked before each step so an already
/// stationary start reports zero iterations.
pub fn minimize(obj: &Objective, x0: &DenseVector, opts: &InnerOptions) -> Result<InnerResult> {
    opts.validate()?;
    let n = x0.len();
    let mut x = x0.clone();
    let mut fx = (obj.value)(&x)?;
    if !fx.is_finite() {
        return Err(Error::NonFiniteEvaluation(format!("objective value at start is {fx}")));
    }
    let mut g = (obj.gradient)(&x)?;
    if g.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "gradient has length {}, expected {}",
            g.len(),
            n
        )));
    }
    let mut secant = if obj.has_hessian() { None } else { Some(SecantModel::new(n)) };

    let mut iters = 0usize;
    let status = loop {
        if g.norm_inf() <= opts.grad_tol {
            break InnerStatus::Converged;
        }
        if iters >= opts.max_iters {
            break InnerStatus::MaxIters;
        }

        let h = match (&obj.hessian, &secant) {
            (Some(hf), _) => hf(&x)?.symmetrized(),
            (None, Some(model)) => model.b.clone(),
            (None, None) => unreachable!("secant model exists whenever the Hessian is absent"),
        };
        let (d, _tau) = solve_spd_damped(&h, &g, opts.damping_seed)?;
        let slope = g.dot(&d);
        debug_assert!(slope < 0.0, "damped Newton direction must be a descent direction");

        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let xt = x.add_scaled(alpha, &d);
            if let Some(ft) = probe_value(obj, &xt)? {
                if ft <= fx + opts.armijo_c * alpha * slope {
                    accepted = Some((xt, ft));
                    break;
                }
            }
            alpha *= opts.backtrack_factor;
        }
        let Some((xt, ft)) = accepted else {
            break InnerStatus::LineSearchFailed;
        };

        let gt = (obj.gradient)(&xt)?;
        if let Some(model) = &mut secant {
            model.update(&xt.sub(&x), &gt.sub(&g));
        }
        x = xt;
        fx = ft;
        g = gt;
        iters += 1;
    };

    let hessian_condition = match &obj.hessian {
        Some(hf) => hf(&x).ok().and_then(|h| anchored_condition(&h)),
        None => None,
    };
    Ok(InnerResult { grad_norm: g.norm_inf(), x, iters, status, hessian_condition })
}

/// The coupled residual, its pieces, and its merit value at `(x, lt)`.
struct RootPoint {
    f_vec: DenseVector,
    mu: DenseVector,
    merit: f64,
}

fn eval_root_point(
    p: &NlpProblem,
    lambda_prev: &DenseVector,
    cfg: &PenaltyConfig,
    x: &DenseVector,
    lt: &DenseVector,
) -> Result<RootPoint> {
    let mu = lambda_prev.add(lt);
    let grad_l = eval_grad_lagrangian(p, x, &mu)?;
    let c = p.eval_c(x)?;
    let total = cfg.total();
    let mut data = grad_l.to_vec();
    for i in 0..c.len() {
        data.push(c[i] + cfg.omega_e * lambda_prev[i] + total * lt[i]);
    }
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteEvaluation("root residual is non-finite".into()));
    }
    let f_vec = DenseVector::from_vec(data)?;
    let merit = 0.5 * f_vec.norm2_squared();
    Ok(RootPoint { f_vec, mu, merit })
}

/// Damped Newton on the coupled stationarity system.
///
/// Solves `F(x, lt) = 0` where the first block is the Lagrangian gradient
/// at the eliminated multiplier `lambda_prev + lt` and the second block is
/// `c(x) + omega_e * lambda_prev + (omega + omega_e) * lt`. The Newton
/// matrix
///
/// ```text
/// [ H(x, lambda_prev + lt)   -J(x)^T              ]
/// [ J(x)                      (omega + omega_e) I ]
/// ```
///
/// is assembled explicitly and solved with partial-pivot LU; on a singular
/// system the `H` block is damped by escalating `tau`. Steps are globalized
/// by Armijo backtracking on the merit `||F||^2 / 2` using the exact-Newton
/// slope surrogate `-2 phi`. Without an exact Lagrangian Hessian the `H`
/// block is an SR1 secant model (reset to the identity once if the line
/// search stalls, since a poor secant block can destroy the descent
/// property that the exact Jacobian guarantees).
pub fn solve_root_fk(
    p: &NlpProblem,
    lambda_prev: &DenseVector,
    cfg: &PenaltyConfig,
    x0: &DenseVector,
    lambda_tilde0: &DenseVector,
    opts: &InnerOptions,
) -> Result<RootResult> {
    opts.validate()?;
    let (n, m) = (p.n(), p.m());
    if x0.len() != n || lambda_tilde0.len() != m || lambda_prev.len() != m {
        return Err(Error::ShapeMismatch(format!(
            "solve_root_fk on '{}': got x0 len {}, lambda_tilde0 len {}, lambda_prev len {}, expected n={n}, m={m}",
            p.name(),
            x0.len(),
            lambda_tilde0.len(),
            lambda_prev.len()
        )));
    }
    let total = cfg.total();

    let mut x = x0.clone();
    let mut lt = lambda_tilde0.clone();
    let mut point = eval_root_point(p, lambda_prev, cfg, &x, &lt)?;
    let mut secant = if p.has_hessian() { None } else { Some(SecantModel::new(n)) };
    let mut secant_reset_done = false;

    let mut iters = 0usize;
    let status = loop {
        if point.f_vec.norm_inf() <= opts.grad_tol {
            break InnerStatus::Converged;
        }
        if iters >= opts.max_iters {
            break InnerStatus::MaxIters;
        }

        let h = match (p.has_hessian(), &secant) {
            (true, _) => match p.eval_hess_lagrangian(&x, &point.mu) {
                Some(res) => res?.symmetrized(),
                None => unreachable!("has_hessian() guarantees an evaluator"),
            },
            (false, Some(model)) => model.b.clone(),
            (false, None) => unreachable!("secant model exists whenever the Hessian is absent"),
        };
        let j = p.eval_jac_c(&x)?;

        // Solve the Newton system, damping the H block if LU reports a
        // singular matrix.
        let rhs = point.f_vec.scaled(-1.0);
        let mut tau = 0.0;
        let d = loop {
            let mut mat = DenseMatrix::zeros(n + m, n + m);
            let h_damped = if tau > 0.0 { h.plus_scaled_identity(tau) } else { h.clone() };
            mat.set_block(0, 0, &h_damped);
            mat.set_block(0, n, &j.transpose().scaled(-1.0));
            mat.set_block(n, 0, &j);
            mat.set_block(n, n, &DenseMatrix::identity(m).scaled(total));
            match crate::linalg::lu_solve(&mat, &rhs) {
                Ok(step) if step.is_finite() => break step,
                Ok(_) | Err(Error::SingularSystem) => {
                    let next = if tau == 0.0 { opts.damping_seed } else { tau * 10.0 };
                    if next <= tau || next == 0.0 || next > DAMPING_CEILING {
                        return Err(Error::SingularSystem);
                    }
                    tau = next;
                }
                Err(e) => return Err(e),
            }
        };
        let dx = DenseVector::from_slice(&d.as_slice()[..n])?;
        let dlt = DenseVector::from_slice(&d.as_slice()[n..])?;

        // Armijo on the merit with the exact-Newton slope surrogate -2 phi:
        // accept when phi_trial <= (1 - 2 c alpha) phi.
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let xt = x.add_scaled(alpha, &dx);
            let ltt = lt.add_scaled(alpha, &dlt);
            match eval_root_point(p, lambda_prev, cfg, &xt, &ltt) {
                Ok(trial) => {
                    if trial.merit
                        <= (1.0 - 2.0 * opts.armijo_c * alpha) * point.merit
                    {
                        accepted = Some((xt, ltt, trial));
                        break;
                    }
                }
                Err(Error::NonFiniteEvaluation(_)) | Err(Error::NonFiniteInput(_)) => {}
                Err(e) => return Err(e),
            }
            alpha *= opts.backtrack_factor;
        }
        let Some((xt, ltt, trial)) = accepted else {
            if let (Some(model), false) = (&mut secant, secant_reset_done) {
                *model = SecantModel::new(n);
                secant_reset_done = true;
                continue;
            }
            break InnerStatus::LineSearchFailed;
        };

        if let Some(model) = &mut secant {
            // Gradient difference at the *new* multiplier so the secant
            // tracks the Lagrangian Hessian in x alone.
            let g_old = eval_grad_lagrangian(p, &x, &trial.mu)?;
            let g_new = eval_grad_lagrangian(p, &xt, &trial.mu)?;
            model.update(&xt.sub(&x), &g_new.sub(&g_old));
        }
        x = xt;
        lt = ltt;
        point = trial;
        iters += 1;
    };

    Ok(RootResult {
        residual_norm: point.f_vec.norm_inf(),
        x,
        lambda_tilde: lt,
        iters,
        status,
    })
}
