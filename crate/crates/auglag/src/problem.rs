//! Problem containers: general equality-constrained programs, penalty
//! parameters, quadratic-program data, and a small catalog of test problems.
//!
//! A problem is `min f(x)  s.t.  c(x) = 0` with `x ∈ ℝⁿ`, `c: ℝⁿ → ℝᵐ`.
//! The Lagrangian convention used everywhere in this crate is
//! `L(x, λ) = f(x) − λᵀ c(x)`, so `∇ₓL = ∇f − Jᵀλ` with `J` the constraint
//! Jacobian. Infeasible instances are first-class citizens: the solvers in
//! [`crate::outer`] are built around relaxed penalty formulations that remain
//! meaningful when no feasible point exists.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, DenseMatrix, DenseVector};

/// Objective evaluator: `x ↦ f(x)`.
pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Vector evaluator: `x ↦ v(x)` (gradient or constraint values).
pub type VectorFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
/// Jacobian evaluator: `x ↦ J(x)` with shape m×n.
pub type JacobianFn = Arc<dyn Fn(&[f64]) -> DenseMatrix + Send + Sync>;
/// Lagrangian Hessian evaluator: `(x, λ) ↦ ∇²ₓ L(x, λ)` with shape n×n.
pub type HessianFn = Arc<dyn Fn(&[f64], &[f64]) -> DenseMatrix + Send + Sync>;

// ---------------------------------------------------------------------------
// PenaltyConfig
// ---------------------------------------------------------------------------

/// Penalty parameters shared by the solvers.
///
/// `omega` is the inner (algorithmic) penalty divisor, `omega_e` the outer
/// relaxation divisor that defines the relaxed problem
/// `min f(x) + ‖c(x)‖² / (2 omega_e)`. `omega_e = 0` recovers the classic
/// equality-constrained setting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PenaltyConfig {
    /// Inner penalty divisor; must be strictly positive and finite.
    pub omega: f64,
    /// Outer relaxation divisor; must be nonnegative and finite.
    pub omega_e: f64,
}

impl PenaltyConfig {
    /// Validates `omega > 0`, `omega_e >= 0` (both finite).
    pub fn new(omega: f64, omega_e: f64) -> Result<Self> {
        if !omega.is_finite() || !omega_e.is_finite() {
            return Err(Error::NonFiniteInput("penalty parameters must be finite".into()));
        }
        if omega <= 0.0 {
            return Err(Error::Config(format!("omega must be > 0, got {omega}")));
        }
        if omega_e < 0.0 {
            return Err(Error::Config(format!("omega_e must be >= 0, got {omega_e}")));
        }
        Ok(Self { omega, omega_e })
    }

    /// Combined subproblem divisor `omega + omega_e` (always > 0).
    pub fn total(&self) -> f64 {
        self.omega + self.omega_e
    }
}

// ---------------------------------------------------------------------------
// NlpProblem
// ---------------------------------------------------------------------------

/// An equality-constrained nonlinear program with callable evaluators.
///
/// Evaluators must be pure and deterministic; the accessor methods validate
/// input length and reject non-finite outputs, so solver code downstream can
/// assume well-shaped finite data. The Lagrangian Hessian is optional — the
/// inner solver falls back to a secant approximation when it is absent.
#[derive(Clone)]
pub struct NlpProblem {
    name: String,
    n: usize,
    m: usize,
    f: ScalarFn,
    grad_f: VectorFn,
    c: VectorFn,
    jac_c: JacobianFn,
    hess_lagrangian: Option<HessianFn>,
}

impl std::fmt::Debug for NlpProblem {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("NlpProblem")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("has_hessian", &self.hess_lagrangian.is_some())
            .finish()
    }
}

impl NlpProblem {
    /// Builds a problem from its evaluators. `n` and `m` must be >= 1.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        m: usize,
        f: ScalarFn,
        grad_f: VectorFn,
        c: VectorFn,
        jac_c: JacobianFn,
    ) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Config(format!(
                "problem dimensions must be >= 1 (got n={n}, m={m})"
            )));
        }
        Ok(Self { name: name.into(), n, m, f, grad_f, c, jac_c, hess_lagrangian: None })
    }

    /// Attaches an exact Lagrangian Hessian evaluator.
    pub fn with_hess_lagrangian(mut self, hess: HessianFn) -> Self {
        self.hess_lagrangian = Some(hess);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of equality constraints.
    pub fn m(&self) -> usize {
        self.m
    }

    /// True when an exact Lagrangian Hessian evaluator is attached.
    pub fn has_hessian(&self) -> bool {
        self.hess_lagrangian.is_some()
    }

    fn check_x(&self, x: &DenseVector) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "problem '{}' expects n={}, got x of length {}",
                self.name,
                self.n,
                x.len()
            )));
        }
        Ok(())
    }

    fn check_lambda(&self, lambda: &DenseVector) -> Result<()> {
        if lambda.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "problem '{}' expects m={}, got lambda of length {}",
                self.name,
                self.m,
                lambda.len()
            )));
        }
        Ok(())
    }

    /// Objective value `f(x)`.
    pub fn eval_f(&self, x: &DenseVector) -> Result<f64> {
        self.check_x(x)?;
        let v = (self.f)(x.as_slice());
        if !v.is_finite() {
            return Err(Error::NonFiniteEvaluation(format!("f on '{}' returned {v}", self.name)));
        }
        Ok(v)
    }

    /// Objective gradient `∇f(x)`.
    pub fn eval_grad_f(&self, x: &DenseVector) -> Result<DenseVector> {
        self.check_x(x)?;
        let g = (self.grad_f)(x.as_slice());
        if g.len() != self.n {
            return Err(Error::NonFiniteEvaluation(format!(
                "grad_f on '{}' returned length {}, expected {}",
                self.name,
                g.len(),
                self.n
            )));
        }
        DenseVector::from_vec(g)
            .map_err(|_| Error::NonFiniteEvaluation(format!("grad_f on '{}' is non-finite", self.name)))
    }

    /// Constraint values `c(x)`.
    pub fn eval_c(&self, x: &DenseVector) -> Result<DenseVector> {
        self.check_x(x)?;
        let c = (self.c)(x.as_slice());
        if c.len() != self.m {
            return Err(Error::NonFiniteEvaluation(format!(
                "c on '{}' returned length {}, expected {}",
                self.name,
                c.len(),
                self.m
            )));
        }
        DenseVector::from_vec(c)
            .map_err(|_| Error::NonFiniteEvaluation(format!("c on '{}' is non-finite", self.name)))
    }

    /// Constraint Jacobian `J(x)` (m×n).
    pub fn eval_jac_c(&self, x: &DenseVector) -> Result<DenseMatrix> {
        self.check_x(x)?;
        let j = (self.jac_c)(x.as_slice());
        if j.rows() != self.m || j.cols() != self.n {
            return Err(Error::NonFiniteEvaluation(format!(
                "jac_c on '{}' returned {}x{}, expected {}x{}",
                self.name,
                j.rows(),
                j.cols(),
                self.m,
                self.n
            )));
        }
        if !j.is_finite() {
            return Err(Error::NonFiniteEvaluation(format!("jac_c on '{}' is non-finite", self.name)));
        }
        Ok(j)
    }

    /// Lagrangian Hessian `∇²ₓ L(x, λ)` when an evaluator is attached.
    pub fn eval_hess_lagrangian(
        &self,
        x: &DenseVector,
        lambda: &DenseVector,
    ) -> Option<Result<DenseMatrix>> {
        let hess = self.hess_lagrangian.as_ref()?;
        Some((|| {
            self.check_x(x)?;
            self.check_lambda(lambda)?;
            let h = hess(x.as_slice(), lambda.as_slice());
            if h.rows() != self.n || h.cols() != self.n {
                return Err(Error::NonFiniteEvaluation(format!(
                    "hess_lagrangian on '{}' returned {}x{}, expected {}x{}",
                    self.name,
                    h.rows(),
                    h.cols(),
                    self.n,
                    self.n
                )));
            }
            if !h.is_finite() {
                return Err(Error::NonFiniteEvaluation(format!(
                    "hess_lagrangian on '{}' is non-finite",
                    self.name
                )));
            }
            Ok(h)
        })())
    }
}

/// Lagrangian value `L(x, λ) = f(x) − λᵀ c(x)`.
pub fn eval_lagrangian(p: &NlpProblem, x: &DenseVector, lambda: &DenseVector) -> Result<f64> {
    if lambda.len() != p.m() {
        return Err(Error::ShapeMismatch(format!(
            "eval_lagrangian: expected m={}, got lambda of length {}",
            p.m(),
            lambda.len()
        )));
    }
    let f = p.eval_f(x)?;
    let c = p.eval_c(x)?;
    Ok(f - lambda.dot(&c))
}

/// Lagrangian gradient `∇ₓL(x, λ) = ∇f(x) − J(x)ᵀ λ`.
pub fn eval_grad_lagrangian(
    p: &NlpProblem,
    x: &DenseVector,
    lambda: &DenseVector,
) -> Result<DenseVector> {
    if lambda.len() != p.m() {
        return Err(Error::ShapeMismatch(format!(
            "eval_grad_lagrangian: expected m={}, got lambda of length {}",
            p.m(),
            lambda.len()
        )));
    }
    let g = p.eval_grad_f(x)?;
    let j = p.eval_jac_c(x)?;
    Ok(g.sub(&j.tr_matvec(lambda)))
}

// ---------------------------------------------------------------------------
// Quadratic programs
// ---------------------------------------------------------------------------

/// Data of a linearly constrained quadratic program:
/// `f(x) = ½ xᵀQx + qᵀx`, `c(x) = Ax − b`.
#[derive(Clone, Debug)]
pub struct QpData {
    pub q_mat: DenseMatrix,
    pub q_vec: DenseVector,
    pub a_mat: DenseMatrix,
    pub b_vec: DenseVector,
}

impl QpData {
    /// Validates shapes (`Q` n×n symmetric, `q` length n, `A` m×n, `b`
    /// length m).
    pub fn new(
        q_mat: DenseMatrix,
        q_vec: DenseVector,
        a_mat: DenseMatrix,
        b_vec: DenseVector,
    ) -> Result<Self> {
        let n = q_vec.len();
        let m = b_vec.len();
        if q_mat.rows() != n || q_mat.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "Q is {}x{}, expected {n}x{n}",
                q_mat.rows(),
                q_mat.cols()
            )));
        }
        if !q_mat.is_symmetric() {
            return Err(Error::ShapeMismatch("Q must be symmetric".into()));
        }
        if a_mat.rows() != m || a_mat.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "A is {}x{}, expected {m}x{n}",
                a_mat.rows(),
                a_mat.cols()
            )));
        }
        Ok(Self { q_mat, q_vec, a_mat, b_vec })
    }

    pub fn n(&self) -> usize {
        self.q_vec.len()
    }

    pub fn m(&self) -> usize {
        self.b_vec.len()
    }

    /// Verifies `Q` is positive semidefinite (eigensolve; tolerance scaled to
    /// the matrix norm). Used for catalog instances and oracle preconditions.
    pub fn verify_convex(&self) -> Result<()> {
        let (evals, _) = symmetric_eigen(&self.q_mat)?;
        let scale = self.q_mat.norm_max().max(1.0);
        if evals.len() > 0 && evals[0] < -1e-12 * scale {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(())
    }
}

fn qp_evaluators(data: &QpData) -> (ScalarFn, VectorFn, VectorFn, JacobianFn) {
    let d = data.clone();
    let f: ScalarFn = Arc::new(move |x: &[f64]| {
        let xv = DenseVector::from_raw(x.to_vec());
        0.5 * xv.dot(&d.q_mat.matvec(&xv)) + d.q_vec.dot(&xv)
    });
    let d = data.clone();
    let grad: VectorFn = Arc::new(move |x: &[f64]| {
        let xv = DenseVector::from_raw(x.to_vec());
        d.q_mat.matvec(&xv).add(&d.q_vec).to_vec()
    });
    let d = data.clone();
    let c: VectorFn = Arc::new(move |x: &[f64]| {
        let xv = DenseVector::from_raw(x.to_vec());
        d.a_mat.matvec(&xv).sub(&d.b_vec).to_vec()
    });
    let d = data.clone();
    let jac: JacobianFn = Arc::new(move |_x: &[f64]| d.a_mat.clone());
    (f, grad, c, jac)
}

/// Wraps QP data as an [`NlpProblem`] with exact derivatives; the Lagrangian
/// Hessian is the constant matrix `Q` (constraints are linear).
pub fn make_qp_problem(name: impl Into<String>, data: &QpData) -> Result<NlpProblem> {
    let (f, grad, c, jac) = qp_evaluators(data);
    let q_mat = data.q_mat.clone();
    let hess: HessianFn = Arc::new(move |_x: &[f64], _lambda: &[f64]| q_mat.clone());
    Ok(NlpProblem::new(name, data.n(), data.m(), f, grad, c, jac)?.with_hess_lagrangian(hess))
}

/// Same wrapping as [`make_qp_problem`] but with the Hessian withheld, for
/// exercising secant-based inner solves on otherwise simple problems.
pub fn make_qp_problem_no_hessian(name: impl Into<String>, data: &QpData) -> Result<NlpProblem> {
    let (f, grad, c, jac) = qp_evaluators(data);
    NlpProblem::new(name, data.n(), data.m(), f, grad, c, jac)
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Names of the built-in problems, in catalog order.
pub const CATALOG_NAMES: [&str; 4] = ["qp1d", "qp_overdet", "rosenbrock_circle", "toy_ocp"];

/// QP data for `qp1d`: `min ½x²  s.t.  x = 1`.
pub fn qp1d_data() -> QpData {
    QpData::new(
        DenseMatrix::from_row_major(1, 1, vec![1.0]).unwrap(),
        DenseVector::from_slice(&[0.0]).unwrap(),
        DenseMatrix::from_row_major(1, 1, vec![1.0]).unwrap(),
        DenseVector::from_slice(&[1.0]).unwrap(),
    )
    .unwrap()
}

/// QP data for `qp_overdet`: `min ½x² − x` with the two inconsistent
/// constraints `x = 1` and `x = −1` (no feasible point).
pub fn qp_overdet_data() -> QpData {
    QpData::new(
        DenseMatrix::from_row_major(1, 1, vec![1.0]).unwrap(),
        DenseVector::from_slice(&[-1.0]).unwrap(),
        DenseMatrix::from_row_major(2, 1, vec![1.0, 1.0]).unwrap(),
        DenseVector::from_slice(&[1.0, -1.0]).unwrap(),
    )
    .unwrap()
}

/// QP data for `toy_ocp`: a discretized tracking problem. States
/// `s_1..s_N` and controls `u_1..u_N` (`n = 2N`), tridiagonal coupling from a
/// smoothness term on adjacent states, and the linear dynamics
/// `s_1 = 0`, `s_{i+1} = s_i + h·u_i` (`m = N`), tracking the reference
/// `r_i = sin(2π i / N)`.
pub fn toy_ocp_data() -> QpData {
    const N: usize = 20;
    let n = 2 * N;
    let h = 1.0 / N as f64;
    let gamma = 0.5; // smoothness weight on (s_{i+1} - s_i)^2
    let rho = 0.1; // control effort weight

    // Q: tracking + smoothness on the state block, rho*I on the control block.
    let mut q_mat = DenseMatrix::zeros(n, n);
    for i in 0..N {
        q_mat.set(i, i, 1.0);
        q_mat.set(N + i, N + i, rho);
    }
    for i in 0..N - 1 {
        let d = q_mat.get(i, i);
        q_mat.set(i, i, d + gamma);
        let d = q_mat.get(i + 1, i + 1);
        q_mat.set(i + 1, i + 1, d + gamma);
        q_mat.set(i, i + 1, -gamma);
        q_mat.set(i + 1, i, -gamma);
    }

    // q: -r on the state block (from ½(s-r)² up to a constant), 0 on controls.
    let mut q_vec = vec![0.0; n];
    for (i, q) in q_vec.iter_mut().enumerate().take(N) {
        let r = (2.0 * std::f64::consts::PI * (i + 1) as f64 / N as f64).sin();
        *q = -r;
    }

    // A: initial condition + forward-Euler dynamics; b = 0.
    let mut a_mat = DenseMatrix::zeros(N, n);
    a_mat.set(0, 0, 1.0);
    for i in 0..N - 1 {
        a_mat.set(i + 1, i + 1, 1.0);
        a_mat.set(i + 1, i, -1.0);
        a_mat.set(i + 1, N + i, -h);
    }

    QpData::new(
        q_mat,
        DenseVector::from_vec(q_vec).unwrap(),
        a_mat,
        DenseVector::zeros(N),
    )
    .unwrap()
}

fn rosenbrock_circle() -> NlpProblem {
    let f: ScalarFn = Arc::new(|x: &[f64]| {
        let (a, b) = (x[0], x[1]);
        (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
    });
    let grad: VectorFn = Arc::new(|x: &[f64]| {
        let (a, b) = (x[0], x[1]);
        vec![
            -2.0 * (1.0 - a) - 400.0 * a * (b - a * a),
            200.0 * (b - a * a),
        ]
    });
    let c: VectorFn = Arc::new(|x: &[f64]| vec![x[0] * x[0] + x[1] * x[1] - 1.0]);
    let jac: JacobianFn = Arc::new(|x: &[f64]| {
        DenseMatrix::from_raw(1, 2, vec![2.0 * x[0], 2.0 * x[1]])
    });
    let hess: HessianFn = Arc::new(|x: &[f64], lambda: &[f64]| {
        let (a, b) = (x[0], x[1]);
        let l = lambda[0];
        DenseMatrix::from_raw(
            2,
            2,
            vec![
                2.0 + 1200.0 * a * a - 400.0 * b - 2.0 * l,
                -400.0 * a,
                -400.0 * a,
                200.0 - 2.0 * l,
            ],
        )
    });
    NlpProblem::new("rosenbrock_circle", 2, 1, f, grad, c, jac)
        .unwrap()
        .with_hess_lagrangian(hess)
}

/// Builds a catalog problem by name.
///
/// * `qp1d` — 1 variable, 1 feasible linear constraint; exact Hessian.
/// * `qp_overdet` — 1 variable, 2 inconsistent constraints; exact Hessian.
/// * `rosenbrock_circle` — Rosenbrock objective on the unit circle
///   (nonconvex); exact Hessian.
/// * `toy_ocp` — 40-variable tracking problem with 20 dynamics constraints;
///   exact Hessian.
pub fn catalog(name: &str) -> Result<NlpProblem> {
    match name {
        "qp1d" => {
            let data = qp1d_data();
            data.verify_convex()?;
            make_qp_problem("qp1d", &data)
        }
        "qp_overdet" => {
            let data = qp_overdet_data();
            data.verify_convex()?;
            make_qp_problem("qp_overdet", &data)
        }
        "rosenbrock_circle" => Ok(rosenbrock_circle()),
        "toy_ocp" => {
            let data = toy_ocp_data();
            data.verify_convex()?;
            make_qp_problem("toy_ocp", &data)
        }
        other => Err(Error::UnknownProblem(other.into())),
    }
}

/// QP data behind a catalog problem, when it is a quadratic program.
pub fn catalog_qp(name: &str) -> Option<QpData> {
    match name {
        "qp1d" => Some(qp1d_data()),
        "qp_overdet" => Some(qp_overdet_data()),
        "toy_ocp" => Some(toy_ocp_data()),
        _ => None,
    }
}

/// Designated initial iterate for a catalog problem.
pub fn catalog_start(name: &str) -> Result<DenseVector> {
    match name {
        "qp1d" | "qp_overdet" => Ok(DenseVector::zeros(1)),
        "rosenbrock_circle" => DenseVector::from_slice(&[-1.2, 1.0]),
        "toy_ocp" => Ok(DenseVector::zeros(40)),
        other => Err(Error::UnknownProblem(other.into())),
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
