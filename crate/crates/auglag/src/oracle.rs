//! Independent reference solutions ("oracles") used to cross-check the
//! iterative routes.
//!
//! Everything here is computed by a *different* path than the solvers under
//! test: direct factorizations of closed-form optimality systems rather
//! than outer/inner iterations. The tests pit the two against each other.
//!
//! * [`qp_upnp_closed_form`] — exact stationary point of the penalty form
//!   `min ½xᵀQx + qᵀx + ||Ax − b||² / (2 omega_e)` via its normal
//!   equations.
//! * [`qp_bi_objective_limit`] — the `omega_e -> 0` limit: among all
//!   minimizers of `||Ax − b||`, the one minimizing the quadratic
//!   objective (lexicographic / bi-objective solution).
//! * [`check_gradient_identity`] — numerical check that the eliminated
//!   subproblem gradient equals the Lagrangian gradient at the eliminated
//!   multiplier.
//! * [`finite_diff_grad`] / [`finite_diff_jacobian`] — central-difference
//!   derivative checks for evaluator hygiene.

use crate::error::{Error, Result};
use crate::linalg::{
    cholesky_solve, lstsq_min_norm, null_space_basis, DenseMatrix, DenseVector,
};
use crate::outer::{build_subproblem, eliminate_lambda_tilde};
use crate::problem::{eval_grad_lagrangian, NlpProblem, PenaltyConfig, QpData};

/// The bi-objective limit solution of a convex QP.
#[derive(Clone, Debug)]
pub struct BiObjectiveSolution {
    /// The limit point: the objective-optimal least-squares solution.
    pub x: DenseVector,
    /// `||A x − b||_2`, the unavoidable constraint violation.
    pub residual_norm: f64,
    /// Objective value `½ xᵀQx + qᵀx` at the limit point.
    pub f_star: f64,
}

/// Exact stationary point of the penalty form of a convex QP:
/// `(Q + AᵀA/omega_e) x = Aᵀb/omega_e − q`.
///
/// Requires `omega_e > 0`; fails with `NotPositiveDefinite` when the
/// penalized Hessian is not SPD (e.g. `Q` merely PSD with a nontrivial
/// common null space with `A`).
pub fn qp_upnp_closed_form(data: &QpData, omega_e: f64) -> Result<DenseVector> {
    if !(omega_e.is_finite() && omega_e > 0.0) {
        return Err(Error::Config(format!(
            "qp_upnp_closed_form needs omega_e > 0, got {omega_e}"
        )));
    }
    let m = data.q_mat.add(&data.a_mat.gram().scaled(1.0 / omega_e));
    let rhs = data
        .a_mat
        .tr_matvec(&data.b_vec)
        .scaled(1.0 / omega_e)
        .sub(&data.q_vec);
    cholesky_solve(&m, &rhs)
}

/// The `omega_e -> 0` limit of the penalty-form solutions: minimize the
/// QP objective over the set of least-squares-optimal points
/// `argmin ||Ax − b||`.
///
/// Construction: take the minimum-norm least-squares solution `x_ls`, a
/// basis `N` for the null space of `A`, and solve the reduced problem
/// `(NᵀQN) z = −Nᵀ(Q x_ls + q)`; the limit point is `x_ls + N z`. When the
/// reduced Hessian is singular the objective does not single out one point
/// and the call fails with [`Error::MultipleMinimizers`].
pub fn qp_bi_objective_limit(data: &QpData) -> Result<BiObjectiveSolution> {
    data.verify_convex()?;
    let x_ls = lstsq_min_norm(&data.a_mat, &data.b_vec)?;
    let nles = null_space_basis(&data.a_mat)?;
    let x = if nles.cols() == 0 {
        x_ls
    } else {
        let qn = data.q_mat.matmul(&nles);
        let reduced = nles.transpose().matmul(&qn).symmetrized();
        let rhs = nles
            .transpose()
            .matvec(&data.q_mat.matvec(&x_ls).add(&data.q_vec))
            .scaled(-1.0);
        let z = cholesky_solve(&reduced, &rhs).map_err(|e| match e {
            Error::NotPositiveDefinite => Error::MultipleMinimizers,
            other => other,
        })?;
        x_ls.add(&nles.matvec(&z))
    };
    let residual_norm = data.a_mat.matvec(&x).sub(&data.b_vec).norm2();
    let f_star = 0.5 * x.dot(&data.q_mat.matvec(&x)) + data.q_vec.dot(&x);
    Ok(BiObjectiveSolution { x, residual_norm, f_star })
}

/// Inf-norm discrepancy between the eliminated subproblem gradient and the
/// Lagrangian gradient at the eliminated multiplier:
///
/// ```text
/// || grad f_k(x)  −  grad_x L(x, lambda_prev + lambda_tilde(x)) ||_inf
/// ```
///
/// The two are algebraically identical; this check catches sign slips and
/// misplaced shifts in either implementation.
pub fn check_gradient_identity(
    p: &NlpProblem,
    x: &DenseVector,
    lambda_prev: &DenseVector,
    cfg: &PenaltyConfig,
) -> Result<f64> {
    let obj = build_subproblem(p, lambda_prev, cfg)?;
    let g_sub = (obj.gradient)(x)?;
    let c = p.eval_c(x)?;
    let lt = eliminate_lambda_tilde(&c, lambda_prev, cfg)?;
    let mu = lambda_prev.add(&lt);
    let g_lag = eval_grad_lagrangian(p, x, &mu)?;
    Ok(g_sub.sub(&g_lag).norm_inf())
}

/// Central-difference gradient of a scalar function.
pub fn finite_diff_grad(
    f: &dyn Fn(&DenseVector) -> Result<f64>,
    x: &DenseVector,
    h: f64,
) -> Result<DenseVector> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Config(format!("finite difference step must be positive, got {h}")));
    }
    let mut g = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let mut hi = x.to_vec();
        let mut lo = x.to_vec();
        hi[i] += h;
        lo[i] -= h;
        let fhi = f(&DenseVector::from_vec(hi)?)?;
        let flo = f(&DenseVector::from_vec(lo)?)?;
        g.push((fhi - flo) / (2.0 * h));
    }
    DenseVector::from_vec(g)
}

/// Central-difference Jacobian of a vector function (rows = outputs).
pub fn finite_diff_jacobian(
    f: &dyn Fn(&DenseVector) -> Result<DenseVector>,
    x: &DenseVector,
    h: f64,
) -> Result<DenseMatrix> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Config(format!("finite difference step must be positive, got {h}")));
    }
    let n = x.len();
    let mut columns: Vec<DenseVector> = Vec::with_capacity(n);
    for i in 0..n {
        let mut hi = x.to_vec();
        let mut lo = x.to_vec();
        hi[i] += h;
        lo[i] -= h;
        let fhi = f(&DenseVector::from_vec(hi)?)?;
        let flo = f(&DenseVector::from_vec(lo)?)?;
        if fhi.len() != flo.len() {
            return Err(Error::ShapeMismatch(
                "finite_diff_jacobian: function output length varies".into(),
            ));
        }
        columns.push(fhi.sub(&flo).scaled(1.0 / (2.0 * h)));
    }
    let rows = columns.first().map_or(0, DenseVector::len);
    let mut jac = DenseMatrix::zeros(rows, n);
    for (j, col) in columns.iter().enumerate() {
        if col.len() != rows {
            return Err(Error::ShapeMismatch(
                "finite_diff_jacobian: function output length varies".into(),
            ));
        }
        for i in 0..rows {
            jac.set(i, j, col[i]);
        }
    }
    Ok(jac)
}
