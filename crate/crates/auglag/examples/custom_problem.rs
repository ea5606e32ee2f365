//! Solving your own problem: evaluators in, iterate trace out.
//!
//! Builds an equality-constrained program from plain closures —
//!
//! ```text
//! min  ½ (x₀² + x₁² + x₂²)
//! s.t. x₀·x₁ = 1
//!      x₀ + x₂ = 2
//! ```
//!
//! — attaches the (optional) Lagrangian Hessian for exact Newton steps,
//! solves it with classical ALM, verifies first-order optimality, and
//! prints the CSV iterate trace that `write_csv` would put on disk.
//!
//! ```bash
//! cargo run --example custom_problem
//! ```

use std::sync::Arc;

use auglag::linalg::{DenseMatrix, DenseVector};
use auglag::outer::{alm_solve, kkt_residual, OuterOptions};
use auglag::problem::{NlpProblem, PenaltyConfig};

fn main() -> auglag::Result<()> {
    let problem = NlpProblem::new(
        "ring_and_plane",
        3,
        2,
        Arc::new(|x: &[f64]| 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])),
        Arc::new(|x: &[f64]| x.to_vec()),
        Arc::new(|x: &[f64]| vec![x[0] * x[1] - 1.0, x[0] + x[2] - 2.0]),
        Arc::new(|x: &[f64]| {
            DenseMatrix::from_row_major(2, 3, vec![x[1], x[0], 0.0, 1.0, 0.0, 1.0])
                .expect("jacobian shape is fixed")
        }),
    )?
    .with_hess_lagrangian(Arc::new(|_x: &[f64], l: &[f64]| {
        // hess f − l₀ hess c₀ − l₁ hess c₁; only c₀ is nonlinear.
        DenseMatrix::from_row_major(
            3,
            3,
            vec![1.0, -l[0], 0.0, -l[0], 1.0, 0.0, 0.0, 0.0, 1.0],
        )
        .expect("hessian shape is fixed")
    }));

    let x0 = DenseVector::from_slice(&[1.5, 0.5, 0.5])?;
    let lambda0 = DenseVector::zeros(problem.m());
    let opts = OuterOptions::new(PenaltyConfig::new(0.1, 0.0)?);
    let trace = alm_solve(&problem, &x0, &lambda0, &opts)?;

    println!("{}", trace.one_line_summary());
    println!(
        "lambda_final = [{:.9}, {:.9}], kkt residual = {:.3e}",
        trace.lambda_final[0],
        trace.lambda_final[1],
        kkt_residual(&problem, &trace.x_final, &trace.lambda_final)?,
    );
    println!();
    println!("--- trace.csv ---");
    print!("{}", trace.to_csv());
    Ok(())
}
