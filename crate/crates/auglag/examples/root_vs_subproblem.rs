//! The two MALM routes solve the same sequence of subproblems.
//!
//! The subproblem route eliminates the dual increment `lambda_tilde` and
//! minimizes a shifted augmented Lagrangian in `x` alone; the root route
//! keeps `(x, lambda_tilde)` coupled and drives the stationarity system
//! `F_k` to zero with Newton steps on a least-squares merit. Both walk to
//! the same iterates — this example runs them side by side on the small
//! two-state control problem and prints the distance at every outer
//! iteration.
//!
//! ```bash
//! cargo run --example root_vs_subproblem
//! ```

use auglag::linalg::DenseVector;
use auglag::outer::{malm_solve, malm_solve_root_form, OuterOptions};
use auglag::problem::{catalog, catalog_start, PenaltyConfig};

fn main() -> auglag::Result<()> {
    let problem = catalog("toy_ocp")?;
    let x0 = catalog_start("toy_ocp")?;
    let lambda0 = DenseVector::zeros(problem.m());

    let opts = OuterOptions::new(PenaltyConfig::new(0.1, 0.1)?);
    let sub = malm_solve(&problem, &x0, &lambda0, &opts)?;
    let root = malm_solve_root_form(&problem, &x0, &lambda0, &opts)?;

    println!("{}", sub.one_line_summary());
    println!("{}", root.one_line_summary());
    println!();
    println!("  k  inner(sub)  inner(root)  |x_sub − x_root|");
    for (s, r) in sub.records.iter().zip(&root.records) {
        let dx = s.x.sub(&r.x).norm_inf();
        println!("{:3}  {:10}  {:11}  {dx:14.3e}", s.k, s.inner_iters, r.inner_iters);
    }

    let dx = sub.x_final.sub(&root.x_final).norm_inf();
    let dl = sub.lambda_final.sub(&root.lambda_final).norm_inf();
    println!();
    println!("final gaps: dx = {dx:.3e}, dlambda = {dl:.3e}");
    Ok(())
}
