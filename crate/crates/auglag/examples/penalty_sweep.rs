//! Continuation in `omega_e`: walking to the bi-objective limit.
//!
//! On a problem whose constraints cannot all be met (two incompatible
//! equations in one unknown), the penalty-form solutions `x(omega_e)`
//! approach, as `omega_e` shrinks, the point that minimizes the objective
//! over the set of least-squares-feasible points. This example drives the
//! schedule by hand — warm-starting each stage from the last — and
//! measures the distance to that limit computed independently from the
//! problem data.
//!
//! ```bash
//! cargo run --example penalty_sweep
//! ```

use auglag::linalg::DenseVector;
use auglag::outer::{malm_solve, OuterOptions};
use auglag::oracle::qp_bi_objective_limit;
use auglag::problem::{catalog, catalog_qp, catalog_start, PenaltyConfig};

fn main() -> auglag::Result<()> {
    let problem = catalog("qp_overdet")?;
    let data = catalog_qp("qp_overdet").expect("qp_overdet ships QP data");
    let limit = qp_bi_objective_limit(&data)?;

    println!("constraints: x = 1 and x = −1 (no feasible point)");
    println!("bi-objective limit: x* = {:.12}, ||c(x*)|| = {:.6}", limit.x[0], limit.residual_norm);
    println!();
    println!("   omega_e   status      x(omega_e)        |x − x*|");

    let mut x = catalog_start("qp_overdet")?;
    let mut lambda = DenseVector::zeros(problem.m());
    for omega_e in [1e-2, 1e-4, 1e-6, 1e-8] {
        let mut opts = OuterOptions::new(PenaltyConfig::new(0.1, omega_e)?);
        // Deep penalties need tight subproblems: the termination residual
        // amplifies x-error by ~1/omega_e.
        opts.inner.grad_tol = 1e-12;
        let trace = malm_solve(&problem, &x, &lambda, &opts)?;
        let dist = trace.x_final.sub(&limit.x).norm2();
        println!(
            "{omega_e:10.0e}   {:9}   {:.12}   {dist:12.3e}",
            trace.status.as_str(),
            trace.x_final[0],
        );
        x = trace.x_final;
        lambda = trace.lambda_final;
    }
    println!();
    println!("The distance tracks omega_e linearly all the way down. At the deepest");
    println!("stage the multipliers reach ~1/omega_e and floating-point evaluation of");
    println!("the subproblem objective can no longer certify the requested stationarity,");
    println!("so the status degrades — while x itself stays good to several digits.");
    println!();
    println!("The same sweep is available from the command line:");
    println!("  auglag sweep --problem qp_overdet --method malm --omega 0.1 \\");
    println!("      --schedule 1e-2,1e-4,1e-6,1e-8 --out sweep.csv");
    Ok(())
}
