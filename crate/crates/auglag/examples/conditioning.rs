//! Why not just minimize the penalty form directly?
//!
//! For a small target penalty `omega_e` the direct unconstrained problem
//! `min f(x) + ||c(x)||²/(2 omega_e)` carries curvature `1 + 1/omega_e`
//! along the constraint normal, while the MALM subproblems divide by
//! `omega + omega_e` instead — their conditioning is governed by the mild
//! `omega` no matter how small `omega_e` gets. This example solves the 1-d
//! catalog QP both ways at a range of `omega_e` and tabulates the Hessian
//! condition estimates.
//!
//! ```bash
//! cargo run --example conditioning
//! ```

use auglag::linalg::DenseVector;
use auglag::outer::{malm_solve, penalty_direct_solve, OuterOptions};
use auglag::problem::{catalog, catalog_start, PenaltyConfig};

fn main() -> auglag::Result<()> {
    let problem = catalog("qp1d")?;
    let x0 = catalog_start("qp1d")?;
    let lambda0 = DenseVector::zeros(problem.m());
    let omega = 0.1;

    println!("omega = {omega}; condition predictions: direct 1 + 1/omega_e, malm 1 + 1/(omega + omega_e)");
    println!();
    println!("   omega_e   cond(direct)   cond(malm)   x(direct)        x(malm)          malm status");
    for omega_e in [1e-1, 1e-2, 1e-4, 1e-6] {
        let opts = OuterOptions::new(PenaltyConfig::new(omega, omega_e)?);
        let direct = penalty_direct_solve(&problem, &x0, &opts)?;
        let malm = malm_solve(&problem, &x0, &lambda0, &opts)?;
        println!(
            "{omega_e:10.0e}   {:12.4e}   {:10.4e}   {:.12}   {:.12}   {}",
            direct.max_condition().unwrap_or(f64::NAN),
            malm.max_condition().unwrap_or(f64::NAN),
            direct.x_final[0],
            malm.x_final[0],
            malm.status,
        );
    }
    println!();
    println!("Both columns solve the same relaxation; only the subproblems differ.");
    println!("(For the smallest omega_e the default outer tolerance sits below what");
    println!("the termination residual — which amplifies x-error by ~1/omega_e — can");
    println!("certify, so those rows report the iteration cap; their x is still");
    println!("exact to ten digits.)");
    Ok(())
}
