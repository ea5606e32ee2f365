//! Minimal end-to-end solve on the 1-d catalog QP.
//!
//! Minimizes `½x² − x` subject to `x = 1` in its penalty-form relaxation
//! with `omega_e = 0.1`, then checks the iterate against the closed-form
//! solution `x = 10/11`.
//!
//! ```bash
//! cargo run --example solve_qp1d
//! ```

use auglag::linalg::DenseVector;
use auglag::outer::{malm_solve, OuterOptions};
use auglag::oracle::qp_upnp_closed_form;
use auglag::problem::{catalog, catalog_qp, catalog_start, PenaltyConfig};

fn main() -> auglag::Result<()> {
    let problem = catalog("qp1d")?;
    let x0 = catalog_start("qp1d")?;
    let lambda0 = DenseVector::zeros(problem.m());

    let opts = OuterOptions::new(PenaltyConfig::new(0.1, 0.1)?);
    let trace = malm_solve(&problem, &x0, &lambda0, &opts)?;

    println!("{}", trace.one_line_summary());
    println!();
    println!("  k  f(x_k)         ||c(x_k)||     residual");
    for r in &trace.records {
        println!("{:3}  {:13.6e}  {:13.6e}  {:13.6e}", r.k, r.f_val, r.c_norm, r.terminal_residual);
    }

    let data = catalog_qp("qp1d").expect("qp1d ships QP data");
    let oracle = qp_upnp_closed_form(&data, 0.1)?;
    let gap = trace.x_final.sub(&oracle).norm_inf();
    println!();
    println!("closed form x* = {:.12}  (10/11)", oracle[0]);
    println!("iterate gap    = {gap:.3e}");
    Ok(())
}
