//! Normalized potential flow from a random Weyl operator, with the trajectory as CSV.

use curvlab::flow::{run_flow, write_trajectory_csv, FlowOptions};
use curvlab::models::{theta_kl, LAMBDA_CRIT};
use curvlab::sample;

fn main() -> curvlab::Result<()> {
    let n = 6;
    let w = sample::unit_weyl(&mut sample::rng(3), n);
    let out = run_flow(&w, &FlowOptions { record_every: 50, ..FlowOptions::default() })?;
    println!("{} steps, converged {}, residual {:.2e}", out.steps, out.converged, out.residual);
    println!("terminal P = {:.10}", out.state.potential);
    println!("candidates: W_CP2 {LAMBDA_CRIT:.10}, S2xS4 {:.10}, S3xS3 {:.10}", theta_kl(2, 4), theta_kl(3, 3));
    println!("largest single-step decrease {:.1e}", out.max_decrease);
    write_trajectory_csv(&out.trajectory, std::io::stdout().lock())?;
    Ok(())
}
