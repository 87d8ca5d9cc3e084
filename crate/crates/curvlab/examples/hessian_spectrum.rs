//! Hessian of the normalized potential at the embedded W_CP2 and its eigenvalue clusters.
//!
//! `cargo run --release --example hessian_spectrum -- 9`

use curvlab::models::{w_cp2, LAMBDA_CRIT};
use curvlab::spectral::{eigen_report, hessian_matrix, hessian_prediction, orbit_tangent_dim, weyl_basis};

fn main() -> curvlab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let w = w_cp2(n)?;
    let basis = weyl_basis(n)?;
    println!("n = {n}: Weyl space of dimension {}, Gram defect {:.1e}", basis.len(), basis.gram_defect());
    let report = eigen_report(&hessian_matrix(&w, &basis)?, 1e-8)?;
    println!("residual {:.2e}", report.residual);
    for (c, (want, k)) in report.clusters.iter().zip(hessian_prediction(n)) {
        println!("{:>10.6}  x{:<4} (expected {want:>9.6} x{k})", c.value / LAMBDA_CRIT, c.multiplicity);
    }
    println!("orbit tangent dimension {}", orbit_tangent_dim(&w));
    Ok(())
}
