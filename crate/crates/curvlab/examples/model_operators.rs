//! Curvature operators of the model spaces and their normalized Weyl potentials.

use curvlab::curvature::{potential_normalized, weyl_part};
use curvlab::models::{theta_kl, w_cp2, ModelSpec, LAMBDA_CRIT};
use curvlab::spectral::eigen_report;

fn main() -> curvlab::Result<()> {
    let specs = [
        ModelSpec::Sphere { n: 6 },
        ModelSpec::SphereProduct { k: 2, l: 4 },
        ModelSpec::SphereProduct { k: 3, l: 3 },
        ModelSpec::Cpn { n_half: 3 },
        ModelSpec::CritSym { n: 7 },
    ];
    for spec in &specs {
        let r = spec.build()?;
        let spectrum = eigen_report(&r.mat, 1e-9)?;
        let eig: Vec<String> = spectrum.clusters.iter().map(|c| format!("{:.3}x{}", c.value, c.multiplicity)).collect();
        let w = weyl_part(&r)?;
        let p = if w.norm() > 1e-12 { format!("{:.6}", potential_normalized(&w)?) } else { "flat Weyl".into() };
        println!("{}  spectrum [{}]  P(W) {p}", serde_json::to_string(spec)?, eig.join(" "));
    }
    println!("theta(2,4) = {:.6}", theta_kl(2, 4));
    println!("P(W_CP2) in n = 9: {:.12} vs sqrt(3/2) = {LAMBDA_CRIT}", potential_normalized(&w_cp2(9)?)?);
    Ok(())
}
