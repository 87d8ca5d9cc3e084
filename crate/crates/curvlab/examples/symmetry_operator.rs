//! The second-order symmetry operator D² on a one-parameter family, against its closed form.

use std::f64::consts::PI;

use curvlab::lie::Bivector;
use curvlab::models::crit_sym_einstein_constant;
use curvlab::symmetry::{d2, d2_family_norm, d2_family_table, g_lower_bound};

fn main() -> curvlab::Result<()> {
    let (lambda, n, phi) = (1.1, 7, 0.4);
    println!("pair   numeric    table");
    for (i, j) in [(1, 2), (1, 3), (2, 5), (5, 6)] {
        let v = Bivector::basis(n, i, j)?;
        println!("e{i}^e{j}  {:.6}  {:.6}", d2_family_norm(lambda, n, phi, &v)?, d2_family_table(lambda, n, phi, i, j)?);
    }

    let cpn = curvlab::models::cpn(3)?;
    let mut worst: f64 = 0.0;
    for a in 0..15 {
        worst = worst.max(d2(&cpn, &Bivector::unit(6, a))?.norm);
    }
    println!("CP3 is symmetric: max |D2| = {worst:.2e}");

    let l0 = crit_sym_einstein_constant(11);
    println!("G at n = 11, psi = pi/4, phi = 1e-6: {:.7}", g_lower_bound(l0, PI / 4.0, 1e-6, 11));
    Ok(())
}
