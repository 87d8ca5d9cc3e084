//! Decomposition, the sharp product and the potential on a random curvature operator.

use curvlab::curvature::{decompose, potential_normalized, q, sharp, weyl_part, CurvatureOperator};
use curvlab::sample;

fn main() -> curvlab::Result<()> {
    let n = 6;
    let mut rng = sample::rng(11);
    let r = sample::curvature(&mut rng, n);
    let d = decompose(&r)?;
    println!("scal {:.4}", d.scal);
    println!("|Id part| {:.4}  |Ric0 part| {:.4}  |W| {:.4}", d.identity_norm, d.ricci_norm, d.weyl_norm);

    let id = CurvatureOperator::identity(n);
    let w = weyl_part(&r)?;
    let defect = (&w.mat + &sharp(&w, &id)?.mat).amax();
    println!("W + W#Id vanishes up to {defect:.2e}");

    let qw = q(&w);
    println!("<Q(W), W> / |W|^3 = {:.6}", potential_normalized(&w)?);
    println!("|Q(W)| = {:.4}", qw.norm());
    Ok(())
}
