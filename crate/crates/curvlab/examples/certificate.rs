//! Small-margin certificate in dimension 11, with quoted and with recomputed constants.

use curvlab::certificate::{alpha0_certificate, Mode};

fn main() -> curvlab::Result<()> {
    for mode in [Mode::PaperConstants, Mode::Recomputed] {
        let c = alpha0_certificate(11, mode)?;
        println!("{mode:?}: G {:.7} C {:.2} r {:.4e}", c.g_used, c.c_used, c.r);
        println!("  lhs {:.4e}  rhs {:.4e}  largest margin {:.3e}  {:?}", c.lhs_bound, c.rhs_bound, c.alpha0_margin, c.verdict);
        for f in &c.flags {
            println!("  - {f}");
        }
    }
    Ok(())
}
