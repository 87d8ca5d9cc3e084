//! Shi-type derivative constants and the published table they are compared with.

use curvlab::io::shi_table_markdown;
use curvlab::shi::{derivative_bound, shi_constants, table_cells};

fn main() -> curvlab::Result<()> {
    print!("{}", shi_table_markdown(&table_cells()));
    for c in table_cells().iter().filter(|c| !c.dominated()) {
        println!("n = {} C{}: formula {:.3} vs published {}", c.n, c.order, c.formula, c.published);
    }
    let c = shi_constants(11)?;
    println!("third constant: statement form {:.2}, proof form {:.2}", c.c3, c.c3_proof);
    let bound = derivative_bound(11, (73.0f64 / 40.0).sqrt(), (40.0f64 / 27.0).sqrt(), 3)?;
    println!("|nabla^3 Rm| <= {bound:.2}");
    Ok(())
}
