//! Lexicographic wedge basis of so(n) and its bracket.

use curvlab::lie::{bracket, pair_count, structure_constants, wedge_index, wedge_rank, Bivector};

fn main() -> curvlab::Result<()> {
    let n = 5;
    println!("so({n}) has {} basis bivectors", pair_count(n));
    for r in 0..pair_count(n) {
        let w = wedge_index(r, n)?;
        print!("{}:e{}^e{} ", r, w.i, w.j);
    }
    println!();

    let u = Bivector::basis(n, 1, 2)?;
    let v = Bivector::basis(n, 2, 3)?;
    let w = bracket(&u, &v)?;
    let r13 = wedge_rank(1, 3, n)?;
    println!("[e1^e2, e2^e3] = {} e1^e3, norm {}", w.coords[r13], w.norm());

    let sc = structure_constants(n);
    println!("{} nonzero structure constants", sc.nonzero_count());
    Ok(())
}
