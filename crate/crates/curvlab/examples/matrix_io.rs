//! Writes an operator as a JSON envelope and as CSV, then reads both back.

use curvlab::io::{read_matrix_csv, read_operator_json, write_matrix_csv, write_operator_json};
use curvlab::models::cpn;

fn main() -> curvlab::Result<()> {
    let op = cpn(2)?.into_symmetric();
    let mut json = Vec::new();
    write_operator_json(&op, &mut json)?;
    let back = read_operator_json(json.as_slice())?;
    println!("JSON envelope: {} bytes, round-trip error {:.1e}", json.len(), (&back.mat - &op.mat).amax());

    let mut csv = Vec::new();
    write_matrix_csv(&op.mat, &mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    let m = read_matrix_csv(csv.as_slice())?;
    println!("CSV round-trip error {:.1e}", (&m - &op.mat).amax());
    Ok(())
}
