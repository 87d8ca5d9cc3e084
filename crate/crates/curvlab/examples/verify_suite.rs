//! Runs the verification suite on a few dimensions and prints the Markdown report.

use curvlab::suite::{run_suite, SuiteConfig};

fn main() -> curvlab::Result<()> {
    let report = run_suite(&SuiteConfig { dims: vec![4, 5, 6], seed: 1, samples: 10, ..SuiteConfig::default() })?;
    print!("{}", report.to_markdown());
    Ok(())
}
