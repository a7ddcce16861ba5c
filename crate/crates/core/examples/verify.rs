//! Runs every property suite with a fixed seed.
//!
//! Run with `cargo run --release --example verify`.

use latticework::verify::{verify, Theorem, VerifyParams};
use latticework::Result;

fn main() -> Result<()> {
    for theorem in Theorem::ALL {
        let params =
            VerifyParams { n: Some(5), k: Some(2), samples: Some(100), seed: 42, ..VerifyParams::default() };
        let report = verify(theorem, &params)?;
        println!(
            "{:<14} {:>6} instances, {} failures  {}",
            theorem.name(),
            report.instances,
            report.failures,
            report.details
        );
        if let Some(c) = &report.counterexample {
            println!("  counterexample: {c}");
        }
    }
    Ok(())
}
