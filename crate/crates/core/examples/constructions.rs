//! The sharp diamond families and the largest disconnected family, each
//! re-certified from scratch.
//!
//! Run with `cargo run --example constructions`.

use latticework::constructions::{certify, disconnected_extremal, disconnected_size, sharp_family, Claim};
use latticework::graph::components;
use latticework::Result;

fn main() -> Result<()> {
    println!("sharp families (diamonds of height k on the middle layer of [n-k]):");
    for n in 2..=7 {
        for k in 0..=n.min(3) {
            let f = sharp_family(n, k)?;
            let report = certify(&f, &Claim::sharp(n, k));
            println!(
                "  n={n} k={k}: {:>3} sets, {:>2} components, certified {}",
                f.len(),
                components(&f).count(),
                report.passed()
            );
        }
    }

    println!("largest disconnected families:");
    for n in 2..=9 {
        let f = disconnected_extremal(n)?;
        let report = certify(&f, &Claim::disconnected_extremal(n));
        println!(
            "  n={n}: {:>3} sets (formula {:>3}), certified {}",
            f.len(),
            disconnected_size(n),
            report.passed()
        );
        for entry in report.failures() {
            println!("    {} expected {} got {}", entry.property, entry.expected, entry.actual);
        }
    }
    println!("disconnected(4) = {}", disconnected_extremal(4)?);
    Ok(())
}
