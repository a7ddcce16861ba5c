//! Runs every registered experiment and compares it with its closed form.
//!
//! Run with `cargo run --release --example reproduce`.

use latticework::reproduce::{registry, reproduce};
use latticework::search::SearchOptions;
use latticework::Result;

fn main() -> Result<()> {
    let mut failed = 0;
    for entry in registry() {
        let r = reproduce(&entry, SearchOptions::default())?;
        println!(
            "{:<20} expected {:?} {:>3}  actual {:>3}  {}",
            r.name,
            r.comparison,
            r.expected,
            r.actual,
            if r.pass { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!r.pass);
    }
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
