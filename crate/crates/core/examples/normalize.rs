//! Removing skips from a family without growing its components.
//!
//! Run with `cargo run --example normalize`.

use latticework::graph::components;
use latticework::normalize::{find_skips, make_skipless};
use latticework::random::{random_order_bounded, seeded};
use latticework::{Result, SetFamily};

fn main() -> Result<()> {
    let f = SetFamily::from_sets(3, &[&[1], &[1, 2, 3]])?;
    for s in find_skips(&f) {
        println!("skip {} between {} and {}", s.skip, s.witness_below, s.witness_above);
    }
    let norm = make_skipless(&f, 2)?;
    println!("{f} -> {}", norm.family);

    let mut rng = seeded(2024);
    for t in [2, 3, 4] {
        let f = random_order_bounded(&mut rng, 6, t)?;
        let norm = make_skipless(&f, t)?;
        println!(
            "n=6 t={t}: {} sets, {} skips removed in {} steps ({} splits), max order {} -> {}",
            f.len(),
            find_skips(&f).len(),
            norm.steps.len(),
            norm.splits(),
            components(&f).max_order(),
            components(&norm.family).max_order(),
        );
        for (added, removed) in norm.trace().iter().take(3) {
            println!("    add {added}, remove {removed}");
        }
    }
    Ok(())
}
