//! Weighted component sums for all-diamond families.
//!
//! Run with `cargo run --example diamond_blym`.

use latticework::blym::{all_diamond_bound, blym_sum, diamond_blym_sum, diamond_profile};
use latticework::constructions::sharp_family;
use latticework::numeric::rational_string;
use latticework::random::{random_all_diamond_family, seeded};
use latticework::Result;

fn main() -> Result<()> {
    // Height-0 diamonds are single sets, where both sums agree.
    let antichain = sharp_family(5, 0)?;
    println!(
        "middle layer of [5]: classical sum {}, diamond sum {}",
        rational_string(&blym_sum(&antichain)?),
        rational_string(&diamond_blym_sum(&antichain)?)
    );
    for (n, k) in [(4, 1), (5, 1), (5, 2), (6, 3)] {
        let f = sharp_family(n, k)?;
        println!(
            "sharp({n},{k}): diamond sum {}, bound {} vs |F| = {}",
            rational_string(&diamond_blym_sum(&f)?),
            all_diamond_bound(n, k)?,
            f.len()
        );
    }
    let mut rng = seeded(7);
    for _ in 0..5 {
        let f = random_all_diamond_family(&mut rng, 6, 2)?;
        let profile = diamond_profile(&f)?;
        println!(
            "random: {} sets, a_ij = {:?}, sum {}",
            profile.total_sets(),
            profile.counts,
            rational_string(&profile.sum())
        );
    }
    Ok(())
}
