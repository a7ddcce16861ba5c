//! Cascade representations, shadow bounds and the boundary of a split.
//!
//! Run with `cargo run --example shadows`.

use latticework::constructions::disconnected_extremal;
use latticework::graph::components;
use latticework::shadow::{boundary_pair, excluded_lower_bound, kk_cascade, kk_shadow_bound, lower_shadow};
use latticework::{GroundSet, Result, SetFamily};

fn main() -> Result<()> {
    for (m, k) in [(5u64, 2u32), (10, 3), (17, 3)] {
        let rep = kk_cascade(m, k)?;
        println!("m={m} k={k}: terms {:?}, shadow ≥ {}", rep.terms, kk_shadow_bound(m, k, 1)?);
    }

    // The first five 3-sets in colex order meet the bound.
    let ground = GroundSet::new(5)?;
    let colex: Vec<_> = ground.layer(3).into_iter().take(5).collect();
    let f = SetFamily::new(ground, colex)?;
    println!("{f}: shadow {}", lower_shadow(&f)?.len());

    let f = disconnected_extremal(6)?;
    let comps = components(&f);
    let (a, b) = comps.split(&f, &[0], &[1])?;
    let pair = boundary_pair(&a, &b)?;
    println!("split of disconnected(6): |A| = {}, |B| = {}", a.len(), b.len());
    println!("F+ = {}", pair.fplus);
    println!("F- = {}", pair.fminus);
    let excluded = pair.up_of_fplus.len() + pair.down_of_fminus.len();
    println!("excluded {excluded} (lower bound {})", excluded_lower_bound(6));
    println!("{:#?}", pair.report);
    Ok(())
}
