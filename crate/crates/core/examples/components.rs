//! Comparability graph and component structure of a small family.
//!
//! Run with `cargo run --example components`.

use latticework::graph::{comparability_graph, components, count_two_chains, cover_graph};
use latticework::{Result, SetFamily};

fn main() -> Result<()> {
    let family = SetFamily::from_sets(4, &[&[1], &[1, 2], &[1, 3], &[2, 3, 4], &[4], &[3, 4]])?;
    println!("family: {family}");
    println!("height: {}", family.height()?);
    println!("layer counts: {:?}", family.layer_counts());

    let g = comparability_graph(&family);
    println!("comparable pairs: {}", g.edge_count());
    for (x, y) in g.edge_masks() {
        println!("  {x} ⊂ {y}");
    }
    println!("cover edges: {}", cover_graph(&family).edge_count());
    println!("2-chains: {}", count_two_chains(&family));

    let comps = components(&family);
    for (i, part) in comps.families(&family).iter().enumerate() {
        let stats = comps.stats[i];
        println!("component {i}: order {}, size {}: {part}", stats.order, stats.size);
    }

    // Relabelling the ground set preserves every component statistic.
    let moved = family.relabel(&[3, 2, 1, 0])?;
    println!("relabelled: {moved}, orders {:?}", components(&moved).orders());
    Ok(())
}
