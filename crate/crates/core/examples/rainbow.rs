//! The natural edge colouring of two adjacent layers and its rainbow cycles.
//!
//! Run with `cargo run --example rainbow`.

use latticework::colouring::{
    avg_degree, find_rainbow_cycle, is_proper, layer_colouring, xi, EdgeColouredGraph, LayerPairGraph,
};
use latticework::constructions::full_layer_pair;
use latticework::numeric::rational_string;
use latticework::Result;

fn main() -> Result<()> {
    for (n, k) in [(3, 1), (4, 1), (5, 2)] {
        let (a, b) = full_layer_pair(n, k)?;
        let g = LayerPairGraph::new(k, a.clone(), b.clone())?;
        let coloured = layer_colouring(&g);
        let cycle = find_rainbow_cycle(&coloured, g.order().min(20))?;
        println!(
            "n={n} layers {k},{}: xi = {}, average degree {}, proper {}, rainbow cycle {:?}",
            k + 1,
            xi(&a, &b)?,
            rational_string(&avg_degree(&g)?),
            is_proper(&coloured),
            cycle
        );
    }

    // A properly coloured 4-cycle with four colours is rainbow.
    let square = EdgeColouredGraph::from_triples(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)])?;
    println!("square: {:?}", find_rainbow_cycle(&square, 4)?);
    Ok(())
}
