//! Exhaustive searches: largest families with small components, the largest
//! disconnected family, and related extremal quantities.
//!
//! Run with `cargo run --release --example search`.

use latticework::search::{
    enumerate_optima, la_exact, lambda_star_exact, mad_star_probe, max_disconnected, min_two_chains,
    xi_star_exact, Objective, SearchOptions,
};
use latticework::Result;

fn main() -> Result<()> {
    let opts = SearchOptions::default().with_jobs(4);

    println!("largest family with every component of order ≤ t:");
    for n in 1..=5u32 {
        let row: Vec<String> =
            (1..=4).map(|t| la_exact(n, t, opts).map(|r| r.value.to_string())).collect::<Result<_>>()?;
        println!("  n={n}: {}", row.join(" "));
    }

    let r = la_exact(5, 2, opts)?;
    r.certify(Objective::BoundedSize { t: 2, kmin: 0, kmax: 5 }).expect("witness certifies");
    println!("witness for n=5, t=2: {:?}", r.witness);

    for n in 2..=5 {
        let r = max_disconnected(n, opts)?;
        println!("largest disconnected family in [{n}]: {} ({} nodes)", r.value, r.nodes_explored);
    }
    for t in 1..=4 {
        println!("best Lubell value in [4] with orders ≤ {t}: {}", lambda_star_exact(4, t, opts)?.value);
    }
    for m in [4, 6, 8] {
        println!("xi*(4, {m}) = {}", xi_star_exact(4, m, opts)?.value);
    }
    println!("fewest 2-chains among 7 sets of [4]: {}", min_two_chains(4, 7, opts)?.value);
    for t in 3..=6 {
        println!("rainbow-free average degree on {t} vertices: {}", mad_star_probe(t, opts)?.value);
    }

    let optima = enumerate_optima(4, 4, opts)?;
    println!("optima for n=4, t=4: {} families in {} classes", optima.total, optima.classes.len());
    for class in &optima.classes {
        println!("  {} x {:?}: {}", class.count, class.shapes, class.representative);
    }
    Ok(())
}
