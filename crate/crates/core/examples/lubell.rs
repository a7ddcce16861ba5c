//! Lubell values, permutation meet profiles and the average meet count.
//!
//! Run with `cargo run --example lubell`.

use latticework::constructions::sharp_family;
use latticework::lubell::{lambda_bar, lubell, lubell_by_permutations, meet_profile};
use latticework::numeric::rational_string;
use latticework::{Result, SetFamily};

fn main() -> Result<()> {
    let families = [
        (
            "middle layer of [4]",
            SetFamily::from_sets(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]])?,
        ),
        ("chain in [3]", SetFamily::from_sets(3, &[&[], &[1], &[1, 2], &[1, 2, 3]])?),
        ("sharp(4, 1)", sharp_family(4, 1)?),
    ];
    for (name, f) in &families {
        let profile = meet_profile(f)?;
        println!("{name}: |F| = {}", f.len());
        println!("  lubell            {}", rational_string(&lubell(f)));
        println!("  by permutations   {}", rational_string(&lubell_by_permutations(f)?));
        println!("  meet counts s_i   {:?}", profile.counts);
        println!("  permutations hit  {} of {}", profile.meeting(), profile.total());
        println!("  average meet      {}", rational_string(&lambda_bar(f)?));
    }
    Ok(())
}
