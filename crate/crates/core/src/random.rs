//! Seeded random families for property suites.

use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};

use crate::colouring::LayerPairGraph;
use crate::constructions::Diamond;
use crate::error::{Error, Result};
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::graph::components;

/// Largest ground set for generators that walk the whole cube.
pub const MAX_RANDOM_N: u32 = 16;

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn cube(n: u32) -> Result<GroundSet> {
    let ground = GroundSet::new(n)?;
    if n > MAX_RANDOM_N {
        return Err(Error::ResourceLimit {
            what: "random family ground size",
            limit: MAX_RANDOM_N as u64,
            requested: n as u64,
        });
    }
    Ok(ground)
}

/// Each subset of `[n]` independently with probability `p`.
pub fn random_family<R: Rng>(rng: &mut R, n: u32, p: f64) -> Result<SetFamily> {
    let ground = cube(n)?;
    let p = p.clamp(0.0, 1.0);
    let members: Vec<SubsetMask> = ground.all_subsets().filter(|_| rng.random_bool(p)).collect();
    Ok(SetFamily::from_sorted_unchecked(ground, members))
}

/// Uniform family of exactly `m` subsets.
pub fn random_family_of_size<R: Rng>(rng: &mut R, n: u32, m: usize) -> Result<SetFamily> {
    let ground = cube(n)?;
    let universe = ground.universe_size() as usize;
    if m > universe {
        return Err(Error::Domain(format!("2^[{n}] has only {universe} sets, asked for {m}")));
    }
    let picks = rand::seq::index::sample(rng, universe, m);
    SetFamily::new(ground, picks.into_iter().map(|i| SubsetMask::from_bits(i as u64)))
}

/// Adds subsets in random order while every component keeps order ≤ t,
/// stopping at a random target size.
pub fn random_order_bounded<R: Rng>(rng: &mut R, n: u32, t: usize) -> Result<SetFamily> {
    let ground = cube(n)?;
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let mut order: Vec<SubsetMask> = ground.all_subsets().collect();
    order.shuffle(rng);
    let target = rng.random_range(1..=order.len());
    let mut family = SetFamily::empty(ground);
    for x in order {
        if family.len() >= target {
            break;
        }
        let next = family.with(x)?;
        if components(&next).max_order() <= t {
            family = next;
        }
    }
    Ok(family)
}

/// Disjoint, pairwise non-touching diamonds of height ≤ `max_height`, placed
/// by rejection sampling. The result's components are exactly the diamonds.
pub fn random_all_diamond_family<R: Rng>(rng: &mut R, n: u32, max_height: u32) -> Result<SetFamily> {
    let ground = cube(n)?;
    let max_height = max_height.min(n);
    let wanted = rng.random_range(1..=2 * n as usize + 1);
    let mut diamonds: Vec<Diamond> = Vec::new();
    for _ in 0..8 * wanted {
        if diamonds.len() >= wanted {
            break;
        }
        let bottom = SubsetMask::from_bits(rng.random_range(0..ground.universe_size()));
        let free: Vec<u32> = (1..=n).filter(|&e| !bottom.contains_element(e)).collect();
        let height = rng.random_range(0..=max_height.min(free.len() as u32)) as usize;
        let top = free.choose_multiple(rng, height).fold(bottom, |acc, &e| acc.with_element(e));
        let d = Diamond { bottom, top };
        if diamonds.iter().all(|other| !d.touches(other)) {
            diamonds.push(d);
        }
    }
    SetFamily::new(ground, diamonds.iter().flat_map(|d| d.members().collect::<Vec<_>>()))
}

/// Random subsets of two adjacent layers `k` and `k + 1`, with `k` uniform.
pub fn random_layer_pair<R: Rng>(rng: &mut R, n: u32) -> Result<LayerPairGraph> {
    let ground = cube(n)?;
    if n == 0 {
        return Err(Error::Domain("need n ≥ 1 for adjacent layers".into()));
    }
    let k = rng.random_range(0..n);
    let p = rng.random_range(0.2..=0.9);
    let mut side = |layer: u32| -> Result<SetFamily> {
        let members: Vec<SubsetMask> =
            ground.layer(layer).into_iter().filter(|_| rng.random_bool(p)).collect();
        SetFamily::new(ground, members)
    };
    let a = side(k)?;
    let b = side(k + 1)?;
    LayerPairGraph::new(k, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blym::component_diamonds;

    #[test]
    fn seeds_are_reproducible() {
        let a = random_family(&mut seeded(7), 5, 0.3).unwrap();
        let b = random_family(&mut seeded(7), 5, 0.3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sized_families_have_the_size() {
        let mut rng = seeded(1);
        for m in [0, 1, 5, 32] {
            assert_eq!(random_family_of_size(&mut rng, 5, m).unwrap().len(), m);
        }
        assert!(random_family_of_size(&mut rng, 3, 9).is_err());
    }

    #[test]
    fn order_bounded_respects_the_bound() {
        let mut rng = seeded(2);
        for t in 1..=4 {
            for _ in 0..20 {
                let f = random_order_bounded(&mut rng, 5, t).unwrap();
                assert!(components(&f).max_order() <= t);
                assert!(!f.is_empty());
            }
        }
    }

    #[test]
    fn diamond_families_are_all_diamonds() {
        let mut rng = seeded(3);
        for _ in 0..50 {
            let f = random_all_diamond_family(&mut rng, 6, 3).unwrap();
            let diamonds = component_diamonds(&f).expect("every component is a diamond");
            assert!(diamonds.iter().all(|d| d.height() <= 3));
        }
    }

    #[test]
    fn layer_pairs_sit_on_adjacent_layers() {
        let mut rng = seeded(4);
        for _ in 0..20 {
            let g = random_layer_pair(&mut rng, 5).unwrap();
            assert!(g.a.iter().all(|x| x.size() == g.k));
            assert!(g.b.iter().all(|x| x.size() == g.k + 1));
        }
    }
}
