//! Exhaustive searches over adjacent-layer pairs and fixed-size families.

use super::{check_n, Budget, SearchOptions, SearchResult, SearchValue, Witness, MAX_SEARCH_N};
use crate::error::{Error, Result};
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::numeric::Rational;

/// Largest ground set for [`min_two_chains`].
pub const MAX_TWO_CHAIN_N: u32 = 4;

/// Largest `2ξ(A, B)/m` over pairs `A` on layer `k`, `B` on layer `k + 1`
/// with `|A| + |B| = m`.
///
/// For a fixed `A` the best `B` takes the upper-layer sets with the most
/// neighbours in `A`, so only the lower side is enumerated.
pub fn xi_star_exact(n: u32, m: usize, opts: SearchOptions) -> Result<SearchResult> {
    check_n(n, MAX_SEARCH_N)?;
    let ground = GroundSet::new(n)?;
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let budget = Budget::new(opts.budget_nodes);
    // (edges, k, A, B) with the first maximum kept.
    let mut best: Option<(u64, u32, Vec<SubsetMask>, Vec<SubsetMask>)> = None;
    let mut fits = false;
    'layers: for k in 0..n {
        let lower = ground.layer(k);
        let upper = ground.layer(k + 1);
        if lower.len() + upper.len() < m {
            continue;
        }
        fits = true;
        for sel in 0u64..1 << lower.len() {
            let a_len = sel.count_ones() as usize;
            if a_len > m || m - a_len > upper.len() {
                continue;
            }
            if !budget.tick() {
                break 'layers;
            }
            let a: Vec<SubsetMask> =
                (0..lower.len()).filter(|i| sel >> i & 1 == 1).map(|i| lower[i]).collect();
            let mut degrees: Vec<(u64, usize)> = upper
                .iter()
                .enumerate()
                .map(|(j, y)| (a.iter().filter(|x| x.is_subset_of(*y)).count() as u64, j))
                .collect();
            degrees.sort_by_key(|&(d, j)| (std::cmp::Reverse(d), j));
            let chosen = &degrees[..m - a_len];
            let edges: u64 = chosen.iter().map(|&(d, _)| d).sum();
            if best.as_ref().is_none_or(|b| edges > b.0) {
                let b = chosen.iter().map(|&(_, j)| upper[j]).collect();
                best = Some((edges, k, a, b));
            }
        }
    }
    if !fits {
        return Err(Error::Domain(format!("no adjacent layers of 2^[{n}] hold {m} sets")));
    }
    let (value, witness) = match best {
        Some((edges, k, a, b)) => (
            Rational::new((2 * edges).into(), m.into()),
            Witness::LayerPair { k, a: SetFamily::new(ground, a)?, b: SetFamily::new(ground, b)? },
        ),
        None => (Rational::from_integer(0.into()), Witness::None),
    };
    Ok(SearchResult {
        value: SearchValue::Rational(value),
        witness,
        nodes_explored: budget.used(),
        proven_optimal: !budget.exhausted(),
    })
}

/// Fewest comparable pairs in a family of `m` sets from `2^[n]`.
pub fn min_two_chains(n: u32, m: usize, opts: SearchOptions) -> Result<SearchResult> {
    check_n(n, MAX_TWO_CHAIN_N)?;
    let ground = GroundSet::new(n)?;
    let universe = 1usize << n;
    if m > universe {
        return Err(Error::Domain(format!("2^[{n}] has only {universe} sets, asked for {m}")));
    }
    // Strict supersets of each mask, as a bitmap over masks.
    let above: Vec<u64> = (0..universe)
        .map(|x| (0..universe).filter(|&y| x != y && x & y == x).fold(0u64, |acc, y| acc | 1 << y))
        .collect();
    let budget = Budget::new(opts.budget_nodes);
    let mut best: Option<(u64, u64)> = None;
    let last = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
    // Gosper's hack over m-subsets of the universe.
    let mut sel: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    loop {
        if !budget.tick() {
            break;
        }
        let mut rest = sel;
        let mut chains = 0u64;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            chains += (above[x] & sel).count_ones() as u64;
            rest &= rest - 1;
        }
        if best.is_none_or(|(c, _)| chains < c) {
            best = Some((chains, sel));
        }
        if sel == 0 {
            break;
        }
        let low = sel & sel.wrapping_neg();
        let ripple = sel.wrapping_add(low);
        if ripple == 0 || ripple & !last != 0 {
            break;
        }
        sel = ripple | (((sel ^ ripple) >> 2) / low);
        if sel & !last != 0 {
            break;
        }
    }
    let (chains, sel) = best.expect("at least one family is examined");
    let members = (0..universe).filter(|x| sel >> x & 1 == 1).map(|x| SubsetMask::from_bits(x as u64));
    Ok(SearchResult {
        value: SearchValue::Integer(chains),
        witness: Witness::Family { family: SetFamily::new(ground, members)? },
        nodes_explored: budget.used(),
        proven_optimal: !budget.exhausted(),
    })
}
