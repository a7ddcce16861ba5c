//! Largest disconnected families.
//!
//! If `F` splits into nonempty parts `A` and `B` with nothing comparable
//! across, then `B` avoids both the up-set `P` generated by `A` and the
//! down-set `Q` generated by `A`. Conversely, for any up-set `P` and down-set
//! `Q`, the sets in `P ∩ Q` and the sets outside `P ∪ Q` are never
//! comparable. So the maximum is taken over pairs `(P, Q)` with both parts
//! nonempty, scoring `|P ∩ Q| + 2^n − |P ∪ Q|`.

use rayon::prelude::*;

use super::{check_n, thread_pool, Budget, SearchOptions, SearchResult, SearchValue, Witness};
use crate::error::{Error, Result};
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::graph::components;

/// Largest ground set for the up-set/down-set enumeration.
pub const MAX_DISCONNECTED_N: u32 = 5;

/// Down-sets of `2^[n]` as bitmaps indexed by mask value.
fn down_sets(n: u32) -> Vec<u64> {
    if n == 0 {
        return vec![0, 1];
    }
    let lower = down_sets(n - 1);
    let shift = 1u32 << (n - 1);
    let mut out = Vec::new();
    for &d0 in &lower {
        for &d1 in &lower {
            // Sets containing n need their traces without n in the down-set.
            if d1 & !d0 == 0 {
                out.push(d0 | d1 << shift);
            }
        }
    }
    out.sort_unstable();
    out
}

fn family_of(n: u32, bitmap: u64) -> SetFamily {
    let ground = GroundSet::new(n).expect("checked ground size");
    let members = (0..1u64 << n).filter(|m| bitmap >> m & 1 == 1).map(SubsetMask::from_bits);
    SetFamily::new(ground, members).expect("masks fit the ground set")
}

struct Best {
    value: u32,
    p: usize,
    q: usize,
}

/// Maximum size of a family on `2^[n]` whose comparability graph is disconnected.
pub fn max_disconnected(n: u32, opts: SearchOptions) -> Result<SearchResult> {
    check_n(n, MAX_DISCONNECTED_N)?;
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let full: u64 = (1u64 << (1u64 << n)) - 1;
    let downs = down_sets(n);
    let ups: Vec<u64> = downs.iter().rev().map(|d| full & !d).collect();
    let budget = Budget::new(opts.budget_nodes);

    let row = |pi: usize| -> Option<Best> {
        if !budget.spend(downs.len() as u64) {
            return None;
        }
        let p = ups[pi];
        let mut best: Option<Best> = None;
        for (qi, &q) in downs.iter().enumerate() {
            let inside = p & q;
            let outside = full & !(p | q);
            if inside == 0 || outside == 0 {
                continue;
            }
            let value = inside.count_ones() + outside.count_ones();
            if best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(Best { value, p: pi, q: qi });
            }
        }
        best
    };
    let rows: Vec<Option<Best>> = if opts.jobs <= 1 {
        (0..ups.len()).map(row).collect()
    } else {
        thread_pool(opts.jobs).install(|| (0..ups.len()).into_par_iter().map(row).collect())
    };
    let best = rows.into_iter().flatten().fold(None, |acc: Option<Best>, b| match acc {
        Some(a) if a.value >= b.value => Some(a),
        _ => Some(b),
    });

    let (value, witness) = match best {
        Some(b) => {
            let (p, q) = (ups[b.p], downs[b.q]);
            let family = family_of(n, (p & q) | (full & !(p | q)));
            (b.value as u64, Witness::Family { family })
        }
        None => (0, Witness::None),
    };
    Ok(SearchResult {
        value: SearchValue::Integer(value),
        witness,
        nodes_explored: budget.used(),
        proven_optimal: !budget.exhausted(),
    })
}

/// Every split `(A, B)` of a maximum disconnected family with `A` the sets
/// inside `P ∩ Q`, deduplicated.
pub fn disconnected_optima(n: u32) -> Result<Vec<(SetFamily, SetFamily)>> {
    check_n(n, MAX_DISCONNECTED_N)?;
    let best = max_disconnected(n, SearchOptions::default())?;
    let target = best.value.as_integer().expect("size search") as u32;
    let full: u64 = (1u64 << (1u64 << n)) - 1;
    let downs = down_sets(n);
    let mut seen = std::collections::BTreeSet::new();
    for &d in &downs {
        let p = full & !d;
        for &q in &downs {
            let inside = p & q;
            let outside = full & !(p | q);
            if inside != 0 && outside != 0 && inside.count_ones() + outside.count_ones() == target {
                seen.insert((inside, outside));
            }
        }
    }
    Ok(seen.into_iter().map(|(a, b)| (family_of(n, a), family_of(n, b))).collect())
}

/// Oracle for tiny `n`: checks every family directly.
pub fn max_disconnected_brute_force(n: u32) -> Result<u64> {
    check_n(n, 4)?;
    let ground = GroundSet::new(n)?;
    let universe = 1u64 << n;
    let mut best = 0;
    for bitmap in 0u64..1 << universe {
        let size = bitmap.count_ones() as u64;
        if size <= best {
            continue;
        }
        let members = (0..universe).filter(|m| bitmap >> m & 1 == 1).map(SubsetMask::from_bits);
        let f = SetFamily::new(ground, members)?;
        if components(&f).count() >= 2 {
            best = size;
        }
    }
    Ok(best)
}
