//! Lubell function and permutation-meeting statistics.
//!
//! A permutation `σ` of `[n]` corresponds to the maximal chain
//! `∅ ⊂ {σ1} ⊂ {σ1,σ2} ⊂ … ⊂ [n]`; it *meets* a family once for every chain
//! member that belongs to the family. The closed forms here are checked
//! against an explicit walk over all `n!` chains.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{MemberLookup, SetFamily, SubsetMask};
use crate::numeric::{binomial_big, factorial, integer, next_permutation, Rational};

/// Largest ground set for which all `n!` chains are walked.
pub const MAX_ENUMERATION_N: u32 = 10;

/// `Λ(n, F) = Σ_{F ∈ F} 1 / C(n, |F|)`.
pub fn lubell(family: &SetFamily) -> Rational {
    let n = family.n() as u64;
    let mut per_layer = vec![0u64; n as usize + 1];
    for m in family.iter() {
        per_layer[m.size() as usize] += 1;
    }
    per_layer
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(integer(0), |acc, (k, &c)| acc + Rational::new(c.into(), binomial_big(n, k as u64).into()))
}

/// Counts `s_i`: how many permutations meet the family exactly `i` times.
///
/// `counts` has `n + 2` entries because a chain has `n + 1` members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeetProfile {
    pub n: u32,
    pub counts: Vec<u64>,
}

impl MeetProfile {
    /// `s(F)`: permutations meeting the family at least once.
    pub fn meeting(&self) -> u64 {
        self.counts.iter().skip(1).sum()
    }

    /// `Σ_i i · s_i`, the total number of (permutation, member) incidences.
    pub fn incidences(&self) -> u64 {
        self.counts.iter().enumerate().map(|(i, &c)| i as u64 * c).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

fn check_enumerable(n: u32) -> Result<()> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::ResourceLimit {
            what: "permutation enumeration ground size",
            limit: MAX_ENUMERATION_N as u64,
            requested: n as u64,
        });
    }
    Ok(())
}

/// Walks every maximal chain and tallies how often it meets the family.
pub fn meet_profile(family: &SetFamily) -> Result<MeetProfile> {
    let n = family.n();
    check_enumerable(n)?;
    let lookup = MemberLookup::new(family);
    let empty_hit = lookup.get(SubsetMask::EMPTY).is_some() as usize;
    let width = n as usize + 2;

    // One block per first element; blocks are summed in a fixed order.
    let blocks: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0u64; width];
            let mut rest: Vec<u32> = (0..n).filter(|&e| e != first).collect();
            loop {
                let mut chain = 1u64 << first;
                let mut hits = empty_hit + lookup.get(SubsetMask::from_bits(chain)).is_some() as usize;
                for &e in &rest {
                    chain |= 1u64 << e;
                    hits += lookup.get(SubsetMask::from_bits(chain)).is_some() as usize;
                }
                counts[hits] += 1;
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            counts
        })
        .collect();

    let mut counts = vec![0u64; width];
    for block in blocks {
        for (c, b) in counts.iter_mut().zip(block) {
            *c += b;
        }
    }
    Ok(MeetProfile { n, counts })
}

/// Lubell value as the average number of meets over all `n!` permutations.
pub fn lubell_by_permutations(family: &SetFamily) -> Result<Rational> {
    let profile = meet_profile(family)?;
    Ok(Rational::new(profile.incidences().into(), profile.total().into()))
}

/// `Λ̄(n, F)`: the average number of meets over permutations that meet `F`.
pub fn lambda_bar(family: &SetFamily) -> Result<Rational> {
    if family.is_empty() {
        return Err(Error::Domain("no permutation meets the empty family".into()));
    }
    let profile = meet_profile(family)?;
    Ok(Rational::new(profile.incidences().into(), profile.meeting().into()))
}

/// Number of permutations whose chain meets the interval `[bottom, top]`:
/// `n! · |A|! · (n − |B|)! / (n − (|B| − |A|))!`.
pub fn diamond_meet_count(bottom: SubsetMask, top: SubsetMask, n: u32) -> Result<BigUint> {
    if !bottom.is_subset_of(top) {
        return Err(Error::Domain(format!("{bottom} is not contained in {top}")));
    }
    if top.bits() >> n != 0 {
        return Err(Error::MaskOutOfRange { mask: top.bits(), n });
    }
    let (a, b, n) = (bottom.size() as u64, top.size() as u64, n as u64);
    let numer = factorial(n) * factorial(a) * factorial(n - b);
    let denom = factorial(n - (b - a));
    let (q, r) = numer.div_rem(&denom);
    debug_assert!(r.is_zero());
    Ok(q)
}
