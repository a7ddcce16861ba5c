//! The classical BLYM sum and its diamond-component generalisation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constructions::Diamond;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::components;
use crate::numeric::{binomial, integer, Rational};

/// `Σ_k a_k / C(n, k)` for an antichain with `a_k` members on layer `k`.
pub fn blym_sum(family: &SetFamily) -> Result<Rational> {
    if let Some((a, b)) = family.find_two_chain() {
        return Err(Error::Precondition(format!("not an antichain: {a} ⊂ {b}")));
    }
    Ok(crate::lubell::lubell(family))
}

/// The interval spanned by the members, if the members fill it exactly.
pub fn detect_diamond(members: &SetFamily) -> Option<Diamond> {
    let first = members.iter().next()?;
    let (bottom, top) = members.iter().fold((first, first), |(lo, hi), x| (lo.intersection(x), hi.union(x)));
    let height = top.size() - bottom.size();
    // Members are distinct and all inside [bottom, top].
    if height < 64 && members.len() as u64 == 1u64 << height {
        Some(Diamond { bottom, top })
    } else {
        None
    }
}

/// `a_{i,j}`: number of diamond components with bottom on layer `i` and
/// height `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiamondProfile {
    pub n: u32,
    pub counts: BTreeMap<(u32, u32), u64>,
}

impl DiamondProfile {
    /// `Σ a_{i,j} · 2^j`, which equals the family size.
    pub fn total_sets(&self) -> u64 {
        self.counts.iter().map(|(&(_, j), &c)| c << j).sum()
    }

    /// `Σ_{i,j} a_{i,j} / C(n − j, i)`.
    pub fn sum(&self) -> Rational {
        self.counts.iter().fold(integer(0), |acc, (&(i, j), &c)| {
            let denom = binomial((self.n - j) as u64, i as u64);
            acc + Rational::new(c.into(), denom.into())
        })
    }
}

/// Profile of an all-diamond family; fails on the first non-diamond component.
pub fn diamond_profile(family: &SetFamily) -> Result<DiamondProfile> {
    let comps = components(family);
    let mut profile = DiamondProfile { n: family.n(), counts: BTreeMap::new() };
    for (idx, comp) in comps.families(family).iter().enumerate() {
        let Some(d) = detect_diamond(comp) else {
            return Err(Error::Precondition(format!("component {idx} is not a diamond: {comp}")));
        };
        *profile.counts.entry((d.bottom_layer(), d.height())).or_default() += 1;
    }
    Ok(profile)
}

/// Diamond BLYM sum of a family all of whose components are diamonds.
pub fn diamond_blym_sum(family: &SetFamily) -> Result<Rational> {
    Ok(diamond_profile(family)?.sum())
}

/// `2^k · C(n − k, ⌊(n − k)/2⌋)`.
pub fn all_diamond_bound(n: u32, k: u32) -> Result<u128> {
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    Ok((1u128 << k) * binomial((n - k) as u64, ((n - k) / 2) as u64))
}

/// The diamonds of the components, when all components are diamonds.
pub fn component_diamonds(family: &SetFamily) -> Option<Vec<Diamond>> {
    components(family).families(family).iter().map(detect_diamond).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sharp_family;
    use crate::family::GroundSet;
    use crate::family::SubsetMask;
    use crate::numeric::ratio;

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::from_sets(n, sets).unwrap()
    }

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn blym_examples() {
        assert_eq!(blym_sum(&SetFamily::layer(GroundSet::new(4).unwrap(), 2)).unwrap(), integer(1));
        assert_eq!(blym_sum(&fam(3, &[&[1]])).unwrap(), ratio(1, 3));
        assert_eq!(blym_sum(&fam(3, &[&[1], &[2, 3]])).unwrap(), ratio(2, 3));
        assert!(blym_sum(&fam(3, &[&[1], &[1, 3]])).is_err());
    }

    #[test]
    fn detect_examples() {
        let d = detect_diamond(&fam(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]])).unwrap();
        assert_eq!((d.bottom, d.top), (m(&[1]), m(&[1, 2, 3])));
        assert!(detect_diamond(&fam(3, &[&[1], &[1, 2], &[1, 3]])).is_none());
        let d = detect_diamond(&fam(3, &[&[2, 3]])).unwrap();
        assert_eq!((d.bottom, d.top, d.height()), (m(&[2, 3]), m(&[2, 3]), 0));
        assert!(detect_diamond(&SetFamily::empty(GroundSet::new(2).unwrap())).is_none());
    }

    #[test]
    fn diamond_sum_examples() {
        for n in 1..=12u32 {
            for k in 0..=n {
                let f = sharp_family(n, k).unwrap();
                assert_eq!(diamond_blym_sum(&f).unwrap(), integer(1), "n={n} k={k}");
            }
        }
        let g = GroundSet::new(4).unwrap();
        assert_eq!(diamond_blym_sum(&SetFamily::power_set(g)).unwrap(), integer(1));
        assert_eq!(diamond_blym_sum(&fam(3, &[&[1]])).unwrap(), ratio(1, 3));
    }

    #[test]
    fn diamond_sum_rejects_forks() {
        let err = diamond_blym_sum(&fam(3, &[&[1], &[1, 2], &[1, 3]])).unwrap_err();
        assert!(err.to_string().contains("component 0"), "{err}");
    }

    #[test]
    fn profile_counts_sets() {
        let f = sharp_family(6, 2).unwrap();
        let p = diamond_profile(&f).unwrap();
        assert_eq!(p.counts.get(&(2, 2)), Some(&6));
        assert_eq!(p.total_sets(), f.len() as u64);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(all_diamond_bound(4, 2).unwrap(), 8);
        assert_eq!(all_diamond_bound(3, 1).unwrap(), 4);
        assert_eq!(all_diamond_bound(5, 0).unwrap(), 10);
        assert!(all_diamond_bound(3, 4).is_err());
    }
}
