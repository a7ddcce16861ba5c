//! Explicit extremal families and a certifier that re-derives their claimed
//! properties from scratch.

use serde::Serialize;

use crate::blym::detect_diamond;
use crate::error::{Error, Result};
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::graph::components;
use crate::numeric::binomial;
use crate::shadow::{down_closure, up_closure, MaskSet};

/// The interval `[bottom, top] = {X : bottom ⊆ X ⊆ top}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Diamond {
    pub bottom: SubsetMask,
    pub top: SubsetMask,
}

impl Diamond {
    pub fn new(bottom: SubsetMask, top: SubsetMask) -> Result<Self> {
        if !bottom.is_subset_of(top) {
            return Err(Error::Domain(format!("diamond corners {bottom} ⊄ {top}")));
        }
        Ok(Diamond { bottom, top })
    }

    pub fn height(&self) -> u32 {
        self.top.size() - self.bottom.size()
    }

    /// Layer of the bottom corner.
    pub fn bottom_layer(&self) -> u32 {
        self.bottom.size()
    }

    pub fn order(&self) -> u64 {
        1u64 << self.height()
    }

    pub fn contains(&self, x: SubsetMask) -> bool {
        self.bottom.is_subset_of(x) && x.is_subset_of(self.top)
    }

    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.top.difference(self.bottom).submasks().map(|x| x.union(self.bottom))
    }

    /// True if some member of `self` is comparable to (or equal to) some
    /// member of `other`.
    pub fn touches(&self, other: &Diamond) -> bool {
        self.bottom.is_subset_of(other.top) || other.bottom.is_subset_of(self.top)
    }
}

/// Which middle layer of `[n−k]` to use when `n − k` is odd.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MiddleLayer {
    #[default]
    Floor,
    Ceil,
}

/// Diamonds of height `k` hanging off the middle layer of `[n−k]`, with the
/// tail `{n−k+1, …, n}` free: `2^k · C(n−k, ⌊(n−k)/2⌋)` sets in
/// components of order exactly `2^k`.
pub fn sharp_family(n: u32, k: u32) -> Result<SetFamily> {
    sharp_family_with(n, k, MiddleLayer::Floor)
}

pub fn sharp_family_with(n: u32, k: u32, middle: MiddleLayer) -> Result<SetFamily> {
    let ground = GroundSet::new(n)?;
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    let head = n - k;
    let layer = match middle {
        MiddleLayer::Floor => head / 2,
        MiddleLayer::Ceil => head.div_ceil(2),
    };
    let tail = SubsetMask::from_bits(ground.full().bits() & !SubsetMask::prefix(head).bits());
    let mut members = Vec::new();
    for base in crate::family::layer_masks(head, layer) {
        members.extend(tail.submasks().map(|t| base.union(t)));
    }
    SetFamily::new(ground, members)
}

/// Every set of the interval `[d.bottom, d.top]`.
pub fn diamond_family(d: Diamond, n: u32) -> Result<SetFamily> {
    let ground = GroundSet::new(n)?;
    ground.check(d.top)?;
    Diamond::new(d.bottom, d.top)?;
    SetFamily::new(ground, d.members())
}

/// The witness for the largest disconnected family: one set `[⌊n/2⌋]`
/// together with every set incomparable to it.
pub fn disconnected_extremal(n: u32) -> Result<SetFamily> {
    if n < 2 {
        return Err(Error::Domain("a disconnected family needs n ≥ 2".into()));
    }
    let ground = GroundSet::new(n)?;
    let a = SubsetMask::prefix(n / 2);
    SetFamily::new(
        ground,
        ground.all_subsets().filter(|&x| x == a || !(x.is_subset_of(a) || a.is_subset_of(x))),
    )
}

/// `2^n − 2^{n/2+1} + 2` (even `n`) or `2^n − 3·2^{(n−1)/2} + 2` (odd `n`).
pub fn disconnected_size(n: u32) -> u64 {
    let total = 1u64 << n;
    if n.is_multiple_of(2) {
        total - (1u64 << (n / 2 + 1)) + 2
    } else {
        total - 3 * (1u64 << ((n - 1) / 2)) + 2
    }
}

/// The complete layers `k` and `k + 1`.
pub fn full_layer_pair(n: u32, k: u32) -> Result<(SetFamily, SetFamily)> {
    let ground = GroundSet::new(n)?;
    if k >= n {
        return Err(Error::Domain(format!("layer pair needs k < n (k = {k}, n = {n})")));
    }
    Ok((SetFamily::layer(ground, k), SetFamily::layer(ground, k + 1)))
}

/// True if the family is disconnected but adding any absent set connects it.
pub fn is_maximally_disconnected(family: &SetFamily) -> Result<bool> {
    let n = family.n();
    if n > 20 {
        return Err(Error::ResourceLimit {
            what: "maximality check ground size",
            limit: 20,
            requested: n as u64,
        });
    }
    let comps = components(family);
    if comps.count() < 2 {
        return Ok(false);
    }
    // X joins component C iff X ∈ ∂⁺(C) ∪ ∂⁻(C).
    let reach: Vec<MaskSet> = comps
        .families(family)
        .iter()
        .map(|c| {
            let mut s = MaskSet::new(n);
            for x in down_closure(c).iter().chain(up_closure(c).iter()) {
                s.insert(x);
            }
            s
        })
        .collect();
    Ok(family
        .ground()
        .all_subsets()
        .filter(|&x| !family.contains(x))
        .all(|x| reach.iter().all(|r| r.contains(x))))
}

/// Properties a construction claims; unset fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub size: Option<u64>,
    /// Every component has exactly this order.
    pub component_order: Option<usize>,
    pub component_count: Option<usize>,
    /// Every component is a diamond of this height.
    pub diamond_height: Option<u32>,
    pub antichain: bool,
    pub disconnected: bool,
    pub maximally_disconnected: bool,
}

impl Claim {
    pub fn named(name: impl Into<String>) -> Self {
        Claim { name: name.into(), ..Claim::default() }
    }

    /// What [`sharp_family`] promises.
    pub fn sharp(n: u32, k: u32) -> Self {
        let count = binomial((n - k) as u64, ((n - k) / 2) as u64) as usize;
        Claim {
            name: format!("sharp(n={n}, k={k})"),
            size: Some((1u64 << k) * count as u64),
            component_order: Some(1usize << k),
            component_count: Some(count),
            diamond_height: Some(k),
            ..Claim::default()
        }
    }

    /// What [`disconnected_extremal`] promises.
    pub fn disconnected_extremal(n: u32) -> Self {
        Claim {
            name: format!("disconnected(n={n})"),
            size: Some(disconnected_size(n)),
            component_count: Some(2),
            disconnected: true,
            maximally_disconnected: n <= 10,
            ..Claim::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationEntry {
    pub property: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub claim: String,
    pub entries: Vec<CertificationEntry>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CertificationEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

/// Re-derives every property named in `claim`; failures become report entries.
pub fn certify(family: &SetFamily, claim: &Claim) -> CertificationReport {
    let mut entries = Vec::new();
    let mut push = |property: &str, expected: String, actual: String| {
        let pass = expected == actual;
        entries.push(CertificationEntry { property: property.into(), expected, actual, pass });
    };
    let comps = components(family);

    if let Some(size) = claim.size {
        push("size", size.to_string(), family.len().to_string());
    }
    if let Some(order) = claim.component_order {
        let bad = comps.stats.iter().find(|c| c.order != order);
        push("component_order", order.to_string(), bad.map_or(order, |c| c.order).to_string());
    }
    if let Some(count) = claim.component_count {
        push("component_count", count.to_string(), comps.count().to_string());
    }
    if let Some(height) = claim.diamond_height {
        let mut actual = format!("all diamonds of height {height}");
        for comp in comps.families(family) {
            match detect_diamond(&comp) {
                Some(d) if d.height() == height => {}
                Some(d) => {
                    actual = format!("diamond [{}, {}] of height {}", d.bottom, d.top, d.height());
                    break;
                }
                None => {
                    actual = format!("non-diamond component {comp}");
                    break;
                }
            }
        }
        push("diamond_height", format!("all diamonds of height {height}"), actual);
    }
    if claim.antichain {
        push("antichain", "0 two-chains".into(), format!("{} two-chains", comps.total_edges()));
    }
    if claim.disconnected {
        push("disconnected", "true".into(), (comps.count() >= 2).to_string());
    }
    if claim.maximally_disconnected {
        let actual = match is_maximally_disconnected(family) {
            Ok(v) => v.to_string(),
            Err(e) => e.to_string(),
        };
        push("maximally_disconnected", "true".into(), actual);
    }
    CertificationReport { claim: claim.name.clone(), entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::comparability_graph;

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::from_sets(n, sets).unwrap()
    }

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp_family(3, 1).unwrap(), fam(3, &[&[1], &[1, 3], &[2], &[2, 3]]));
        let g4 = GroundSet::new(4).unwrap();
        assert_eq!(sharp_family(4, 0).unwrap(), SetFamily::layer(g4, 2));
        let whole = sharp_family(4, 4).unwrap();
        assert_eq!(whole, SetFamily::power_set(g4));
        assert_eq!(components(&whole).count(), 1);
        assert!(sharp_family(3, 4).is_err());
    }

    #[test]
    fn sharp_ceil_variant_differs_only_for_odd_heads() {
        assert_eq!(sharp_family_with(4, 1, MiddleLayer::Ceil).unwrap().len(), 6);
        let ceil = sharp_family_with(4, 1, MiddleLayer::Ceil).unwrap();
        assert!(ceil.iter().all(|x| x.difference(m(&[4])).size() == 2));
        assert_eq!(sharp_family_with(4, 2, MiddleLayer::Ceil).unwrap(), sharp_family(4, 2).unwrap());
    }

    #[test]
    fn sharp_height() {
        assert_eq!(sharp_family(4, 2).unwrap().height().unwrap(), 2);
    }

    #[test]
    fn diamond_examples() {
        let d = Diamond::new(m(&[1]), m(&[1, 2, 3])).unwrap();
        assert_eq!(diamond_family(d, 3).unwrap(), fam(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]]));
        let point = Diamond::new(m(&[2]), m(&[2])).unwrap();
        assert_eq!(diamond_family(point, 3).unwrap(), fam(3, &[&[2]]));
        let cube = Diamond::new(m(&[]), m(&[1, 2])).unwrap();
        assert_eq!(diamond_family(cube, 2).unwrap().len(), 4);
        assert!(Diamond::new(m(&[1]), m(&[2])).is_err());
        assert!(diamond_family(Diamond::new(m(&[]), m(&[3])).unwrap(), 2).is_err());
    }

    #[test]
    fn disconnected_examples() {
        let f4 = disconnected_extremal(4).unwrap();
        assert_eq!(f4.len(), 10);
        assert_eq!(comparability_graph(&f4).component_count(), 2);
        let f3 = disconnected_extremal(3).unwrap();
        assert_eq!(f3.len(), 4);
        assert_eq!(disconnected_size(3), 4);
        assert_eq!(components(&f3).count(), 2);
        assert_eq!(disconnected_extremal(2).unwrap(), fam(2, &[&[1], &[2]]));
        assert!(disconnected_extremal(1).is_err());
        assert_eq!(disconnected_size(5), 22);
    }

    #[test]
    fn disconnected_witness_is_maximal() {
        for n in 2..=8 {
            let f = disconnected_extremal(n).unwrap();
            assert!(is_maximally_disconnected(&f).unwrap(), "n = {n}");
            assert!(certify(&f, &Claim::disconnected_extremal(n)).passed());
        }
        assert!(!is_maximally_disconnected(&fam(3, &[&[1], &[2]])).unwrap());
        assert!(!is_maximally_disconnected(&fam(3, &[&[1], &[1, 2]])).unwrap());
    }

    #[test]
    fn layer_pairs() {
        let (a, b) = full_layer_pair(3, 1).unwrap();
        assert_eq!((a.len(), b.len()), (3, 3));
        assert_eq!(crate::graph::count_two_chains(&a.union(&b).unwrap()), 6);
        let (a, b) = full_layer_pair(2, 0).unwrap();
        assert_eq!(a, fam(2, &[&[]]));
        assert_eq!(b, fam(2, &[&[1], &[2]]));
        let (a, b) = full_layer_pair(4, 3).unwrap();
        assert_eq!((a.len(), b.len()), (4, 1));
        assert!(full_layer_pair(4, 4).is_err());
    }

    #[test]
    fn certify_examples() {
        let sharp = sharp_family(3, 1).unwrap();
        let claim = Claim { component_order: Some(2), component_count: Some(2), ..Claim::named("pairs") };
        assert!(certify(&sharp, &claim).passed());
        assert!(certify(&sharp, &Claim::sharp(3, 1)).passed());

        let middle = SetFamily::layer(GroundSet::new(4).unwrap(), 2);
        assert!(certify(&middle, &Claim { antichain: true, ..Claim::named("middle") }).passed());

        let broken = sharp.without(m(&[2, 3]));
        let report = certify(&broken, &Claim { size: Some(4), ..Claim::named("sharp") });
        assert!(!report.passed());
        assert_eq!(report.failures().next().unwrap().property, "size");
        assert!(!certify(&broken, &Claim::sharp(3, 1)).passed());
    }
}
