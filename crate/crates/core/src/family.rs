//! Subsets of `[n]` as bit masks and duplicate-free families of them.
//!
//! Element `i` of the ground set `[n] = {1, ..., n}` is stored in bit `i - 1`.
//! Families keep their members sorted by numeric mask value, which gives every
//! family a single canonical representation.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set; one mask has to fit a machine word.
pub const MAX_GROUND: u32 = 63;

/// The ground set `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize { n, max: MAX_GROUND });
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// The full set `[n]`.
    pub fn full(self) -> SubsetMask {
        SubsetMask((1u64 << self.n) - 1)
    }

    /// `2^n`, the number of subsets.
    pub fn universe_size(self) -> u64 {
        1u64 << self.n
    }

    pub fn contains(self, mask: SubsetMask) -> bool {
        mask.0 >> self.n == 0
    }

    pub fn check(self, mask: SubsetMask) -> Result<()> {
        if self.contains(mask) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange { mask: mask.0, n: self.n })
        }
    }

    /// Strict comparability of two subsets of this ground set.
    ///
    /// Fails if either mask uses an element outside `[n]`.
    pub fn is_comparable(self, x: SubsetMask, y: SubsetMask) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.is_comparable(y))
    }

    /// Every subset of `[n]` in increasing mask order.
    pub fn all_subsets(self) -> impl Iterator<Item = SubsetMask> {
        (0..self.universe_size()).map(SubsetMask)
    }

    /// All `k`-subsets in increasing mask order.
    pub fn layer(self, k: u32) -> Vec<SubsetMask> {
        layer_masks(self.n, k)
    }
}

/// All `k`-subsets of `[n]` in increasing mask order (Gosper's hack).
pub(crate) fn layer_masks(n: u32, k: u32) -> Vec<SubsetMask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(SubsetMask::EMPTY);
        return out;
    }
    let limit: u128 = 1u128 << n;
    let mut x: u128 = (1u128 << k) - 1;
    while x < limit {
        out.push(SubsetMask(x as u64));
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// One subset of `[n]`. Serialised as its sorted element list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct SubsetMask(u64);

impl From<SubsetMask> for Vec<u32> {
    fn from(m: SubsetMask) -> Self {
        m.elements().collect()
    }
}

impl TryFrom<Vec<u32>> for SubsetMask {
    type Error = Error;

    fn try_from(elements: Vec<u32>) -> Result<Self> {
        SubsetMask::from_elements(elements)
    }
}

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    /// Builds a mask from 1-based element labels.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::Domain(format!("element {e} is not in 1..={MAX_GROUND}")));
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(Error::Domain(format!("element {e} listed twice")));
            }
            bits |= bit;
        }
        Ok(SubsetMask(bits))
    }

    /// `[k] = {1, ..., k}`.
    pub fn prefix(k: u32) -> Self {
        if k >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << k) - 1)
        }
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & other.0 == self.0
    }

    pub const fn is_strict_subset_of(self, other: SubsetMask) -> bool {
        self.0 != other.0 && self.is_subset_of(other)
    }

    /// True iff the two sets are distinct and one contains the other.
    pub const fn is_comparable(self, other: SubsetMask) -> bool {
        let meet = self.0 & other.0;
        self.0 != other.0 && (meet == self.0 || meet == other.0)
    }

    pub const fn contains_element(self, e: u32) -> bool {
        e >= 1 && e <= 64 && self.0 >> (e - 1) & 1 == 1
    }

    pub const fn with_element(self, e: u32) -> Self {
        SubsetMask(self.0 | 1u64 << (e - 1))
    }

    pub const fn without_element(self, e: u32) -> Self {
        SubsetMask(self.0 & !(1u64 << (e - 1)))
    }

    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// 1-based element labels in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros();
                rest &= rest - 1;
                Some(e + 1)
            }
        })
    }

    /// Every subset of this set, including itself and the empty set.
    pub fn submasks(self) -> Submasks {
        Submasks { top: self.0, next: Some(self.0) }
    }

    /// Image under a relabelling of the ground set: element `i` goes to
    /// `perm[i - 1] + 1`.
    pub fn permute(self, perm: &[u32]) -> SubsetMask {
        let mut bits = 0u64;
        for e in self.elements() {
            bits |= 1u64 << perm[(e - 1) as usize];
        }
        SubsetMask(bits)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the submasks of a mask, largest first.
pub struct Submasks {
    top: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some((cur - 1) & self.top) };
        Some(SubsetMask(cur))
    }
}

/// A duplicate-free family of subsets of `[n]`, sorted by mask value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn empty(ground: GroundSet) -> Self {
        SetFamily { ground, members: Vec::new() }
    }

    /// Validates, sorts and deduplicates the given masks.
    pub fn new<I: IntoIterator<Item = SubsetMask>>(ground: GroundSet, masks: I) -> Result<Self> {
        let mut members: Vec<SubsetMask> = masks.into_iter().collect();
        for &m in &members {
            ground.check(m)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { ground, members })
    }

    /// Convenience constructor from element lists, e.g. `&[&[1], &[1, 2]]`.
    pub fn from_sets(n: u32, sets: &[&[u32]]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let masks =
            sets.iter().map(|s| SubsetMask::from_elements(s.iter().copied())).collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, masks)
    }

    /// The whole Boolean lattice `2^[n]`.
    pub fn power_set(ground: GroundSet) -> Self {
        SetFamily { ground, members: ground.all_subsets().collect() }
    }

    /// The complete layer `k` of `2^[n]`.
    pub fn layer(ground: GroundSet, k: u32) -> Self {
        SetFamily { ground, members: ground.layer(k) }
    }

    pub(crate) fn from_sorted_unchecked(ground: GroundSet, members: Vec<SubsetMask>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { ground, members }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    pub fn index_of(&self, mask: SubsetMask) -> Option<usize> {
        self.members.binary_search(&mask).ok()
    }

    pub fn with(&self, mask: SubsetMask) -> Result<Self> {
        self.ground.check(mask)?;
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&mask) {
            members.insert(pos, mask);
        }
        Ok(SetFamily { ground: self.ground, members })
    }

    pub fn without(&self, mask: SubsetMask) -> Self {
        let members = self.members.iter().copied().filter(|&m| m != mask).collect();
        SetFamily { ground: self.ground, members }
    }

    pub fn union(&self, other: &SetFamily) -> Result<Self> {
        self.same_ground(other)?;
        SetFamily::new(self.ground, self.iter().chain(other.iter()))
    }

    pub fn filter<P: FnMut(SubsetMask) -> bool>(&self, mut keep: P) -> Self {
        let members = self.members.iter().copied().filter(|&m| keep(m)).collect();
        SetFamily { ground: self.ground, members }
    }

    pub(crate) fn same_ground(&self, other: &SetFamily) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    /// Largest member size minus smallest member size.
    pub fn height(&self) -> Result<u32> {
        let lo = self.iter().map(SubsetMask::size).min();
        let hi = self.iter().map(SubsetMask::size).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(Error::Domain("height of an empty family".into())),
        }
    }

    /// Number of members on each layer `0..=n`.
    pub fn layer_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n() as usize + 1];
        for m in self.iter() {
            counts[m.size() as usize] += 1;
        }
        counts
    }

    pub fn is_antichain(&self) -> bool {
        self.find_two_chain().is_none()
    }

    /// Some comparable pair `(smaller, larger)`, if one exists.
    pub fn find_two_chain(&self) -> Option<(SubsetMask, SubsetMask)> {
        let lookup = MemberLookup::new(self);
        for &b in &self.members {
            if let Some(a) = lookup.members_strictly_below(self, b).next() {
                return Some((a, b));
            }
        }
        None
    }

    /// Image under a permutation of the ground elements (`perm` is 0-based).
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        let n = self.n() as usize;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::Domain(format!("permutation of length {} for n = {n}", perm.len())));
        }
        for &p in perm {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation of 0..{n}")));
            }
        }
        SetFamily::new(self.ground, self.iter().map(|m| m.permute(perm)))
    }

    /// Members as sorted 1-based element lists, in mask order.
    pub fn to_element_lists(&self) -> Vec<Vec<u32>> {
        self.iter().map(|m| m.elements().collect()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// On-disk family format: `{"n": 3, "sets": [[1], [1, 3]]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    n: u32,
    sets: Vec<Vec<u32>>,
}

impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyFile { n: self.n(), sets: self.to_element_lists() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = FamilyFile::deserialize(d)?;
        let ground = GroundSet::new(file.n).map_err(D::Error::custom)?;
        let mut masks = Vec::with_capacity(file.sets.len());
        for set in &file.sets {
            let mask = SubsetMask::from_elements(set.iter().copied()).map_err(D::Error::custom)?;
            ground.check(mask).map_err(D::Error::custom)?;
            masks.push(mask);
        }
        let family = SetFamily::new(ground, masks.iter().copied()).map_err(D::Error::custom)?;
        if family.len() != masks.len() {
            return Err(D::Error::custom("duplicate set in family"));
        }
        Ok(family)
    }
}

/// Member-index lookup: a dense table for small ground sets, a hash map otherwise.
pub(crate) enum MemberLookup {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

const DENSE_LIMIT: u32 = 22;
const ABSENT: u32 = u32::MAX;

impl MemberLookup {
    pub(crate) fn new(family: &SetFamily) -> Self {
        if family.n() <= DENSE_LIMIT {
            let mut table = vec![ABSENT; 1usize << family.n()];
            for (i, m) in family.iter().enumerate() {
                table[m.bits() as usize] = i as u32;
            }
            MemberLookup::Dense(table)
        } else {
            MemberLookup::Sparse(family.iter().enumerate().map(|(i, m)| (m.bits(), i as u32)).collect())
        }
    }

    #[inline]
    pub(crate) fn get(&self, mask: SubsetMask) -> Option<usize> {
        match self {
            MemberLookup::Dense(t) => match t[mask.bits() as usize] {
                ABSENT => None,
                i => Some(i as usize),
            },
            MemberLookup::Sparse(h) => h.get(&mask.bits()).map(|&i| i as usize),
        }
    }

    /// Members that are proper subsets of `top`. Walks submasks of `top` when
    /// that is cheaper than scanning the family.
    pub(crate) fn members_strictly_below<'a>(
        &'a self,
        family: &'a SetFamily,
        top: SubsetMask,
    ) -> Box<dyn Iterator<Item = SubsetMask> + 'a> {
        let size = top.size();
        if size < 63 && (1u64 << size) <= family.len() as u64 {
            Box::new(top.submasks().skip(1).filter(move |&m| self.get(m).is_some()))
        } else {
            Box::new(family.iter().filter(move |&m| m.is_strict_subset_of(top)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(elems: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(elems.iter().copied()).unwrap()
    }

    #[test]
    fn comparability_examples() {
        let g = GroundSet::new(3).unwrap();
        assert!(g.is_comparable(m(&[1]), m(&[1, 2])).unwrap());
        assert!(!g.is_comparable(m(&[1]), m(&[2])).unwrap());
        assert!(!g.is_comparable(m(&[1, 3]), m(&[1, 2])).unwrap());
        assert!(!g.is_comparable(m(&[1]), m(&[1])).unwrap());
    }

    #[test]
    fn comparability_rejects_foreign_masks() {
        let g = GroundSet::new(2).unwrap();
        assert!(matches!(g.is_comparable(m(&[1]), m(&[1, 3])), Err(Error::MaskOutOfRange { .. })));
    }

    #[test]
    fn ground_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(64).is_err());
        assert_eq!(GroundSet::new(63).unwrap().full().size(), 63);
    }

    #[test]
    fn layers_are_complete_and_sorted() {
        let g = GroundSet::new(5).unwrap();
        let sizes: Vec<usize> = (0..=5).map(|k| g.layer(k).len()).collect();
        assert_eq!(sizes, vec![1, 5, 10, 10, 5, 1]);
        let l2 = g.layer(2);
        assert!(l2.windows(2).all(|w| w[0] < w[1]));
        assert!(l2.iter().all(|x| x.size() == 2));
        assert!(g.layer(6).is_empty());
    }

    #[test]
    fn family_is_sorted_and_deduplicated() {
        let f = SetFamily::from_sets(3, &[&[2, 3], &[1], &[1], &[]]).unwrap();
        assert_eq!(f.members(), &[m(&[]), m(&[1]), m(&[2, 3])]);
        assert!(f.contains(m(&[1])));
        assert!(!f.contains(m(&[2])));
        assert!(SetFamily::from_sets(2, &[&[3]]).is_err());
    }

    #[test]
    fn height_examples() {
        let g = GroundSet::new(4).unwrap();
        assert_eq!(SetFamily::layer(g, 2).height().unwrap(), 0);
        let ends = SetFamily::new(g, [SubsetMask::EMPTY, g.full()]).unwrap();
        assert_eq!(ends.height().unwrap(), 4);
        assert!(SetFamily::empty(g).height().is_err());
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<u64> = SubsetMask::from_bits(0b101).submasks().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001, 0]);
        assert_eq!(SubsetMask::EMPTY.submasks().count(), 1);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let f = SetFamily::from_sets(3, &[&[1], &[1, 3], &[2]]).unwrap();
        let text = f.to_json();
        assert_eq!(text, r#"{"n":3,"sets":[[1],[2],[1,3]]}"#);
        assert_eq!(SetFamily::from_json(&text).unwrap(), f);
        assert!(SetFamily::from_json(r#"{"n":2,"sets":[[3]]}"#).is_err());
        assert!(SetFamily::from_json(r#"{"n":2,"sets":[[1],[1]]}"#).is_err());
        assert!(SetFamily::from_json(r#"{"n":2,"sets":[[1,1]]}"#).is_err());
        assert!(SetFamily::from_json(r#"{"n":0,"sets":[]}"#).is_err());
        let err = SetFamily::from_json("{\"n\": 2,\n \"sets\": [[1,]]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn relabel_checks_permutation() {
        let f = SetFamily::from_sets(3, &[&[1], &[1, 2]]).unwrap();
        let g = f.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(g, SetFamily::from_sets(3, &[&[3], &[1, 3]]).unwrap());
        assert!(f.relabel(&[0, 0, 1]).is_err());
        assert!(f.relabel(&[0, 1]).is_err());
    }

    #[test]
    fn display_uses_element_labels() {
        assert_eq!(m(&[1, 3]).to_string(), "{1,3}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
    }
}
