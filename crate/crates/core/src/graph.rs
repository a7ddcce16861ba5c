//! Comparability graph `G_F`, its cover subgraph, and component structure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{MemberLookup, SetFamily, SubsetMask};
use crate::unionfind::RollbackUnionFind;

/// Order (vertex count) and size (edge count) of one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub order: usize,
    pub size: u64,
}

/// Component decomposition of `G_F` without the edge list.
///
/// Labels are numbered by the first member (in mask order) of each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub ids: Vec<usize>,
    pub stats: Vec<ComponentStats>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.stats.len()
    }

    pub fn max_order(&self) -> usize {
        self.stats.iter().map(|c| c.order).max().unwrap_or(0)
    }

    pub fn orders(&self) -> Vec<usize> {
        self.stats.iter().map(|c| c.order).collect()
    }

    pub fn total_edges(&self) -> u64 {
        self.stats.iter().map(|c| c.size).sum()
    }

    /// Member indices of every component.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.count()];
        for (v, &c) in self.ids.iter().enumerate() {
            groups[c].push(v);
        }
        groups
    }

    /// Every component as its own family.
    pub fn families(&self, family: &SetFamily) -> Vec<SetFamily> {
        self.groups()
            .into_iter()
            .map(|g| {
                let members = g.into_iter().map(|i| family.members()[i]).collect();
                SetFamily::from_sorted_unchecked(family.ground(), members)
            })
            .collect()
    }

    /// The members of the listed components on each side. Every component
    /// must be listed exactly once.
    pub fn split(
        &self,
        family: &SetFamily,
        side_a: &[usize],
        side_b: &[usize],
    ) -> Result<(SetFamily, SetFamily)> {
        let mut side = vec![None; self.count()];
        let listed = side_a.iter().map(|&c| (c, 0u8)).chain(side_b.iter().map(|&c| (c, 1u8)));
        for (c, label) in listed {
            let slot = side.get_mut(c).ok_or_else(|| {
                Error::Domain(format!("component {c} does not exist ({} components)", self.count()))
            })?;
            if slot.replace(label).is_some() {
                return Err(Error::Domain(format!("component {c} is listed twice")));
            }
        }
        if let Some(c) = side.iter().position(Option::is_none) {
            return Err(Error::Domain(format!("component {c} is on neither side")));
        }
        let pick = |label: u8| {
            let members = family
                .iter()
                .zip(&self.ids)
                .filter(|&(_, &c)| side[c] == Some(label))
                .map(|(m, _)| m)
                .collect();
            SetFamily::from_sorted_unchecked(family.ground(), members)
        };
        Ok((pick(0), pick(1)))
    }
}

/// Components of `G_F` computed without materialising edges.
pub fn components(family: &SetFamily) -> Components {
    let lookup = MemberLookup::new(family);
    let mut uf = RollbackUnionFind::new(family.len());
    let mut below_counts = vec![0u64; family.len()];
    for (j, &b) in family.members().iter().enumerate() {
        for a in lookup.members_strictly_below(family, b) {
            let i = lookup.get(a).expect("lookup yields members");
            uf.union(i, j);
            below_counts[j] += 1;
        }
    }
    let (ids, count) = uf.labels();
    let mut stats = vec![ComponentStats { order: 0, size: 0 }; count];
    for (v, &c) in ids.iter().enumerate() {
        stats[c].order += 1;
        stats[c].size += below_counts[v];
    }
    Components { ids, stats }
}

/// `G_F` (or its cover subgraph `G'_F`) with explicit edges.
#[derive(Clone, Debug)]
pub struct ComparabilityGraph {
    family: SetFamily,
    edges: Vec<(usize, usize)>,
    components: Components,
}

impl ComparabilityGraph {
    fn from_edges(family: SetFamily, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        let mut uf = RollbackUnionFind::new(family.len());
        for &(i, j) in &edges {
            uf.union(i, j);
        }
        let (ids, count) = uf.labels();
        let mut stats = vec![ComponentStats { order: 0, size: 0 }; count];
        for &c in &ids {
            stats[c].order += 1;
        }
        for &(i, _) in &edges {
            stats[ids[i]].size += 1;
        }
        ComparabilityGraph { family, edges, components: Components { ids, stats } }
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// Edges as member-index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    pub fn component_ids(&self) -> &[usize] {
        &self.components.ids
    }

    pub fn component_count(&self) -> usize {
        self.components.count()
    }

    pub fn is_connected(&self) -> bool {
        self.components.count() <= 1
    }

    pub fn edge_masks(&self) -> impl Iterator<Item = (SubsetMask, SubsetMask)> + '_ {
        let m = self.family.members();
        self.edges.iter().map(move |&(i, j)| (m[i], m[j]))
    }
}

/// `G_F`: one edge per comparable pair of members.
pub fn comparability_graph(family: &SetFamily) -> ComparabilityGraph {
    let lookup = MemberLookup::new(family);
    let mut edges = Vec::new();
    for (j, &b) in family.members().iter().enumerate() {
        for a in lookup.members_strictly_below(family, b) {
            // Members are sorted by mask and a proper subset has a smaller mask.
            edges.push((lookup.get(a).expect("member"), j));
        }
    }
    ComparabilityGraph::from_edges(family.clone(), edges)
}

/// `G'_F`: only the containments `X ⊂ Y` with `|Y| = |X| + 1`.
pub fn cover_graph(family: &SetFamily) -> ComparabilityGraph {
    let lookup = MemberLookup::new(family);
    let full = family.ground().full().bits();
    let mut edges = Vec::new();
    for (i, &a) in family.members().iter().enumerate() {
        let mut free = full & !a.bits();
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free &= free - 1;
            if let Some(j) = lookup.get(SubsetMask::from_bits(a.bits() | bit)) {
                edges.push((i, j));
            }
        }
    }
    ComparabilityGraph::from_edges(family.clone(), edges)
}

/// Number of comparable pairs, i.e. the edge count of `G_F`.
pub fn count_two_chains(family: &SetFamily) -> u64 {
    let lookup = MemberLookup::new(family);
    family.iter().map(|b| lookup.members_strictly_below(family, b).count() as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GroundSet;

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::from_sets(n, sets).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = comparability_graph(&fam(2, &[&[], &[1]]));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.components().orders(), vec![2]);
    }

    #[test]
    fn middle_layer_is_edgeless() {
        let f = SetFamily::layer(GroundSet::new(4).unwrap(), 2);
        let g = comparability_graph(&f);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.component_count(), 6);
        assert!(g.components().orders().iter().all(|&o| o == 1));
    }

    #[test]
    fn two_diamond_components() {
        let g = comparability_graph(&fam(3, &[&[1], &[1, 3], &[2], &[2, 3]]));
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.components().orders(), vec![2, 2]);
        assert_eq!(g.components().stats.iter().map(|c| c.size).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn cover_edges_skip_long_containments() {
        let f = fam(2, &[&[], &[1], &[1, 2]]);
        let covers: Vec<_> = cover_graph(&f).edge_masks().collect();
        let e = |a: &[u32], b: &[u32]| {
            (
                SubsetMask::from_elements(a.iter().copied()).unwrap(),
                SubsetMask::from_elements(b.iter().copied()).unwrap(),
            )
        };
        assert_eq!(covers, vec![e(&[], &[1]), e(&[1], &[1, 2])]);
        assert_eq!(cover_graph(&fam(2, &[&[], &[1, 2]])).edge_count(), 0);
        let cube = SetFamily::power_set(GroundSet::new(2).unwrap());
        assert_eq!(cover_graph(&cube).edge_count(), 4);
    }

    #[test]
    fn two_chain_counts() {
        assert_eq!(count_two_chains(&fam(2, &[&[], &[1], &[2]])), 2);
        assert_eq!(count_two_chains(&fam(3, &[&[1], &[2], &[3]])), 0);
        let cube = SetFamily::power_set(GroundSet::new(2).unwrap());
        assert_eq!(count_two_chains(&cube), 5);
        // 3^n - 2^n comparable pairs in the full cube.
        let cube6 = SetFamily::power_set(GroundSet::new(6).unwrap());
        assert_eq!(count_two_chains(&cube6), 729 - 64);
    }

    #[test]
    fn edge_free_components_match_graph() {
        let f = fam(4, &[&[1], &[1, 2], &[3], &[3, 4], &[2, 3, 4], &[1, 2, 4]]);
        let a = components(&f);
        let g = comparability_graph(&f);
        assert_eq!(&a, g.components());
        assert_eq!(a.total_edges(), g.edge_count() as u64);
    }
}
