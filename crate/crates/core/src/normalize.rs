//! Skip removal at fixed cardinality.
//!
//! A skip of `F` is a set `Y ∉ F` squeezed between two members `X ⊆ Y ⊆ Z`.
//! One step adds the chosen skip and deletes a maximal element of the
//! component that now contains it; repeating until no skip is left gives a
//! skipless family of the same size whose components are no larger.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::graph::components;
use crate::shadow::{down_closure, up_closure};

/// A skip together with one witnessing pair of members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkipReport {
    pub skip: SubsetMask,
    pub witness_below: SubsetMask,
    pub witness_above: SubsetMask,
}

/// All skips, ordered by size and then mask value. Witnesses are the
/// smallest-mask members below and above.
pub fn find_skips(family: &SetFamily) -> Vec<SkipReport> {
    let above = down_closure(family);
    let below = up_closure(family);
    let mut skips: Vec<SkipReport> = above
        .iter()
        .filter(|&y| below.contains(y) && !family.contains(y))
        .map(|y| SkipReport {
            skip: y,
            witness_below: family.iter().find(|x| x.is_subset_of(y)).expect("y is in the up-closure"),
            witness_above: family.iter().find(|z| y.is_subset_of(*z)).expect("y is in the down-closure"),
        })
        .collect();
    skips.sort_by_key(|s| (s.skip.size(), s.skip));
    skips
}

pub fn skip_count(family: &SetFamily) -> usize {
    let above = down_closure(family);
    let below = up_closure(family);
    above.iter().filter(|&y| below.contains(y) && !family.contains(y)).count()
}

/// Outcome of one normalisation step.
#[derive(Clone, Debug, Serialize)]
pub struct SkiplessStep {
    pub family: SetFamily,
    pub added: SubsetMask,
    pub removed: SubsetMask,
    /// Order of the component holding `added` afterwards.
    pub new_component_order: usize,
    /// Order of the component that held the witnesses before the step.
    pub old_component_order: usize,
    /// True if the old component minus its maximal element plus the skip
    /// is not one component any more.
    pub split: bool,
    pub skips_before: usize,
    pub skips_after: usize,
}

/// Fills the first skip (smallest size, then smallest mask) and removes the
/// largest inclusion-maximal member (smallest mask on ties) of its component.
pub fn skipless_step(family: &SetFamily) -> Result<SkiplessStep> {
    let skips = find_skips(family);
    let Some(&chosen) = skips.first() else {
        return Err(Error::Precondition("family is already skipless".into()));
    };
    let comps = components(family);
    let witness = family.index_of(chosen.witness_below).expect("witness is a member");
    let label = comps.ids[witness];
    let component: Vec<SubsetMask> =
        family.iter().zip(&comps.ids).filter(|&(_, &c)| c == label).map(|(m, _)| m).collect();

    let removed = component
        .iter()
        .copied()
        .filter(|&x| !component.iter().any(|&z| x.is_strict_subset_of(z)))
        .min_by_key(|m| (std::cmp::Reverse(m.size()), *m))
        .expect("a nonempty component has a maximal element");

    let next = family.with(chosen.skip)?.without(removed);
    let after = components(&next);
    let pos = next.index_of(chosen.skip).expect("skip was added");
    let new_label = after.ids[pos];
    let new_component_order = after.stats[new_label].order;
    let skips_after = skip_count(&next);

    if skips_after >= skips.len() {
        return Err(Error::Invariant(format!(
            "filling {} and removing {removed} did not reduce skips ({} -> {skips_after})",
            chosen.skip,
            skips.len()
        )));
    }

    Ok(SkiplessStep {
        family: next,
        added: chosen.skip,
        removed,
        new_component_order,
        old_component_order: component.len(),
        split: new_component_order != component.len(),
        skips_before: skips.len(),
        skips_after,
    })
}

/// Trace of a full normalisation.
#[derive(Clone, Debug, Serialize)]
pub struct Normalization {
    pub family: SetFamily,
    pub steps: Vec<SkiplessStep>,
}

impl Normalization {
    /// `(added, removed)` per step.
    pub fn trace(&self) -> Vec<(SubsetMask, SubsetMask)> {
        self.steps.iter().map(|s| (s.added, s.removed)).collect()
    }

    /// Steps whose affected component fell apart.
    pub fn splits(&self) -> usize {
        self.steps.iter().filter(|s| s.split).count()
    }
}

/// Repeats [`skipless_step`] until no skip is left, re-checking the
/// component-order bound `t` after every step.
pub fn make_skipless(family: &SetFamily, t: usize) -> Result<Normalization> {
    let comps = components(family);
    if comps.max_order() > t {
        return Err(Error::Precondition(format!(
            "a component of order {} exceeds t = {t}",
            comps.max_order()
        )));
    }
    let mut current = family.clone();
    let mut steps = Vec::new();
    while skip_count(&current) > 0 {
        let step = skipless_step(&current)?;
        let order = components(&step.family).max_order();
        if order > t {
            return Err(Error::OrderBound {
                bound: t,
                order,
                added: step.added.elements().collect(),
                removed: step.removed.elements().collect(),
            });
        }
        if step.family.len() != family.len() {
            return Err(Error::Invariant("normalisation changed the family size".into()));
        }
        current = step.family.clone();
        steps.push(step);
    }
    Ok(Normalization { family: current, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::from_sets(n, sets).unwrap()
    }

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    /// Oracle: test every candidate set directly against the definition.
    fn skips_by_definition(f: &SetFamily) -> Vec<SubsetMask> {
        let mut out: Vec<SubsetMask> = f
            .ground()
            .all_subsets()
            .filter(|&y| {
                !f.contains(y) && f.iter().any(|x| x.is_subset_of(y)) && f.iter().any(|z| y.is_subset_of(z))
            })
            .collect();
        out.sort_by_key(|s| (s.size(), *s));
        out
    }

    #[test]
    fn find_skips_examples() {
        let skips: Vec<_> = find_skips(&fam(2, &[&[], &[1, 2]])).iter().map(|s| s.skip).collect();
        assert_eq!(skips, vec![m(&[1]), m(&[2])]);
        assert!(find_skips(&fam(4, &[&[1, 2], &[3, 4], &[1, 3]])).is_empty());
        let f = fam(3, &[&[1], &[1, 2, 3]]);
        let skips: Vec<_> = find_skips(&f).iter().map(|s| s.skip).collect();
        assert_eq!(skips, vec![m(&[1, 2]), m(&[1, 3])]);
        assert_eq!(skips, skips_by_definition(&f));
        let r = find_skips(&f)[0];
        assert_eq!((r.witness_below, r.witness_above), (m(&[1]), m(&[1, 2, 3])));
    }

    #[test]
    fn find_skips_matches_definition() {
        let f = fam(5, &[&[], &[1, 2], &[3], &[2, 3, 4, 5], &[1, 4]]);
        let fast: Vec<_> = find_skips(&f).iter().map(|s| s.skip).collect();
        assert_eq!(fast, skips_by_definition(&f));
    }

    #[test]
    fn step_examples() {
        let s = skipless_step(&fam(2, &[&[], &[1, 2]])).unwrap();
        assert_eq!(s.family, fam(2, &[&[], &[1]]));
        assert_eq!((s.added, s.removed), (m(&[1]), m(&[1, 2])));

        let s = skipless_step(&fam(3, &[&[1], &[1, 2, 3]])).unwrap();
        assert_eq!(s.family, fam(3, &[&[1], &[1, 2]]));
        assert_eq!((s.added, s.removed), (m(&[1, 2]), m(&[1, 2, 3])));

        assert!(matches!(skipless_step(&fam(3, &[&[1], &[2]])), Err(Error::Precondition(_))));
    }

    #[test]
    fn make_skipless_examples() {
        let out = make_skipless(&fam(2, &[&[], &[1, 2]]), 2).unwrap();
        assert_eq!(out.family, fam(2, &[&[], &[1]]));
        assert_eq!(out.steps.len(), 1);

        let antichain = fam(3, &[&[1], &[2], &[3]]);
        let out = make_skipless(&antichain, 1).unwrap();
        assert_eq!(out.family, antichain);
        assert!(out.steps.is_empty());

        // ∅ ⊂ {1} ⊂ [3]: the first skip is {2}, and [3] goes.
        let out = make_skipless(&fam(3, &[&[], &[1], &[1, 2, 3]]), 3).unwrap();
        assert_eq!(out.family, fam(3, &[&[], &[1], &[2]]));
        assert!(find_skips(&out.family).is_empty());
        assert_eq!(components(&out.family).orders(), vec![3]);
    }

    #[test]
    fn make_skipless_rejects_oversized_components() {
        assert!(matches!(make_skipless(&fam(2, &[&[], &[1, 2]]), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn split_is_reported() {
        // {1},{2} hang below [3]; the first skip {1,2} keeps them joined.
        let s = skipless_step(&fam(3, &[&[1], &[2], &[1, 2, 3]])).unwrap();
        assert_eq!(s.added, m(&[1, 2]));
        assert!(!s.split);
        assert_eq!(s.new_component_order, 3);
    }
}
