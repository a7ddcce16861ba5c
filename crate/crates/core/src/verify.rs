//! Property suites that check the inequalities and structural facts on
//! explicit or generated instances, stopping at the first counterexample.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::blym::{blym_sum, diamond_blym_sum};
use crate::colouring::{find_rainbow_cycle, is_proper, layer_colouring, LayerPairGraph, MAX_CYCLE_LEN};
use crate::constructions::{disconnected_extremal, full_layer_pair};
use crate::error::{Error, Result};
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::graph::components;
use crate::numeric::{integer, rational_string};
use crate::random::{
    random_all_diamond_family, random_family, random_layer_pair, random_order_bounded, seeded,
};
use crate::search::disconnected_optima;
use crate::shadow::{boundary_pair, kk_shadow_bound, lower_shadow, technical_bound_check, TechnicalMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Blym,
    DiamondBlym,
    Kk,
    Technical,
    Colouring,
    FactAb,
    KeyLemma,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Blym,
        Theorem::DiamondBlym,
        Theorem::Kk,
        Theorem::Technical,
        Theorem::Colouring,
        Theorem::FactAb,
        Theorem::KeyLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Blym => "blym",
            Theorem::DiamondBlym => "diamond-blym",
            Theorem::Kk => "kk",
            Theorem::Technical => "technical",
            Theorem::Colouring => "colouring",
            Theorem::FactAb => "fact-ab",
            Theorem::KeyLemma => "key-lemma",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Theorem::ALL.iter().map(|t| t.name()).collect();
            Error::Domain(format!("unknown theorem '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

/// Inputs shared by all suites; each suite reads what it needs.
#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub family: Option<SetFamily>,
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub theorem: Theorem,
    pub instances: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
    pub details: serde_json::Value,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    instances: u64,
    failures: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { instances: 0, failures: 0, counterexample: None }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn finish(self, theorem: Theorem, details: serde_json::Value) -> VerifyReport {
        VerifyReport {
            theorem,
            instances: self.instances,
            failures: self.failures,
            counterexample: self.counterexample,
            details,
        }
    }
}

pub fn verify(theorem: Theorem, params: &VerifyParams) -> Result<VerifyReport> {
    match theorem {
        Theorem::Blym => verify_blym(params),
        Theorem::DiamondBlym => verify_diamond_blym(params),
        Theorem::Kk => verify_kk(params),
        Theorem::Technical => verify_technical(params),
        Theorem::Colouring => verify_colouring(params),
        Theorem::FactAb => verify_fact_ab(params),
        Theorem::KeyLemma => verify_key_lemma(params),
    }
}

fn sum_details(sum: &crate::numeric::Rational) -> serde_json::Value {
    json!({ "sum": rational_string(sum), "tight": *sum == integer(1) })
}

/// `Σ a_k / C(n, k) ≤ 1` for antichains: the given one, or random ones.
pub fn verify_blym(params: &VerifyParams) -> Result<VerifyReport> {
    let mut tally = Tally::new();
    if let Some(f) = &params.family {
        let sum = blym_sum(f)?;
        tally.check(sum <= integer(1), || format!("{f} has sum {}", rational_string(&sum)));
        return Ok(tally.finish(Theorem::Blym, sum_details(&sum)));
    }
    let n = params.n.unwrap_or(6);
    let mut rng = seeded(params.seed);
    for _ in 0..params.samples.unwrap_or(1000) {
        let f = random_order_bounded(&mut rng, n, 1)?;
        let sum = blym_sum(&f)?;
        tally.check(sum <= integer(1), || format!("{f} has sum {}", rational_string(&sum)));
    }
    Ok(tally.finish(Theorem::Blym, json!({ "n": n, "seed": params.seed })))
}

/// Diamond BLYM sum ≤ 1 for all-diamond families.
pub fn verify_diamond_blym(params: &VerifyParams) -> Result<VerifyReport> {
    let mut tally = Tally::new();
    if let Some(f) = &params.family {
        let sum = diamond_blym_sum(f)?;
        tally.check(sum <= integer(1), || format!("{f} has diamond sum {}", rational_string(&sum)));
        return Ok(tally.finish(Theorem::DiamondBlym, sum_details(&sum)));
    }
    let n = params.n.unwrap_or(6);
    let max_height = params.k.unwrap_or(n);
    let mut rng = seeded(params.seed);
    for _ in 0..params.samples.unwrap_or(1000) {
        let f = random_all_diamond_family(&mut rng, n, max_height)?;
        let sum = diamond_blym_sum(&f)?;
        tally.check(sum <= integer(1), || format!("{f} has diamond sum {}", rational_string(&sum)));
    }
    Ok(tally.finish(Theorem::DiamondBlym, json!({ "n": n, "max_height": max_height, "seed": params.seed })))
}

/// Subfamilies of layer `k` with more than this many sets are sampled
/// instead of enumerated.
const KK_EXHAUSTIVE_LAYER: usize = 20;

/// `|∂F| ≥ kk_shadow_bound(|F|, k, 1)` for families on one layer.
pub fn verify_kk(params: &VerifyParams) -> Result<VerifyReport> {
    let n = params.n.unwrap_or(5);
    let k = params.k.unwrap_or(n / 2);
    let ground = GroundSet::new(n)?;
    if k == 0 || k > n {
        return Err(Error::Domain(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let layer = ground.layer(k);
    let mut tally = Tally::new();
    let test = |f: SetFamily, tally: &mut Tally| -> Result<()> {
        if f.is_empty() {
            return Ok(());
        }
        let shadow = lower_shadow(&f)?.len() as u128;
        let bound = kk_shadow_bound(f.len() as u64, k, 1)?;
        tally.check(shadow >= bound, || format!("{f}: shadow {shadow} < bound {bound}"));
        Ok(())
    };
    let exhaustive = layer.len() <= KK_EXHAUSTIVE_LAYER;
    if exhaustive {
        for sel in 0u64..1 << layer.len() {
            let members = (0..layer.len()).filter(|i| sel >> i & 1 == 1).map(|i| layer[i]);
            test(SetFamily::new(ground, members)?, &mut tally)?;
        }
    } else {
        let mut rng = seeded(params.seed);
        for _ in 0..params.samples.unwrap_or(10_000) {
            let p = rng.random_range(0.0..1.0);
            let members: Vec<SubsetMask> = layer.iter().copied().filter(|_| rng.random_bool(p)).collect();
            test(SetFamily::new(ground, members)?, &mut tally)?;
        }
    }
    Ok(tally.finish(Theorem::Kk, json!({ "n": n, "k": k, "exhaustive": exhaustive })))
}

/// Visits every `size`-subset of `items` in lexicographic index order.
fn for_each_combination<T: Copy>(
    items: &[T],
    size: usize,
    mut visit: impl FnMut(&[T]) -> Result<()>,
) -> Result<()> {
    if size > items.len() {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut chosen: Vec<T> = Vec::with_capacity(size);
    loop {
        chosen.clear();
        chosen.extend(idx.iter().map(|&i| items[i]));
        visit(&chosen)?;
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + items.len() - size) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Largest `k` for the exhaustive closure-bound suite.
pub const TECHNICAL_MAX_K: u32 = 3;
/// Largest ground set for the exhaustive closure-bound suite.
pub const TECHNICAL_MAX_N: u32 = 6;

/// Down-closure bounds for `k + 1` and `k` sets of size ≥ k, every
/// instance in `[n]` for `1 ≤ k ≤ 3`.
pub fn verify_technical(params: &VerifyParams) -> Result<VerifyReport> {
    let n = params.n.unwrap_or(TECHNICAL_MAX_N);
    if n > TECHNICAL_MAX_N {
        return Err(Error::ResourceLimit {
            what: "exhaustive closure-bound ground size",
            limit: TECHNICAL_MAX_N as u64,
            requested: n as u64,
        });
    }
    let ground = GroundSet::new(n)?;
    let mut tally = Tally::new();
    let mut per_k = Vec::new();
    for k in 1..=TECHNICAL_MAX_K.min(n) {
        let pool: Vec<SubsetMask> = ground.all_subsets().filter(|m| m.size() >= k).collect();
        let before = tally.instances;
        for (mode, size) in [(TechnicalMode::KPlusOne, k as usize + 1), (TechnicalMode::K, k as usize)] {
            for_each_combination(&pool, size, |sets| {
                let s = SetFamily::new(ground, sets.iter().copied())?;
                let ok = technical_bound_check(&s, mode)?;
                tally.check(ok, || format!("{s} ({mode:?}) has too small a down-closure"));
                Ok(())
            })?;
        }
        per_k.push(json!({ "k": k, "instances": tally.instances - before }));
    }
    Ok(tally.finish(Theorem::Technical, json!({ "n": n, "per_k": per_k })))
}

/// The element colouring of adjacent-layer pairs is proper and has no
/// rainbow cycle: on the full layers `k, k + 1` if `k` is given, else on
/// random pairs.
pub fn verify_colouring(params: &VerifyParams) -> Result<VerifyReport> {
    let n = params.n.unwrap_or(4);
    let mut tally = Tally::new();
    let test = |g: &LayerPairGraph, tally: &mut Tally| -> Result<()> {
        let coloured = layer_colouring(g);
        let proper = is_proper(&coloured);
        let cycle =
            if g.order() >= 3 { find_rainbow_cycle(&coloured, g.order().min(MAX_CYCLE_LEN))? } else { None };
        tally.check(proper && cycle.is_none(), || {
            format!(
                "layers {}/{}: A = {}, B = {}, proper = {proper}, rainbow cycle = {cycle:?}",
                g.k,
                g.k + 1,
                g.a,
                g.b
            )
        });
        Ok(())
    };
    if let Some(k) = params.k {
        let (a, b) = full_layer_pair(n, k)?;
        let g = LayerPairGraph::new(k, a, b)?;
        test(&g, &mut tally)?;
        return Ok(tally.finish(
            Theorem::Colouring,
            json!({ "n": n, "k": k, "vertices": g.order(), "exhaustive": g.order() <= MAX_CYCLE_LEN }),
        ));
    }
    let mut rng = seeded(params.seed);
    let mut longest = 0;
    for _ in 0..params.samples.unwrap_or(1000) {
        let g = random_layer_pair(&mut rng, n)?;
        longest = longest.max(g.order());
        test(&g, &mut tally)?;
    }
    Ok(tally.finish(
        Theorem::Colouring,
        json!({ "n": n, "seed": params.seed, "exhaustive": longest <= MAX_CYCLE_LEN }),
    ))
}

/// Splits of the largest disconnected families: every maximum family for
/// `n ≤ 5`, the explicit construction beyond that.
pub fn maximal_splits(n: u32) -> Result<Vec<(SetFamily, SetFamily)>> {
    if n <= crate::search::MAX_SEARCH_N {
        return disconnected_optima(n);
    }
    let f = disconnected_extremal(n)?;
    let comps = components(&f);
    let anchor = f.index_of(SubsetMask::prefix(n / 2)).expect("construction contains its anchor");
    let a_side = [comps.ids[anchor]];
    let b_side: Vec<usize> = (0..comps.count()).filter(|&c| c != a_side[0]).collect();
    Ok(vec![comps.split(&f, &a_side, &b_side)?])
}

/// Fact AB and the F⁺/F⁻ exclusion on maximal splits; on random splits,
/// the parts that hold for every split.
pub fn verify_fact_ab(params: &VerifyParams) -> Result<VerifyReport> {
    let n = params.n.unwrap_or(4);
    let mut tally = Tally::new();
    let splits = maximal_splits(n)?;
    for (a, b) in &splits {
        let r = boundary_pair(a, b)?.report;
        tally.check(r.sides_convex && r.cross_closures_disjoint && r.boundary_excludes_family, || {
            format!("A = {a}, B = {b}: {r:?}")
        });
    }
    let mut rng = seeded(params.seed);
    let mut random_splits = 0u64;
    for _ in 0..params.samples.unwrap_or(200) {
        let p = rng.random_range(0.1..0.6);
        let f = random_family(&mut rng, n, p)?;
        let comps = components(&f);
        if comps.count() < 2 {
            continue;
        }
        let mut a_side = Vec::new();
        let mut b_side = Vec::new();
        for c in 0..comps.count() {
            if c == 0 || (c > 1 && rng.random_bool(0.5)) {
                a_side.push(c);
            } else {
                b_side.push(c);
            }
        }
        let (a, b) = comps.split(&f, &a_side, &b_side)?;
        let r = boundary_pair(&a, &b)?.report;
        random_splits += 1;
        tally.check(r.cross_closures_disjoint && r.boundary_excludes_family, || {
            format!("A = {a}, B = {b}: {r:?}")
        });
    }
    Ok(tally.finish(
        Theorem::FactAb,
        json!({ "n": n, "maximal_splits": splits.len(), "random_splits": random_splits, "seed": params.seed }),
    ))
}

/// The size condition linking `F⁺` and `F⁻` on every maximal split.
pub fn verify_key_lemma(params: &VerifyParams) -> Result<VerifyReport> {
    let n = params.n.unwrap_or(4);
    let mut tally = Tally::new();
    let splits = maximal_splits(n)?;
    for (a, b) in &splits {
        let pair = boundary_pair(a, b)?;
        tally.check(pair.report.key_lemma_holds, || {
            format!("A = {a}, B = {b}: F+ = {}, F- = {}", pair.fplus, pair.fminus)
        });
    }
    Ok(tally.finish(Theorem::KeyLemma, json!({ "n": n, "maximal_splits": splits.len() })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sharp_family;
    use crate::numeric::binomial;

    fn params() -> VerifyParams {
        VerifyParams { seed: 11, samples: Some(50), ..VerifyParams::default() }
    }

    #[test]
    fn names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("lym".parse::<Theorem>().is_err());
    }

    #[test]
    fn diamond_blym_on_sharp_family() {
        let p = VerifyParams { family: Some(sharp_family(5, 1).unwrap()), ..params() };
        let r = verify(Theorem::DiamondBlym, &p).unwrap();
        assert!(r.passed());
        assert_eq!(r.details, json!({ "sum": "1/1", "tight": true }));
    }

    #[test]
    fn colouring_on_full_layers() {
        let p = VerifyParams { n: Some(4), k: Some(1), ..params() };
        let r = verify(Theorem::Colouring, &p).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.instances, 1);
    }

    #[test]
    fn kk_exhaustive_on_layer_two() {
        let p = VerifyParams { n: Some(4), k: Some(2), ..params() };
        let r = verify(Theorem::Kk, &p).unwrap();
        assert!(r.passed(), "{r:?}");
        // Every nonempty subfamily of the six 2-sets.
        assert_eq!(r.instances, 63);
    }

    #[test]
    fn technical_counts_instances() {
        let p = VerifyParams { n: Some(3), ..params() };
        let r = verify(Theorem::Technical, &p).unwrap();
        assert!(r.passed(), "{r:?}");
        // Oracle: C(pool, k+1) + C(pool, k) with pool = sets of size ≥ k in [3].
        let pools = [7u64, 4, 1];
        let expected: u64 = (1..=3u64)
            .map(|k| {
                let pool = pools[(k - 1) as usize];
                binomial(pool, k + 1) as u64 + binomial(pool, k) as u64
            })
            .sum();
        assert_eq!(r.instances, expected);
    }

    #[test]
    fn remaining_suites_pass() {
        for t in [Theorem::Blym, Theorem::DiamondBlym, Theorem::FactAb, Theorem::KeyLemma] {
            let r = verify(t, &params()).unwrap();
            assert!(r.passed(), "{t}: {r:?}");
            assert!(r.instances > 0, "{t}");
        }
    }

    #[test]
    fn blym_rejects_non_antichains() {
        let p = VerifyParams { family: Some(SetFamily::from_sets(2, &[&[1], &[1, 2]]).unwrap()), ..params() };
        assert!(verify(Theorem::Blym, &p).is_err());
    }

    #[test]
    fn combinations_are_complete() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 2, 3, 4], 2, |c| {
            seen.push(c.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 2]);
        assert_eq!(seen[5], vec![3, 4]);
    }
}
