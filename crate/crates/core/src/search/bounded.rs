//! Branch and bound over families whose components have bounded order.
//!
//! Candidates are the subsets on the allowed layers, ordered middle layer
//! first. A node fixes an include/exclude decision for a prefix of that order
//! and keeps the components of the included sets as bitmasks over candidates.
//! A candidate whose inclusion would merge components past `t` can never come
//! back, since components only grow along a branch.
//!
//! The bound splits the cube into disjoint chains (bracket-matching
//! decomposition). Any chain meets at most `t` members, because members on a
//! chain are pairwise comparable and so share a component.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::canon::canonical_form;
use super::{check_n, thread_pool, Budget, SearchOptions, SearchResult, SearchValue, Witness, MAX_SEARCH_N};
use crate::blym::detect_diamond;
use crate::error::{Error, Result};
use crate::family::{GroundSet, SetFamily, SubsetMask};
use crate::graph::{comparability_graph, components};
use crate::numeric::{binomial, Rational};

/// Largest ground set for the Lubell-weighted search.
pub const MAX_LAMBDA_STAR_N: u32 = 4;

/// Decisions fixed before work is handed out as parallel tasks.
const SPLIT_DEPTH: usize = 8;

struct Problem {
    t: u32,
    verts: Vec<SubsetMask>,
    weight: Vec<u64>,
    adj: Vec<u64>,
    /// Chains as candidate indices, heaviest first.
    chains: Vec<Vec<usize>>,
    /// Candidates that are the smallest mask on their layer.
    layer_first: u64,
    all: u64,
    /// Weights are value × `scale`.
    scale: u64,
}

impl Problem {
    fn new(n: u32, t: usize, kmin: u32, kmax: u32, weighted: bool) -> Self {
        let ground = GroundSet::new(n).expect("checked ground size");
        let middle2 = n as i64; // twice the middle layer index
        let mut layers: Vec<u32> = (kmin..=kmax).collect();
        layers.sort_by_key(|&k| ((2 * k as i64 - middle2).abs(), k));

        let scale = if weighted {
            (0..=n).fold(1u64, |l, k| num_integer::lcm(l, binomial(n as u64, k as u64) as u64))
        } else {
            1
        };

        let mut verts = Vec::new();
        let mut weight = Vec::new();
        let mut layer_first = 0u64;
        for &k in &layers {
            let layer = ground.layer(k);
            layer_first |= 1 << verts.len();
            for m in layer {
                verts.push(m);
                weight.push(if weighted { scale / binomial(n as u64, k as u64) as u64 } else { 1 });
            }
        }
        let len = verts.len();
        let adj = (0..len)
            .map(|i| (0..len).filter(|&j| verts[i].is_comparable(verts[j])).fold(0u64, |acc, j| acc | 1 << j))
            .collect();

        let mut by_key: std::collections::BTreeMap<(u64, u64), Vec<usize>> = Default::default();
        for (i, &m) in verts.iter().enumerate() {
            by_key.entry(chain_key(m, n)).or_default().push(i);
        }
        let chains = by_key
            .into_values()
            .map(|mut c| {
                c.sort_by_key(|&i| (std::cmp::Reverse(weight[i]), i));
                c
            })
            .collect();

        Problem {
            t: t.min(64) as u32,
            all: if len == 64 { u64::MAX } else { (1u64 << len) - 1 },
            verts,
            weight,
            adj,
            chains,
            layer_first,
            scale,
        }
    }

    fn len(&self) -> usize {
        self.verts.len()
    }

    /// Undecided candidates that can still join without breaking the bound.
    fn feasible(&self, st: &State, undecided: u64) -> u64 {
        if st.comps.is_empty() {
            return undecided;
        }
        let mut load = [0u32; 64];
        for c in &st.comps {
            let size = c.members.count_ones();
            let mut hit = c.neighbours & undecided;
            while hit != 0 {
                load[hit.trailing_zeros() as usize] += size;
                hit &= hit - 1;
            }
        }
        let mut out = 0u64;
        let mut rest = undecided;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            if load[w] < self.t {
                out |= 1 << w;
            }
            rest &= rest - 1;
        }
        out
    }

    fn bound(&self, available: u64) -> u64 {
        self.chains
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|&&i| available >> i & 1 == 1)
                    .take(self.t as usize)
                    .map(|&i| self.weight[i])
                    .sum::<u64>()
            })
            .sum()
    }

    fn include(&self, st: &State, v: usize) -> State {
        let mut merged = Component { members: 1 << v, neighbours: self.adj[v] };
        let mut comps = Vec::with_capacity(st.comps.len() + 1);
        for c in &st.comps {
            if c.members & self.adj[v] != 0 {
                merged.members |= c.members;
                merged.neighbours |= c.neighbours;
            } else {
                comps.push(*c);
            }
        }
        comps.push(merged);
        State { included: st.included | 1 << v, weight: st.weight + self.weight[v], comps }
    }

    fn family(&self, n: u32, included: u64) -> SetFamily {
        let ground = GroundSet::new(n).expect("checked ground size");
        SetFamily::new(ground, bits(included).map(|i| self.verts[i])).expect("candidates fit")
    }
}

/// Key shared by exactly the sets of one chain of the bracket decomposition:
/// an element outside the set opens a bracket, an element inside closes the
/// nearest open one.
fn chain_key(m: SubsetMask, n: u32) -> (u64, u64) {
    let mut open: Vec<u32> = Vec::new();
    let mut matched = 0u64;
    let mut unmatched = 0u64;
    for e in 0..n {
        if m.bits() >> e & 1 == 1 {
            if let Some(j) = open.pop() {
                matched |= 1 << e | 1 << j;
            } else {
                unmatched |= 1 << e;
            }
        } else {
            open.push(e);
        }
    }
    for j in open {
        unmatched |= 1 << j;
    }
    (m.bits() & matched, unmatched)
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Copy)]
struct Component {
    members: u64,
    neighbours: u64,
}

#[derive(Clone)]
struct State {
    included: u64,
    weight: u64,
    comps: Vec<Component>,
}

struct Task {
    pos: usize,
    state: State,
}

struct Worker<'a> {
    problem: &'a Problem,
    budget: &'a Budget,
    shared: &'a AtomicU64,
    best: Option<(u64, u64)>,
    aborted: bool,
}

impl Worker<'_> {
    fn record(&mut self, st: &State) {
        if self.best.is_none_or(|(w, _)| st.weight > w) {
            self.best = Some((st.weight, st.included));
            self.shared.fetch_max(st.weight, Ordering::Relaxed);
        }
    }

    /// Explores from `pos`; with `split` set, stops at that depth and
    /// collects the open nodes instead.
    fn dfs(&mut self, pos: usize, st: State, split: Option<(usize, &mut Vec<Task>)>) {
        if self.aborted || !self.budget.tick() {
            self.aborted = true;
            return;
        }
        let p = self.problem;
        let undecided = p.all & !((1u64 << pos) - 1);
        let feasible = p.feasible(&st, undecided);
        if split.is_none() {
            self.record(&st);
            let bound = p.bound(st.included | feasible);
            if bound < self.shared.load(Ordering::Relaxed) || self.best.is_some_and(|(w, _)| bound <= w) {
                return;
            }
        }
        if feasible == 0 {
            if let Some((_, tasks)) = split {
                tasks.push(Task { pos, state: st });
            }
            return;
        }
        let v = feasible.trailing_zeros() as usize;
        let mut split = split;
        if let Some((depth, tasks)) = split.as_mut() {
            if v >= *depth {
                tasks.push(Task { pos, state: st });
                return;
            }
        }
        // An optimum's first member can be relabelled to the first set of its layer.
        let may_include = st.included != 0 || p.layer_first >> v & 1 == 1;
        if may_include {
            let next = p.include(&st, v);
            match split.as_mut() {
                Some((d, tasks)) => self.dfs(v + 1, next, Some((*d, &mut **tasks))),
                None => self.dfs(v + 1, next, None),
            }
        }
        self.dfs(v + 1, st, split);
    }
}

fn run(problem: &Problem, opts: SearchOptions) -> (Option<(u64, u64)>, u64, bool) {
    let budget = Budget::new(opts.budget_nodes);
    let shared = AtomicU64::new(0);
    let root = State { included: 0, weight: 0, comps: Vec::new() };
    let mut tasks = Vec::new();
    let mut splitter = Worker { problem, budget: &budget, shared: &shared, best: None, aborted: false };
    splitter.dfs(0, root, Some((SPLIT_DEPTH.min(problem.len()), &mut tasks)));

    let solve = |task: Task| {
        let mut w = Worker { problem, budget: &budget, shared: &shared, best: None, aborted: false };
        w.dfs(task.pos, task.state, None);
        (w.best, w.aborted)
    };
    let results: Vec<(Option<(u64, u64)>, bool)> = if opts.jobs <= 1 {
        tasks.into_iter().map(solve).collect()
    } else {
        thread_pool(opts.jobs).install(|| tasks.into_par_iter().map(solve).collect())
    };

    let aborted = splitter.aborted || results.iter().any(|r| r.1);
    // First task holding the maximum wins, matching a sequential run.
    let best = results.iter().filter_map(|r| r.0).fold(None, |acc: Option<(u64, u64)>, cand| match acc {
        Some((w, _)) if w >= cand.0 => acc,
        _ => Some(cand),
    });
    (best, budget.used(), !aborted)
}

fn validate(n: u32, t: usize, kmin: u32, kmax: u32, limit: u32) -> Result<()> {
    check_n(n, limit)?;
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    if kmin > kmax || kmax > n {
        return Err(Error::Domain(format!("need 0 ≤ kmin ≤ kmax ≤ n, got [{kmin}, {kmax}] with n = {n}")));
    }
    Ok(())
}

fn size_result(n: u32, t: usize, kmin: u32, kmax: u32, opts: SearchOptions) -> Result<SearchResult> {
    validate(n, t, kmin, kmax, MAX_SEARCH_N)?;
    let problem = Problem::new(n, t, kmin, kmax, false);
    let (best, nodes, proven) = run(&problem, opts);
    let (value, included) = best.unwrap_or((0, 0));
    Ok(SearchResult {
        value: SearchValue::Integer(value),
        witness: Witness::Family { family: problem.family(n, included) },
        nodes_explored: nodes,
        proven_optimal: proven,
    })
}

/// Largest family on `2^[n]` whose comparability components have order ≤ t.
pub fn la_exact(n: u32, t: usize, opts: SearchOptions) -> Result<SearchResult> {
    size_result(n, t, 0, n, opts)
}

/// As [`la_exact`] with member sizes confined to `kmin..=kmax`.
pub fn la_exact_restricted(
    n: u32,
    t: usize,
    kmin: u32,
    kmax: u32,
    opts: SearchOptions,
) -> Result<SearchResult> {
    size_result(n, t, kmin, kmax, opts)
}

/// Largest Lubell value of a family whose components have order ≤ t.
pub fn lambda_star_exact(n: u32, t: usize, opts: SearchOptions) -> Result<SearchResult> {
    validate(n, t, 0, n, MAX_LAMBDA_STAR_N)?;
    let problem = Problem::new(n, t, 0, n, true);
    let (best, nodes, proven) = run(&problem, opts);
    let (value, included) = best.unwrap_or((0, 0));
    Ok(SearchResult {
        value: SearchValue::Rational(Rational::new(value.into(), problem.scale.into())),
        witness: Witness::Family { family: problem.family(n, included) },
        nodes_explored: nodes,
        proven_optimal: proven,
    })
}

/// One isomorphism class of optimal families.
#[derive(Clone, Debug, Serialize)]
pub struct OptimaClass {
    pub representative: SetFamily,
    /// Optimal families in this class.
    pub count: u64,
    /// Component shapes, e.g. `diamond(2)` or `order 4, 3 edges`.
    pub shapes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimaSummary {
    pub n: u32,
    pub t: usize,
    pub value: u64,
    pub total: u64,
    pub classes: Vec<OptimaClass>,
    /// True if some optimum has a component that is not a diamond.
    pub non_diamond_component: bool,
    pub nodes_explored: u64,
    pub complete: bool,
}

fn shape(component: &SetFamily) -> String {
    match detect_diamond(component) {
        Some(d) => format!("diamond({})", d.height()),
        None => format!("order {}, {} edges", component.len(), comparability_graph(component).edge_count()),
    }
}

/// Every maximum-size family with components of order ≤ t, grouped up to
/// relabelling of the ground set.
pub fn enumerate_optima(n: u32, t: usize, opts: SearchOptions) -> Result<OptimaSummary> {
    validate(n, t, 0, n, 4)?;
    let best = la_exact(n, t, opts)?;
    let target = best.value.as_integer().expect("size search");
    let problem = Problem::new(n, t, 0, n, false);
    let budget = Budget::new(opts.budget_nodes);
    let mut found = Vec::new();
    let mut aborted = !best.proven_optimal;
    collect(
        &problem,
        &budget,
        target,
        0,
        State { included: 0, weight: 0, comps: vec![] },
        &mut found,
        &mut aborted,
    );

    let mut classes: std::collections::BTreeMap<Vec<u64>, OptimaClass> = Default::default();
    for included in found.iter().copied() {
        let family = problem.family(n, included);
        let key = canonical_form(&family);
        classes.entry(key).and_modify(|c| c.count += 1).or_insert_with(|| {
            let mut shapes: Vec<String> = components(&family).families(&family).iter().map(shape).collect();
            shapes.sort();
            OptimaClass { representative: family, count: 1, shapes }
        });
    }
    let classes: Vec<OptimaClass> = classes.into_values().collect();
    Ok(OptimaSummary {
        n,
        t,
        value: target,
        total: found.len() as u64,
        non_diamond_component: classes.iter().any(|c| c.shapes.iter().any(|s| !s.starts_with("diamond"))),
        classes,
        nodes_explored: best.nodes_explored + budget.used(),
        complete: !aborted,
    })
}

fn collect(
    p: &Problem,
    budget: &Budget,
    target: u64,
    pos: usize,
    st: State,
    found: &mut Vec<u64>,
    aborted: &mut bool,
) {
    if *aborted || !budget.tick() {
        *aborted = true;
        return;
    }
    if st.weight == target {
        found.push(st.included);
        return;
    }
    let undecided = p.all & !((1u64 << pos) - 1);
    let feasible = p.feasible(&st, undecided);
    if feasible == 0 || p.bound(st.included | feasible) < target {
        return;
    }
    let v = feasible.trailing_zeros() as usize;
    collect(p, budget, target, v + 1, p.include(&st, v), found, aborted);
    collect(p, budget, target, v + 1, st, found, aborted);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Objective;

    /// Oracle: every subfamily of the allowed layers, checked directly.
    fn brute_force(n: u32, t: usize, kmin: u32, kmax: u32) -> u64 {
        let g = GroundSet::new(n).unwrap();
        let cands: Vec<SubsetMask> = g.all_subsets().filter(|m| (kmin..=kmax).contains(&m.size())).collect();
        (0u64..1 << cands.len())
            .filter_map(|sel| {
                let f = SetFamily::new(g, bits(sel).map(|i| cands[i])).unwrap();
                (components(&f).max_order() <= t).then_some(f.len() as u64)
            })
            .max()
            .unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn chain_keys_partition_into_chains() {
        for n in 1..=6 {
            let g = GroundSet::new(n).unwrap();
            let mut by_key: std::collections::HashMap<(u64, u64), Vec<SubsetMask>> = Default::default();
            for m in g.all_subsets() {
                by_key.entry(chain_key(m, n)).or_default().push(m);
            }
            for chain in by_key.values() {
                for a in chain {
                    for b in chain {
                        assert!(a == b || a.is_comparable(*b), "{a} {b}");
                    }
                }
            }
            let middle = binomial(n as u64, (n / 2) as u64) as usize;
            assert_eq!(by_key.len(), middle, "n={n}");
        }
    }

    #[test]
    fn la_examples() {
        assert_eq!(la_exact(3, 1, opts()).unwrap().value, SearchValue::Integer(3));
        assert_eq!(la_exact(3, 2, opts()).unwrap().value, SearchValue::Integer(4));
        let r = la_exact(4, 4, opts()).unwrap();
        assert_eq!(r.value, SearchValue::Integer(8));
        assert!(r.proven_optimal);
        r.certify(Objective::BoundedSize { t: 4, kmin: 0, kmax: 4 }).unwrap();
    }

    #[test]
    fn la_matches_brute_force() {
        for n in 1..=3 {
            for t in 1..=(1usize << n) {
                let r = la_exact(n, t, opts()).unwrap();
                assert_eq!(r.value.as_integer(), Some(brute_force(n, t, 0, n)), "n={n} t={t}");
                r.certify(Objective::BoundedSize { t, kmin: 0, kmax: n }).unwrap();
            }
        }
        for t in [1, 2, 3, 5] {
            let r = la_exact_restricted(4, t, 1, 3, opts()).unwrap();
            assert_eq!(r.value.as_integer(), Some(brute_force(4, t, 1, 3)), "t={t}");
        }
    }

    #[test]
    fn restricted_examples() {
        assert_eq!(la_exact_restricted(4, 1, 2, 2, opts()).unwrap().value, SearchValue::Integer(6));
        assert_eq!(la_exact_restricted(4, 16, 0, 4, opts()).unwrap().value, SearchValue::Integer(16));
        assert_eq!(la_exact_restricted(3, 2, 1, 2, opts()).unwrap().value, SearchValue::Integer(4));
        assert!(la_exact_restricted(3, 2, 2, 1, opts()).is_err());
        assert!(la_exact(6, 1, opts()).is_err());
        assert!(la_exact(3, 0, opts()).is_err());
    }

    #[test]
    fn lambda_star_examples() {
        let r = lambda_star_exact(2, 1, opts()).unwrap();
        assert_eq!(r.value.as_rational(), crate::numeric::integer(1));
        let r = lambda_star_exact(2, 4, opts()).unwrap();
        assert_eq!(r.value.as_rational(), crate::numeric::integer(3));
        // {∅, [3]} is a single component of order 2 with Lubell value 2.
        let r = lambda_star_exact(3, 2, opts()).unwrap();
        assert_eq!(r.value.as_rational(), crate::numeric::integer(2));
        r.certify(Objective::BoundedLubell { t: 2 }).unwrap();
    }

    /// Oracle: Lubell value of every subfamily of `2^[n]`.
    fn lambda_star_brute_force(n: u32, t: usize) -> Rational {
        let g = GroundSet::new(n).unwrap();
        let all: Vec<SubsetMask> = g.all_subsets().collect();
        (0u64..1 << all.len())
            .filter_map(|sel| {
                let f = SetFamily::new(g, bits(sel).map(|i| all[i])).unwrap();
                (components(&f).max_order() <= t).then(|| crate::lubell::lubell(&f))
            })
            .max()
            .unwrap()
    }

    #[test]
    fn lambda_star_matches_brute_force() {
        for n in 1..=3 {
            for t in 1..=(1usize << n) {
                let r = lambda_star_exact(n, t, opts()).unwrap();
                assert_eq!(r.value.as_rational(), lambda_star_brute_force(n, t), "n={n} t={t}");
                r.certify(Objective::BoundedLubell { t }).unwrap();
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        for (n, t) in [(4, 2), (4, 3), (5, 1)] {
            let a = la_exact(n, t, opts()).unwrap();
            let b = la_exact(n, t, opts().with_jobs(4)).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.witness, b.witness, "n={n} t={t}");
        }
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let r = la_exact(5, 2, SearchOptions::with_budget(10)).unwrap();
        assert!(!r.proven_optimal);
    }

    #[test]
    fn optima_at_small_n() {
        let s = enumerate_optima(3, 1, opts()).unwrap();
        // The two full middle layers.
        assert_eq!((s.value, s.total, s.classes.len()), (3, 2, 2));
        assert!(s.complete);
    }
}
