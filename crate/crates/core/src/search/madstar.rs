//! Densest graphs on `t` vertices with a proper edge colouring that has no
//! rainbow cycle.
//!
//! A properly coloured triangle is always rainbow, so only triangle-free
//! graphs qualify. Edge counts are tried from the triangle-free maximum
//! `⌊t²/4⌋` downwards; for each count, graphs are generated with vertex
//! degrees non-increasing (every graph has such a labelling) and each is
//! handed to a colouring search that rejects an edge as soon as it closes a
//! rainbow cycle.

use std::collections::HashSet;

use super::{Budget, SearchOptions, SearchResult, SearchValue, Witness};
use crate::colouring::{ColouredEdge, EdgeColouredGraph};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Largest order the prober accepts.
pub const MAX_PROBE_T: usize = 7;

struct Probe<'a> {
    t: usize,
    pairs: Vec<(usize, usize)>,
    budget: &'a Budget,
    aborted: bool,
    seen: HashSet<u32>,
}

impl Probe<'_> {
    /// Graphs with exactly `target` edges, as bitmasks over `pairs`; returns
    /// the first one that admits a good colouring.
    fn graphs(&mut self, target: u32) -> Option<Vec<ColouredEdge>> {
        let mut adj = vec![0u8; self.t];
        let mut deg = vec![0u32; self.t];
        self.graph_dfs(0, 0, 0, target, &mut adj, &mut deg)
    }

    fn graph_dfs(
        &mut self,
        idx: usize,
        chosen: u32,
        edges: u32,
        target: u32,
        adj: &mut [u8],
        deg: &mut [u32],
    ) -> Option<Vec<ColouredEdge>> {
        if self.aborted || !self.budget.tick() {
            self.aborted = true;
            return None;
        }
        if edges == target {
            // Remaining degrees are final now; keep them non-increasing.
            if deg.windows(2).any(|w| w[0] < w[1]) || !self.seen.insert(canonical(self.t, adj)) {
                return None;
            }
            return self.colour(chosen);
        }
        if idx == self.pairs.len() || (edges as usize + self.pairs.len() - idx) < target as usize {
            return None;
        }
        let (u, v) = self.pairs[idx];
        // Pairs run row by row, so a row's vertex is final once its row ends.
        let row_done = idx + 1 == self.pairs.len() || self.pairs[idx + 1].0 != u;
        let ordered = |deg: &[u32]| !row_done || u == 0 || deg[u - 1] >= deg[u];
        if adj[u] & adj[v] == 0 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            deg[u] += 1;
            deg[v] += 1;
            let found = if ordered(deg) {
                self.graph_dfs(idx + 1, chosen | 1 << idx, edges + 1, target, adj, deg)
            } else {
                None
            };
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
            deg[u] -= 1;
            deg[v] -= 1;
            if found.is_some() {
                return found;
            }
        }
        if ordered(deg) {
            return self.graph_dfs(idx + 1, chosen, edges, target, adj, deg);
        }
        None
    }

    fn colour(&mut self, chosen: u32) -> Option<Vec<ColouredEdge>> {
        let edges: Vec<(usize, usize)> =
            (0..self.pairs.len()).filter(|i| chosen >> i & 1 == 1).map(|i| self.pairs[i]).collect();
        let mut colours = vec![0u32; edges.len()];
        // incident[v] = (neighbour, colour) for coloured edges.
        let mut incident: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.t];
        if self.colour_dfs(&edges, 0, 0, &mut colours, &mut incident) {
            Some(
                edges
                    .iter()
                    .zip(&colours)
                    .map(|(&(u, v), &c)| ColouredEdge { u: u as u32, v: v as u32, colour: c })
                    .collect(),
            )
        } else {
            None
        }
    }

    fn colour_dfs(
        &mut self,
        edges: &[(usize, usize)],
        idx: usize,
        used: u32,
        colours: &mut [u32],
        incident: &mut [Vec<(usize, u32)>],
    ) -> bool {
        if self.aborted || !self.budget.tick() {
            self.aborted = true;
            return false;
        }
        if idx == edges.len() {
            return true;
        }
        let (u, v) = edges[idx];
        // Colours are named in order of first use.
        for c in 1..=used + 1 {
            if incident[u].iter().chain(&incident[v]).any(|&(_, d)| d == c) {
                continue;
            }
            if rainbow_path(incident, u, v, 1 << c, 1 << u) {
                continue;
            }
            colours[idx] = c;
            incident[u].push((v, c));
            incident[v].push((u, c));
            let done = self.colour_dfs(edges, idx + 1, used.max(c), colours, incident);
            incident[u].pop();
            incident[v].pop();
            if done {
                return true;
            }
        }
        false
    }
}

/// Is there a path from `at` to `goal` whose colours are distinct and avoid
/// `colours`?
fn rainbow_path(incident: &[Vec<(usize, u32)>], at: usize, goal: usize, colours: u64, visited: u64) -> bool {
    for &(next, c) in &incident[at] {
        if colours >> c & 1 == 1 {
            continue;
        }
        if next == goal {
            return true;
        }
        if visited >> next & 1 == 0
            && rainbow_path(incident, next, goal, colours | 1 << c, visited | 1 << next)
        {
            return true;
        }
    }
    false
}

/// Least adjacency encoding over relabellings that keep degrees sorted.
fn canonical(t: usize, adj: &[u8]) -> u32 {
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut perm: Vec<usize> = (0..t).collect();
    let mut best = u32::MAX;
    loop {
        if perm.iter().enumerate().all(|(i, &p)| deg[p] == deg[i]) {
            let mut code = 0u32;
            let mut bit = 0;
            for i in 0..t {
                for j in i + 1..t {
                    if adj[perm[i]] >> perm[j] & 1 == 1 {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            best = best.min(code);
        }
        if !crate::numeric::next_permutation(&mut perm) {
            return best;
        }
    }
}

/// Maximum average degree over graphs on `t` vertices that admit a proper
/// edge colouring without rainbow cycles.
pub fn mad_star_probe(t: usize, opts: SearchOptions) -> Result<SearchResult> {
    if t > MAX_PROBE_T {
        return Err(Error::ResourceLimit {
            what: "rainbow-free graph order",
            limit: MAX_PROBE_T as u64,
            requested: t as u64,
        });
    }
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let budget = Budget::new(opts.budget_nodes);
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v))).collect();
    let mut probe = Probe { t, pairs, budget: &budget, aborted: false, seen: HashSet::new() };
    let top = (t * t / 4) as u32;
    for target in (0..=top).rev() {
        probe.seen.clear();
        if let Some(edges) = probe.graphs(target) {
            let graph = EdgeColouredGraph::new(t, edges)?;
            return Ok(SearchResult {
                value: SearchValue::Rational(Rational::new((2 * target).into(), t.into())),
                witness: Witness::Graph { graph },
                nodes_explored: budget.used(),
                proven_optimal: !probe.aborted,
            });
        }
        if probe.aborted {
            break;
        }
    }
    // Out of budget before any graph qualified; the edgeless graph always does.
    Ok(SearchResult {
        value: SearchValue::Rational(Rational::from_integer(0.into())),
        witness: Witness::Graph { graph: EdgeColouredGraph::new(t, Vec::new())? },
        nodes_explored: budget.used(),
        proven_optimal: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{find_rainbow_cycle, is_proper};
    use crate::numeric::{integer, ratio};
    use crate::search::Objective;

    fn probe(t: usize) -> SearchResult {
        mad_star_probe(t, SearchOptions::default()).unwrap()
    }

    /// Oracle: every edge set on `t ≤ 4` vertices with every colouring by
    /// colours `1..=edges`, checked with the general rainbow-cycle search.
    fn brute_force(t: usize) -> Rational {
        let pairs: Vec<(u32, u32)> =
            (0..t as u32).flat_map(|u| (u + 1..t as u32).map(move |v| (u, v))).collect();
        let mut best = 0usize;
        for sel in 0u32..1 << pairs.len() {
            let chosen: Vec<(u32, u32)> =
                (0..pairs.len()).filter(|i| sel >> i & 1 == 1).map(|i| pairs[i]).collect();
            let e = chosen.len();
            if e <= best {
                continue;
            }
            let total = (e as u32).pow(e as u32);
            let ok = (0..total).any(|code| {
                let mut c = code;
                let edges: Vec<ColouredEdge> = chosen
                    .iter()
                    .map(|&(u, v)| {
                        let colour = c % e as u32 + 1;
                        c /= e as u32;
                        ColouredEdge { u, v, colour }
                    })
                    .collect();
                let g = EdgeColouredGraph::new(t, edges).unwrap();
                is_proper(&g) && (t < 3 || find_rainbow_cycle(&g, t).unwrap().is_none())
            });
            if ok {
                best = e;
            }
        }
        Rational::new((2 * best).into(), t.into())
    }

    #[test]
    fn tiny_orders() {
        assert_eq!(probe(1).value.as_rational(), integer(0));
        assert_eq!(probe(2).value.as_rational(), integer(1));
        assert_eq!(probe(3).value.as_rational(), ratio(4, 3));
        for t in 2..=4 {
            let r = probe(t);
            assert_eq!(r.value.as_rational(), brute_force(t), "t={t}");
            r.certify(Objective::RainbowFree { t }).unwrap();
        }
    }

    #[test]
    fn witnesses_certify() {
        for t in 5..=6 {
            let r = probe(t);
            assert!(r.proven_optimal);
            r.certify(Objective::RainbowFree { t }).unwrap();
        }
    }

    #[test]
    fn rejects_large_orders() {
        assert!(mad_star_probe(8, SearchOptions::default()).is_err());
        assert!(mad_star_probe(0, SearchOptions::default()).is_err());
    }
}
