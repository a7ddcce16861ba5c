//! Exact small-`n` searches for the extremal quantities.
//!
//! Every search returns a [`SearchResult`] whose witness can be re-certified
//! independently of the search that produced it. Exceeding the node budget
//! yields a result flagged `proven_optimal = false`, never a silent answer.

mod bounded;
pub mod canon;
mod disconnected;
mod madstar;
mod small;

pub use bounded::{enumerate_optima, la_exact, la_exact_restricted, lambda_star_exact, OptimaSummary};
pub use disconnected::{disconnected_optima, max_disconnected, max_disconnected_brute_force};
pub use madstar::mad_star_probe;
pub use small::{min_two_chains, xi_star_exact};

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::colouring::{find_rainbow_cycle, is_proper, xi, EdgeColouredGraph};
use crate::family::SetFamily;
use crate::graph::components;
use crate::lubell::lubell;
use crate::numeric::{rational_string, Rational};

/// Largest ground set the exhaustive family searches accept.
pub const MAX_SEARCH_N: u32 = 5;

/// Hard default node budget.
pub const DEFAULT_BUDGET_NODES: u64 = 4_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget_nodes: u64,
    /// Worker threads; `1` runs on the calling thread.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget_nodes: DEFAULT_BUDGET_NODES, jobs: 1 }
    }
}

impl SearchOptions {
    pub fn with_budget(budget_nodes: u64) -> Self {
        SearchOptions { budget_nodes, ..Self::default() }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SearchValue {
    Integer(u64),
    #[serde(serialize_with = "serialize_rational")]
    Rational(Rational),
}

fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

impl SearchValue {
    pub fn as_integer(&self) -> Option<u64> {
        match self {
            SearchValue::Integer(v) => Some(*v),
            SearchValue::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Rational {
        match self {
            SearchValue::Integer(v) => Rational::from_integer((*v).into()),
            SearchValue::Rational(r) => r.clone(),
        }
    }
}

impl std::fmt::Display for SearchValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchValue::Integer(v) => write!(f, "{v}"),
            SearchValue::Rational(r) => f.write_str(&rational_string(r)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Family { family: SetFamily },
    LayerPair { k: u32, a: SetFamily, b: SetFamily },
    Graph { graph: EdgeColouredGraph },
    None,
}

/// What a witness must satisfy to back the reported value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Size of a family with every component of order ≤ t and members on
    /// layers `kmin..=kmax`.
    BoundedSize { t: usize, kmin: u32, kmax: u32 },
    /// Lubell value of a family with every component of order ≤ t.
    BoundedLubell { t: usize },
    /// Size of a disconnected family.
    Disconnected,
    /// `2ξ(A, B) / m` of an adjacent-layer pair with `|A| + |B| = m`.
    LayerDensity { m: usize },
    /// Number of 2-chains of a family of size `m`.
    TwoChains { m: usize },
    /// Average degree of a properly coloured rainbow-cycle-free graph on `t` vertices.
    RainbowFree { t: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub value: SearchValue,
    pub witness: Witness,
    pub nodes_explored: u64,
    pub proven_optimal: bool,
}

impl SearchResult {
    /// Recomputes the objective from the witness alone. Returns an error
    /// message describing the first mismatch. A search cut off before any
    /// candidate carries no witness and claims nothing beyond zero.
    pub fn certify(&self, objective: Objective) -> Result<(), String> {
        match (&self.witness, objective) {
            (Witness::None, _)
                if !self.proven_optimal && self.value.as_rational() == Rational::from_integer(0.into()) =>
            {
                Ok(())
            }
            (Witness::Family { family }, Objective::BoundedSize { t, kmin, kmax }) => {
                let comps = components(family);
                if comps.max_order() > t {
                    return Err(format!("component of order {} > {t}", comps.max_order()));
                }
                if let Some(x) = family.iter().find(|x| x.size() < kmin || x.size() > kmax) {
                    return Err(format!("{x} outside layers {kmin}..={kmax}"));
                }
                self.expect(SearchValue::Integer(family.len() as u64))
            }
            (Witness::Family { family }, Objective::BoundedLubell { t }) => {
                let comps = components(family);
                if comps.max_order() > t {
                    return Err(format!("component of order {} > {t}", comps.max_order()));
                }
                self.expect(SearchValue::Rational(lubell(family)))
            }
            (Witness::Family { family }, Objective::Disconnected) => {
                if components(family).count() < 2 {
                    return Err("witness is connected".into());
                }
                self.expect(SearchValue::Integer(family.len() as u64))
            }
            (Witness::Family { family }, Objective::TwoChains { m }) => {
                if family.len() != m {
                    return Err(format!("witness has {} members, expected {m}", family.len()));
                }
                self.expect(SearchValue::Integer(crate::graph::count_two_chains(family)))
            }
            (Witness::LayerPair { a, b, .. }, Objective::LayerDensity { m }) => {
                if a.len() + b.len() != m {
                    return Err(format!("layer pair has {} sets, expected {m}", a.len() + b.len()));
                }
                let edges = xi(a, b).map_err(|e| e.to_string())?;
                self.expect(SearchValue::Rational(Rational::new((2 * edges).into(), m.into())))
            }
            (Witness::None, Objective::LayerDensity { m: 0 }) => Ok(()),
            (Witness::Graph { graph }, Objective::RainbowFree { t }) => {
                if graph.vertex_count() != t {
                    return Err(format!("graph has {} vertices, expected {t}", graph.vertex_count()));
                }
                if !is_proper(graph) {
                    return Err("colouring is not proper".into());
                }
                if t >= 3 {
                    if let Some(c) = find_rainbow_cycle(graph, t).map_err(|e| e.to_string())? {
                        return Err(format!("rainbow cycle {c:?}"));
                    }
                }
                self.expect(SearchValue::Rational(graph.average_degree()))
            }
            (w, o) => Err(format!("witness {w:?} cannot certify {o:?}")),
        }
    }

    fn expect(&self, actual: SearchValue) -> Result<(), String> {
        if actual.as_rational() == self.value.as_rational() {
            Ok(())
        } else {
            Err(format!("witness gives {actual}, result claims {}", self.value))
        }
    }
}

/// Shared node counter; trips once the budget is spent.
pub(crate) struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { used: AtomicU64::new(0), limit }
    }

    /// Counts one node; false once the budget is exhausted.
    #[inline]
    pub(crate) fn tick(&self) -> bool {
        self.used.fetch_add(1, Ordering::Relaxed) < self.limit
    }

    /// Counts a batch of nodes.
    pub(crate) fn spend(&self, nodes: u64) -> bool {
        self.used.fetch_add(nodes, Ordering::Relaxed).saturating_add(nodes) <= self.limit
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit.saturating_add(1))
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.used.load(Ordering::Relaxed) > self.limit
    }
}

pub(crate) fn check_n(n: u32, limit: u32) -> crate::error::Result<()> {
    if n > limit {
        return Err(crate::error::Error::ResourceLimit {
            what: "exhaustive search ground size",
            limit: limit as u64,
            requested: n as u64,
        });
    }
    Ok(())
}

pub(crate) fn thread_pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}
