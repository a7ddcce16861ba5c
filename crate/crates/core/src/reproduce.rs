//! Named small-`n` experiments with their expected values.
//!
//! Expected values come from closed forms (middle binomials, the disconnected
//! construction size, the supersaturation bound), never from a previous run.

use serde::Serialize;

use crate::constructions::disconnected_size;
use crate::error::{Error, Result};
use crate::numeric::binomial;
use crate::search::{la_exact, max_disconnected, min_two_chains, SearchOptions, SearchResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Equal,
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "search", rename_all = "snake_case")]
pub enum Experiment {
    /// Largest family with components of order ≤ t.
    La {
        n: u32,
        t: usize,
    },
    Disconnected {
        n: u32,
    },
    /// Fewest 2-chains among `C(n, ⌊n/2⌋) + q` sets.
    Kleitman {
        n: u32,
        q: u64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct RegistryEntry {
    pub name: String,
    pub experiment: Experiment,
    pub expected: u64,
    pub comparison: Comparison,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceOutcome {
    pub name: String,
    pub experiment: Experiment,
    pub expected: u64,
    pub comparison: Comparison,
    pub actual: u64,
    pub pass: bool,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
}

fn entry(name: String, experiment: Experiment, expected: u64, comparison: Comparison) -> RegistryEntry {
    RegistryEntry { name, experiment, expected, comparison }
}

pub fn registry() -> Vec<RegistryEntry> {
    let mut out = Vec::new();
    for n in 2..=5u32 {
        let middle = binomial(n as u64, (n / 2) as u64) as u64;
        out.push(entry(format!("sperner-n{n}"), Experiment::La { n, t: 1 }, middle, Comparison::Equal));
    }
    for n in 2..=5u32 {
        let m = n as u64 - 1;
        let expected = 2 * binomial(m, m / 2) as u64;
        out.push(entry(
            format!("katona-tarjan-n{n}"),
            Experiment::La { n, t: 2 },
            expected,
            Comparison::Equal,
        ));
    }
    out.push(entry(
        "k2-n4".into(),
        Experiment::La { n: 4, t: 4 },
        4 * binomial(2, 1) as u64,
        Comparison::Equal,
    ));
    for n in 2..=5u32 {
        out.push(entry(
            format!("disconnected-n{n}"),
            Experiment::Disconnected { n },
            disconnected_size(n),
            Comparison::Equal,
        ));
    }
    for n in 2..=4u32 {
        for q in 1..=2u64 {
            out.push(entry(
                format!("kleitman-n{n}-q{q}"),
                Experiment::Kleitman { n, q },
                q * (n as u64 / 2 + 1),
                Comparison::AtLeast,
            ));
        }
    }
    out
}

pub fn find(name: &str) -> Result<RegistryEntry> {
    registry().into_iter().find(|e| e.name == name).ok_or_else(|| {
        let names: Vec<String> = registry().into_iter().map(|e| e.name).collect();
        Error::Domain(format!("unknown experiment '{name}' (known: {})", names.join(", ")))
    })
}

pub fn run_search(experiment: Experiment, opts: SearchOptions) -> Result<SearchResult> {
    match experiment {
        Experiment::La { n, t } => la_exact(n, t, opts),
        Experiment::Disconnected { n } => max_disconnected(n, opts),
        Experiment::Kleitman { n, q } => {
            let m = binomial(n as u64, (n / 2) as u64) as usize + q as usize;
            min_two_chains(n, m, opts)
        }
    }
}

pub fn reproduce(entry: &RegistryEntry, opts: SearchOptions) -> Result<ReproduceOutcome> {
    let result = run_search(entry.experiment, opts)?;
    let actual = result.value.as_integer().expect("registered searches have integer values");
    let pass = result.proven_optimal
        && match entry.comparison {
            Comparison::Equal => actual == entry.expected,
            Comparison::AtLeast => actual >= entry.expected,
        };
    Ok(ReproduceOutcome {
        name: entry.name.clone(),
        experiment: entry.experiment,
        expected: entry.expected,
        comparison: entry.comparison,
        actual,
        pass,
        proven_optimal: result.proven_optimal,
        nodes_explored: result.nodes_explored,
    })
}
