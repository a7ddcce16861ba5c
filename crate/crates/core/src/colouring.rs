//! Edge-coloured graphs, the element colouring of adjacent-layer containment
//! graphs, and rainbow-cycle search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::numeric::{integer, Rational};

/// Vertex cap for exhaustive rainbow-cycle search.
pub const MAX_CYCLE_VERTICES: usize = 64;
/// Longest cycle the search will look for.
pub const MAX_CYCLE_LEN: usize = 20;

/// Serialised as the triple `[u, v, colour]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 3]", into = "[u32; 3]")]
pub struct ColouredEdge {
    pub u: u32,
    pub v: u32,
    pub colour: u32,
}

impl From<[u32; 3]> for ColouredEdge {
    fn from([u, v, colour]: [u32; 3]) -> Self {
        ColouredEdge { u, v, colour }
    }
}

impl From<ColouredEdge> for [u32; 3] {
    fn from(e: ColouredEdge) -> Self {
        [e.u, e.v, e.colour]
    }
}

/// A simple graph with a positive integer colour on every edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile")]
pub struct EdgeColouredGraph {
    vertices: usize,
    edges: Vec<ColouredEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    edges: Vec<ColouredEdge>,
}

impl TryFrom<GraphFile> for EdgeColouredGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        EdgeColouredGraph::new(file.vertices, file.edges)
    }
}

impl EdgeColouredGraph {
    pub fn new(vertices: usize, edges: Vec<ColouredEdge>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.u as usize >= vertices || e.v as usize >= vertices {
                return Err(Error::Domain(format!("edge {e:?} leaves 0..{vertices}")));
            }
            if e.u == e.v {
                return Err(Error::Domain(format!("loop at vertex {}", e.u)));
            }
            if e.colour == 0 {
                return Err(Error::Domain("colours must be positive".into()));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::Domain(format!("parallel edge {}-{}", e.u, e.v)));
            }
        }
        Ok(EdgeColouredGraph { vertices, edges })
    }

    /// Builds from `(u, v, colour)` triples.
    pub fn from_triples(vertices: usize, triples: &[(u32, u32, u32)]) -> Result<Self> {
        Self::new(vertices, triples.iter().map(|&(u, v, colour)| ColouredEdge { u, v, colour }).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[ColouredEdge] {
        &self.edges
    }

    /// `2|E| / |V|`.
    pub fn average_degree(&self) -> Rational {
        if self.vertices == 0 {
            return integer(0);
        }
        Rational::new((2 * self.edges.len()).into(), self.vertices.into())
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.u as usize].push((e.v as usize, e.colour));
            adj[e.v as usize].push((e.u as usize, e.colour));
        }
        adj
    }
}

/// Two adjacent layers `A ⊆ C([n], k)`, `B ⊆ C([n], k+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerPairGraph {
    pub k: u32,
    pub a: SetFamily,
    pub b: SetFamily,
}

impl LayerPairGraph {
    pub fn new(k: u32, a: SetFamily, b: SetFamily) -> Result<Self> {
        a.same_ground(&b)?;
        if k >= a.n() {
            return Err(Error::Domain(format!("layer {k} has no upper neighbour in [{}]", a.n())));
        }
        if let Some(x) = a.iter().find(|x| x.size() != k) {
            return Err(Error::Domain(format!("{x} is not on layer {k}")));
        }
        if let Some(x) = b.iter().find(|x| x.size() != k + 1) {
            return Err(Error::Domain(format!("{x} is not on layer {}", k + 1)));
        }
        Ok(LayerPairGraph { k, a, b })
    }

    /// Infers `k` from the members; empty pairs sit on layers 0 and 1.
    pub fn infer(a: SetFamily, b: SetFamily) -> Result<Self> {
        let k = match (a.iter().next(), b.iter().next()) {
            (Some(x), _) => x.size(),
            (None, Some(y)) if y.size() > 0 => y.size() - 1,
            (None, Some(y)) => return Err(Error::Domain(format!("{y} cannot be on an upper layer"))),
            (None, None) => 0,
        };
        LayerPairGraph::new(k, a, b)
    }

    pub fn order(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Containment pairs as `(index in a, index in b, added element)`.
    pub fn containments(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for (j, y) in self.b.iter().enumerate() {
            for e in y.elements() {
                if let Some(i) = self.a.index_of(y.without_element(e)) {
                    out.push((i, j, e));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// `ξ(A, B)`: number of pairs `A ⊂ B` across two adjacent layers.
pub fn xi(a: &SetFamily, b: &SetFamily) -> Result<u64> {
    let pair = LayerPairGraph::infer(a.clone(), b.clone())?;
    Ok(pair.containments().len() as u64)
}

/// Colours the edge `(A, A ∪ {i})` with `i`. Vertices of `A` come first.
pub fn layer_colouring(g: &LayerPairGraph) -> EdgeColouredGraph {
    let offset = g.a.len() as u32;
    let edges = g
        .containments()
        .into_iter()
        .map(|(i, j, e)| ColouredEdge { u: i as u32, v: offset + j as u32, colour: e })
        .collect();
    EdgeColouredGraph { vertices: g.order(), edges }
}

/// No vertex sees the same colour twice.
pub fn is_proper(g: &EdgeColouredGraph) -> bool {
    g.adjacency().iter().all(|inc| {
        let mut colours: Vec<u32> = inc.iter().map(|&(_, c)| c).collect();
        colours.sort_unstable();
        colours.windows(2).all(|w| w[0] != w[1])
    })
}

/// Searches for a cycle of length `3..=max_len` with pairwise distinct
/// colours. Returns its vertex sequence; the closing edge is implied.
pub fn find_rainbow_cycle(g: &EdgeColouredGraph, max_len: usize) -> Result<Option<Vec<usize>>> {
    if max_len < 3 {
        return Err(Error::Domain(format!("cycles have length ≥ 3 (got {max_len})")));
    }
    if g.vertices > MAX_CYCLE_VERTICES {
        return Err(Error::ResourceLimit {
            what: "rainbow cycle search vertices",
            limit: MAX_CYCLE_VERTICES as u64,
            requested: g.vertices as u64,
        });
    }
    let max_len = max_len.min(g.vertices);
    if max_len > MAX_CYCLE_LEN {
        return Err(Error::ResourceLimit {
            what: "rainbow cycle length",
            limit: MAX_CYCLE_LEN as u64,
            requested: max_len as u64,
        });
    }
    let adj = g.adjacency();
    let mut path = Vec::with_capacity(max_len);
    let mut colours = Vec::with_capacity(max_len);
    for start in 0..g.vertices {
        path.clear();
        path.push(start);
        if extend(&adj, start, 0u64, &mut path, &mut colours, max_len) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// DFS over rainbow paths from `start` through vertices larger than `start`.
fn extend(
    adj: &[Vec<(usize, u32)>],
    start: usize,
    visited: u64,
    path: &mut Vec<usize>,
    colours: &mut Vec<u32>,
    max_len: usize,
) -> bool {
    let last = *path.last().expect("path starts with a vertex");
    for &(next, colour) in &adj[last] {
        if colours.contains(&colour) {
            continue;
        }
        if next == start {
            if path.len() >= 3 {
                return true;
            }
            continue;
        }
        if next < start || visited >> next & 1 == 1 || path.len() >= max_len {
            continue;
        }
        path.push(next);
        colours.push(colour);
        if extend(adj, start, visited | 1 << next, path, colours, max_len) {
            return true;
        }
        path.pop();
        colours.pop();
    }
    false
}

/// `2 ξ(A, B) / (|A| + |B|)`.
pub fn avg_degree(g: &LayerPairGraph) -> Result<Rational> {
    if g.order() == 0 {
        return Err(Error::Domain("average degree of an empty layer pair".into()));
    }
    Ok(Rational::new((2 * g.containments().len()).into(), g.order().into()))
}
