//! Up/down closures, Kruskal–Katona shadow bounds and the boundary
//! families `F⁺`/`F⁻` of a two-sided split.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::numeric::binomial;

/// Visited-set over `2^[n]`: a bitmap for small `n`, a hash set otherwise.
pub(crate) enum MaskSet {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

impl MaskSet {
    pub(crate) fn new(n: u32) -> Self {
        if n <= 24 {
            MaskSet::Dense(vec![0u64; (1usize << n).div_ceil(64)])
        } else {
            MaskSet::Sparse(HashSet::new())
        }
    }

    /// Inserts; returns true if the mask was absent.
    pub(crate) fn insert(&mut self, m: SubsetMask) -> bool {
        match self {
            MaskSet::Dense(words) => {
                let (w, b) = ((m.bits() / 64) as usize, m.bits() % 64);
                let fresh = words[w] >> b & 1 == 0;
                words[w] |= 1 << b;
                fresh
            }
            MaskSet::Sparse(set) => set.insert(m.bits()),
        }
    }

    pub(crate) fn contains(&self, m: SubsetMask) -> bool {
        match self {
            MaskSet::Dense(words) => words[(m.bits() / 64) as usize] >> (m.bits() % 64) & 1 == 1,
            MaskSet::Sparse(set) => set.contains(&m.bits()),
        }
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Down,
    Up,
}

/// Frontier expansion over cover relations.
fn closure(family: &SetFamily, dir: Direction) -> SetFamily {
    let full = family.ground().full().bits();
    let mut seen = MaskSet::new(family.n());
    let mut frontier: Vec<SubsetMask> = family.iter().filter(|&m| seen.insert(m)).collect();
    let mut out = frontier.clone();
    while let Some(x) = frontier.pop() {
        let mut moves = match dir {
            Direction::Down => x.bits(),
            Direction::Up => full & !x.bits(),
        };
        while moves != 0 {
            let bit = moves & moves.wrapping_neg();
            moves &= moves - 1;
            let y = SubsetMask::from_bits(x.bits() ^ bit);
            if seen.insert(y) {
                frontier.push(y);
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    SetFamily::from_sorted_unchecked(family.ground(), out)
}

/// `∂⁻(F)`: every subset of some member (the members included).
pub fn down_closure(family: &SetFamily) -> SetFamily {
    closure(family, Direction::Down)
}

/// `∂⁺(F)`: every superset of some member (the members included).
pub fn up_closure(family: &SetFamily) -> SetFamily {
    closure(family, Direction::Up)
}

/// The single layer all members live on, or an error for mixed layers.
fn uniform_layer(family: &SetFamily) -> Result<Option<u32>> {
    let mut sizes = family.iter().map(SubsetMask::size);
    let Some(k) = sizes.next() else { return Ok(None) };
    if sizes.any(|s| s != k) {
        return Err(Error::Domain("family is not contained in a single layer".into()));
    }
    Ok(Some(k))
}

/// All `(k−1)`-sets contained in some member of a `k`-uniform family.
pub fn lower_shadow(family: &SetFamily) -> Result<SetFamily> {
    match uniform_layer(family)? {
        Some(0) => Err(Error::Domain("the empty set has no lower shadow".into())),
        _ => {
            let masks = family.iter().flat_map(|m| m.elements().map(move |e| m.without_element(e)));
            SetFamily::new(family.ground(), masks)
        }
    }
}

/// `m = C(n_k, k) + C(n_{k−1}, k−1) + … + C(n_j, j)` with
/// `n_k > n_{k−1} > … > n_j ≥ j ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeRep {
    pub k: u32,
    /// `(n_i, i)` pairs with `i` decreasing.
    pub terms: Vec<(u64, u32)>,
}

impl CascadeRep {
    pub fn value(&self) -> u128 {
        self.terms.iter().map(|&(a, i)| binomial(a, i as u64)).sum()
    }
}

/// Greedy cascade (k-binomial) representation of `m`.
pub fn kk_cascade(m: u64, k: u32) -> Result<CascadeRep> {
    if m == 0 || k == 0 {
        return Err(Error::Domain(format!("cascade needs m ≥ 1 and k ≥ 1 (got m={m}, k={k})")));
    }
    let mut rest = m as u128;
    let mut terms = Vec::new();
    let mut i = k;
    while rest > 0 {
        debug_assert!(i >= 1);
        // Largest a with C(a, i) ≤ rest.
        let mut a = i as u64;
        while binomial(a + 1, i as u64) <= rest {
            a += 1;
        }
        rest -= binomial(a, i as u64);
        terms.push((a, i));
        i -= 1;
    }
    let rep = CascadeRep { k, terms };
    let strictly_decreasing = rep.terms.windows(2).all(|w| w[0].0 > w[1].0);
    let bottom_ok = rep.terms.last().is_some_and(|&(a, j)| a >= j as u64);
    if rep.value() != m as u128 || !strictly_decreasing || !bottom_ok {
        return Err(Error::Invariant(format!("cascade {rep:?} does not represent {m}")));
    }
    Ok(rep)
}

/// Kruskal–Katona lower bound on the `r`-fold shadow of `m` sets of size `k`.
pub fn kk_shadow_bound(m: u64, k: u32, r: u32) -> Result<u128> {
    if r > k {
        return Err(Error::Domain(format!("shadow depth r={r} exceeds k={k}")));
    }
    let rep = kk_cascade(m, k)?;
    Ok(rep.terms.iter().filter(|&&(_, i)| i >= r).map(|&(a, i)| binomial(a, (i - r) as u64)).sum())
}

/// Which half of the two-part closure bound to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TechnicalMode {
    /// `k + 1` sets of size ≥ k: at least `2^{k+1} − 1` sets below.
    KPlusOne,
    /// `k` sets of size ≥ k: at least `2^{k+1} − 2` sets below.
    K,
}

impl TechnicalMode {
    /// The `k` implied by the family size in this mode.
    pub fn k_for(self, len: usize) -> Option<u32> {
        match self {
            TechnicalMode::KPlusOne => len.checked_sub(1).map(|k| k as u32),
            TechnicalMode::K => Some(len as u32),
        }
    }

    pub fn bound(self, k: u32) -> u64 {
        match self {
            TechnicalMode::KPlusOne => (1u64 << (k + 1)) - 1,
            TechnicalMode::K => (1u64 << (k + 1)) - 2,
        }
    }
}

/// Checks the down-closure lower bound for `k + 1` (or `k`) sets of size at
/// least `k`, with `k` read off the family size.
pub fn technical_bound_check(s: &SetFamily, mode: TechnicalMode) -> Result<bool> {
    let k = mode
        .k_for(s.len())
        .ok_or_else(|| Error::Precondition("mode k_plus_one needs a nonempty family".into()))?;
    if let Some(small) = s.iter().find(|m| m.size() < k) {
        return Err(Error::Precondition(format!("member {small} is smaller than k = {k}")));
    }
    Ok(down_closure(s).len() as u64 >= mode.bound(k))
}

/// `F⁺` and `F⁻` of a split together with the derived facts, each reported
/// rather than assumed.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryPair {
    pub fplus: SetFamily,
    pub fminus: SetFamily,
    /// `∂⁺(F⁺)` and `∂⁻(F⁻)`.
    pub up_of_fplus: SetFamily,
    pub down_of_fminus: SetFamily,
    pub report: BoundaryReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    /// `∂⁺(A) ∩ ∂⁻(A) = A` and the same for `B`.
    pub sides_convex: bool,
    /// `∂⁺(A) ∩ ∂⁻(B) = ∅` and `∂⁻(A) ∩ ∂⁺(B) = ∅`.
    pub cross_closures_disjoint: bool,
    /// No member of `∂⁺(F⁺)` or `∂⁻(F⁻)` belongs to `A ∪ B`.
    pub boundary_excludes_family: bool,
    /// `∂⁺(F⁺) ∩ ∂⁻(F⁻) = ∅`; guaranteed only for maximal families.
    pub excluded_closures_disjoint: bool,
    /// Every `F ∈ F⁺` sees at least `|F| − 1` members of `F⁻` of size ≥ `|F| − 2`,
    /// and dually.
    pub key_lemma_holds: bool,
    /// Some absent set is comparable to neither side.
    pub extendable: bool,
}

impl BoundaryReport {
    /// Every fact that holds for a maximal disconnected family.
    pub fn all_hold(&self) -> bool {
        self.sides_convex
            && self.cross_closures_disjoint
            && self.boundary_excludes_family
            && self.excluded_closures_disjoint
            && self.key_lemma_holds
            && !self.extendable
    }
}

fn check_split(a: &SetFamily, b: &SetFamily) -> Result<()> {
    a.same_ground(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("both sides of a split must be nonempty".into()));
    }
    for x in a.iter() {
        if let Some(y) = b.iter().find(|&y| x == y || x.is_comparable(y)) {
            return Err(Error::Precondition(format!(
                "{x} and {y} lie on different sides but are comparable"
            )));
        }
    }
    Ok(())
}

fn intersect(x: &SetFamily, y: &SetFamily) -> SetFamily {
    x.filter(|m| y.contains(m))
}

/// Computes `F⁺` (minimal sets outside `∂⁻A ∪ ∂⁻B`) and `F⁻` (maximal sets
/// outside `∂⁺A ∪ ∂⁺B`).
pub fn boundary_pair(a: &SetFamily, b: &SetFamily) -> Result<BoundaryPair> {
    check_split(a, b)?;
    let ground = a.ground();
    let n = ground.n();
    if n > 24 {
        return Err(Error::ResourceLimit { what: "boundary ground size", limit: 24, requested: n as u64 });
    }
    let (down_a, down_b) = (down_closure(a), down_closure(b));
    let (up_a, up_b) = (up_closure(a), up_closure(b));
    let down = down_a.union(&down_b)?;
    let up = up_a.union(&up_b)?;

    // Outside a down-set is an up-set; its minimal elements have every
    // immediate subset inside.
    let fplus = SetFamily::new(
        ground,
        ground
            .all_subsets()
            .filter(|&x| !down.contains(x) && x.elements().all(|e| down.contains(x.without_element(e)))),
    )?;
    let full = ground.full();
    let fminus = SetFamily::new(
        ground,
        ground.all_subsets().filter(|&x| {
            !up.contains(x) && full.difference(x).elements().all(|e| up.contains(x.with_element(e)))
        }),
    )?;

    let up_of_fplus = up_closure(&fplus);
    let down_of_fminus = down_closure(&fminus);
    let family = a.union(b)?;

    let sides_convex = intersect(&up_a, &down_a) == *a && intersect(&up_b, &down_b) == *b;
    let cross_closures_disjoint =
        intersect(&up_a, &down_b).is_empty() && intersect(&down_a, &up_b).is_empty();
    let boundary_excludes_family =
        !family.iter().any(|x| up_of_fplus.contains(x) || down_of_fminus.contains(x));
    let excluded_closures_disjoint = intersect(&up_of_fplus, &down_of_fminus).is_empty();
    let key_lemma_holds = key_lemma(&fplus, &fminus, n);
    let extendable =
        ground.all_subsets().any(|x| !family.contains(x) && !down.contains(x) && !up.contains(x));

    Ok(BoundaryPair {
        fplus,
        fminus,
        up_of_fplus,
        down_of_fminus,
        report: BoundaryReport {
            sides_convex,
            cross_closures_disjoint,
            boundary_excludes_family,
            excluded_closures_disjoint,
            key_lemma_holds,
            extendable,
        },
    })
}

fn key_lemma(fplus: &SetFamily, fminus: &SetFamily, n: u32) -> bool {
    let forward = fplus.iter().all(|f| {
        let k = f.size() as i64;
        fminus.iter().filter(|g| g.size() as i64 >= k - 2).count() as i64 >= k - 1
    });
    let backward = fminus.iter().all(|f| {
        let k = f.size() as i64;
        fplus.iter().filter(|g| g.size() as i64 <= k + 2).count() as i64 >= n as i64 - k - 1
    });
    forward && backward
}

/// `|∂⁺(F⁺)| + |∂⁻(F⁻)|`: sets that no family with this split can contain.
pub fn excluded_count(a: &SetFamily, b: &SetFamily) -> Result<usize> {
    let pair = boundary_pair(a, b)?;
    Ok(pair.up_of_fplus.len() + pair.down_of_fminus.len())
}

/// Lower bound on [`excluded_count`] for a maximal disconnected family:
/// `2^{n/2+1} − 2` for even `n`, `3·2^{(n−1)/2} − 2` for odd `n`.
pub fn excluded_lower_bound(n: u32) -> u64 {
    if n.is_multiple_of(2) {
        (1u64 << (n / 2 + 1)) - 2
    } else {
        3 * (1u64 << ((n - 1) / 2)) - 2
    }
}
