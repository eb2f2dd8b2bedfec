//! Covers `X_1..X_s` with a quality contract, their constructors, and the
//! edge-deletion corollary.
//!
//! Constructors are strategies; [`verify_cover`] checks the contract and is
//! the only thing callers should rely on.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::treedepth::{decompose, treedepth, verify_decomposition, TreedepthDecomposition, EXACT_TD_MAX};
use crate::graph::{EditSet, Graph, Structure, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverKind {
    Treedepth,
    WeakDiameter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cover {
    pub kind: CoverKind,
    /// `d` for treedepth covers, `D` for weak-diameter covers.
    #[serde(rename = "d_or_D")]
    pub bound: usize,
    pub delta: f64,
    pub s: usize,
    pub sets: Vec<Vec<VertexId>>,
    /// One decomposition of `G[X_i]` per set, for treedepth covers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<TreedepthDecomposition>>,
    #[serde(default)]
    pub strategy: String,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverError {
    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),
    #[error("eps must lie in (0, 1], got {0}")]
    InvalidEps(f64),
    #[error("weak diameter of an empty set is undefined")]
    EmptySet,
    #[error("unknown vertex identifier {0}")]
    UnknownVertex(VertexId),
    #[error("cover construction failed: {0}")]
    Construction(String),
}

impl Cover {
    /// `I(v)`: the indices of the sets containing each vertex.
    pub fn memberships(&self) -> HashMap<VertexId, Vec<usize>> {
        let mut out: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (i, set) in self.sets.iter().enumerate() {
            for &v in set {
                out.entry(v).or_default().push(i);
            }
        }
        out
    }

    /// Minimum number of sets a vertex must belong to.
    pub fn required_membership(&self) -> f64 {
        (1.0 - self.delta) * self.s as f64
    }
}

/// `count ≥ (1 − δ)·s`, with a small tolerance for float noise.
pub fn coverage_ok(count: usize, delta: f64, s: usize) -> bool {
    count as f64 >= (1.0 - delta) * s as f64 - 1e-9
}

fn check_delta(delta: f64) -> Result<(), CoverError> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(CoverError::InvalidDelta(delta))
    }
}

/// Smallest `s` with `s ≥ k/δ`, tolerant of float noise in `k/δ`.
fn sets_needed(k: f64, delta: f64) -> usize {
    ((k / delta) - 1e-9).ceil().max(1.0) as usize
}

/// Weak diameter of `S` in `G`; `None` stands for infinity.
pub fn weak_diameter(g: &Graph, set: &[VertexId]) -> Result<Option<usize>, CoverError> {
    if set.is_empty() {
        return Err(CoverError::EmptySet);
    }
    let idx: Vec<usize> = set
        .iter()
        .map(|&id| g.index_of(id).ok_or(CoverError::UnknownVertex(id)))
        .collect::<Result<_, _>>()?;
    Ok(weak_diameter_within(g, &idx, usize::MAX))
}

/// Weak diameter of an index set, giving up (`None`) past `limit`.
fn weak_diameter_within(g: &Graph, set: &[usize], limit: usize) -> Option<usize> {
    let mut member = HashSet::with_capacity(set.len());
    member.extend(set.iter().copied());
    let mut best = 0;
    let mut dist: HashMap<usize, usize> = HashMap::new();
    for &u in set {
        dist.clear();
        dist.insert(u, 0);
        let mut queue = VecDeque::from([u]);
        let mut missing = member.len() - 1;
        while missing > 0 {
            let Some(v) = queue.pop_front() else {
                return None;
            };
            let d = dist[&v];
            if d >= limit {
                return None;
            }
            for &w in g.neighbors(v) {
                if !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                    if member.contains(&w) {
                        missing -= 1;
                        best = best.max(d + 1);
                    }
                }
            }
        }
    }
    Some(best)
}

fn td_at_most(sub: &Graph, witness: Option<&TreedepthDecomposition>, d: usize) -> bool {
    if sub.components().iter().all(|c| c.len() <= EXACT_TD_MAX) {
        return treedepth(sub).map(|(td, _)| td <= d).unwrap_or(false);
    }
    witness.is_some_and(|w| verify_decomposition(sub, w, d))
}

/// Checks the cover contract: sets lie in `V(G)`, every vertex belongs to at
/// least `(1 − δ)s` sets, and every set meets the kind's quality bound
/// (exact treedepth when all components are small, the stored witness
/// otherwise).
pub fn verify_cover(g: &Graph, cover: &Cover) -> bool {
    if cover.s == 0 || cover.sets.len() != cover.s || !(cover.delta > 0.0 && cover.delta < 1.0) {
        return false;
    }
    if let Some(w) = &cover.witnesses {
        if w.len() != cover.s {
            return false;
        }
    }
    let mut count = vec![0usize; g.n()];
    let mut index_sets = Vec::with_capacity(cover.s);
    for set in &cover.sets {
        let mut idx = Vec::with_capacity(set.len());
        for &id in set {
            match g.index_of(id) {
                Some(v) => idx.push(v),
                None => return false,
            }
        }
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for &v in &idx {
            count[v] += 1;
        }
        index_sets.push(idx);
    }
    if !count.iter().all(|&c| coverage_ok(c, cover.delta, cover.s)) {
        return false;
    }
    index_sets.iter().enumerate().all(|(i, idx)| {
        let sub = g.induced(idx);
        match cover.kind {
            CoverKind::Treedepth => {
                let witness = cover.witnesses.as_ref().map(|w| &w[i]);
                td_at_most(&sub, witness, cover.bound)
            }
            CoverKind::WeakDiameter => sub.components().iter().all(|c| {
                let in_g: Vec<usize> = c.iter().map(|&v| g.index_of(sub.id(v)).unwrap()).collect();
                weak_diameter_within(g, &in_g, cover.bound.saturating_add(1)).is_some_and(|wd| wd <= cover.bound)
            }),
        }
    })
}

/// Breadth-first depth and parent from one root per component.
fn layering(g: &Graph, rng: Option<&mut ChaCha8Rng>) -> (Vec<usize>, Vec<Option<usize>>) {
    let comps = g.components();
    let mut depth = vec![0; g.n()];
    let mut parent = vec![None; g.n()];
    let mut roots: Vec<usize> = comps.iter().map(|c| c[0]).collect();
    let mut offsets = vec![0; comps.len()];
    if let Some(rng) = rng {
        for (k, c) in comps.iter().enumerate() {
            roots[k] = c[rng.gen_range(0..c.len())];
            offsets[k] = rng.gen_range(0..64);
        }
    }
    let mut seen = vec![false; g.n()];
    for (k, &r) in roots.iter().enumerate() {
        seen[r] = true;
        depth[r] = offsets[k];
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    depth[u] = depth[v] + 1;
                    parent[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
    }
    (depth, parent)
}

/// `X_j` drops the depth classes congruent to `j` mod `s`.
fn depth_class_sets(g: &Graph, depth: &[usize], s: usize) -> Vec<Vec<usize>> {
    (0..s)
        .map(|j| (0..g.n()).filter(|&v| depth[v] % s != j).collect())
        .collect()
}

fn to_ids(g: &Graph, sets: &[Vec<usize>]) -> Vec<Vec<VertexId>> {
    sets.iter().map(|set| set.iter().map(|&v| g.id(v)).collect()).collect()
}

/// Nested dissection of lattice points inside a rectangle: the middle line
/// of the longer side becomes a chain, and the two halves hang below it.
/// Edges of the lattice never skip a line, so the result is valid for every
/// subgraph of the lattice on these points.
fn dissect(
    points: &[(VertexId, usize, usize)],
    rect: (usize, usize, usize, usize),
    above: Option<VertexId>,
    parent: &mut BTreeMap<VertexId, Option<VertexId>>,
) {
    let (x0, x1, y0, y1) = rect;
    if points.is_empty() || x0 > x1 || y0 > y1 {
        return;
    }
    let vertical = x1 - x0 >= y1 - y0;
    let mid = if vertical { (x0 + x1) / 2 } else { (y0 + y1) / 2 };
    let key = |p: &(VertexId, usize, usize)| if vertical { p.1 } else { p.2 };
    let mut sep: Vec<_> = points.iter().filter(|p| key(p) == mid).copied().collect();
    sep.sort_by_key(|p| (p.1, p.2));
    let mut last = above;
    for p in &sep {
        parent.insert(p.0, last);
        last = Some(p.0);
    }
    let low: Vec<_> = points.iter().filter(|p| key(p) < mid).copied().collect();
    let high: Vec<_> = points.iter().filter(|p| key(p) > mid).copied().collect();
    if vertical {
        if mid > x0 {
            dissect(&low, (x0, mid - 1, y0, y1), last, parent);
        }
        dissect(&high, (mid + 1, x1, y0, y1), last, parent);
    } else {
        if mid > y0 {
            dissect(&low, (x0, x1, y0, mid - 1), last, parent);
        }
        dissect(&high, (x0, x1, mid + 1, y1), last, parent);
    }
}

/// Height of the nested dissection of a full `w × h` rectangle, an upper
/// bound for every subset of it.
pub fn dissection_height(w: usize, h: usize) -> usize {
    if w == 0 || h == 0 {
        return 0;
    }
    let points: Vec<_> = (0..h)
        .flat_map(|y| (0..w).map(move |x| ((y * w + x + 1) as VertexId, x, y)))
        .collect();
    let mut parent = BTreeMap::new();
    dissect(&points, (0, w - 1, 0, h - 1), None, &mut parent);
    TreedepthDecomposition::from_parents(parent).unwrap().height
}

struct LatticeBlocks {
    sets: Vec<Vec<usize>>,
    witnesses: Vec<TreedepthDecomposition>,
}

/// Shifted axis blocks: `X_j` drops every vertex with `x ≡ j` or `y ≡ j`
/// mod `s`, leaving `(s−1) × (s−1)` blocks.
fn lattice_blocks(g: &Graph, width: usize, s: usize) -> Option<LatticeBlocks> {
    let coords: Vec<(usize, usize)> = (0..g.n())
        .map(|v| {
            let k = g.id(v) as usize - 1;
            (k % width, k / width)
        })
        .collect();
    let height = coords.iter().map(|c| c.1 + 1).max().unwrap_or(0);
    if coords.iter().any(|c| c.0 >= width) || g.ids().iter().any(|&id| id as usize > width * height) {
        return None;
    }
    let mut sets = Vec::with_capacity(s);
    let mut witnesses = Vec::with_capacity(s);
    for j in 0..s {
        // Block index along an axis; coordinates on a dropped line map to None.
        let block = |c: usize| {
            let u = c + s - j;
            (u % s != 0).then_some(u / s)
        };
        let mut blocks: BTreeMap<(usize, usize), Vec<(VertexId, usize, usize)>> = BTreeMap::new();
        let mut set = Vec::new();
        for (v, &(x, y)) in coords.iter().enumerate() {
            if let (Some(bx), Some(by)) = (block(x), block(y)) {
                set.push(v);
                blocks.entry((bx, by)).or_default().push((g.id(v), x, y));
            }
        }
        let mut parent = BTreeMap::new();
        for ((bx, by), points) in blocks {
            let lo = |b: usize| (b * s + j + 1).saturating_sub(s);
            let rect = (lo(bx), lo(bx) + s - 2, lo(by), lo(by) + s - 2);
            dissect(&points, rect, None, &mut parent);
        }
        witnesses.push(TreedepthDecomposition::from_parents(parent)?);
        sets.push(set);
    }
    Some(LatticeBlocks { sets, witnesses })
}

fn witness_heights(g: &Graph, sets: &[Vec<usize>]) -> (usize, Vec<TreedepthDecomposition>) {
    let witnesses: Vec<_> = sets.iter().map(|set| decompose(&g.induced(set))).collect();
    let d = witnesses.iter().map(|w| w.height).max().unwrap_or(0).max(1);
    (d, witnesses)
}

fn is_forest(g: &Graph) -> bool {
    g.m() + g.components().len() == g.n()
}

/// Number of randomized layerings tried by the generic strategies.
const GENERIC_ATTEMPTS: u64 = 8;

/// A treedepth cover: every vertex in at least `(1 − δ)s` sets and
/// `td(G[X_i]) ≤ d`. Forests use depth-class deletion (`s = ⌈1/δ⌉`,
/// `d = s − 1`), lattices use shifted blocks (`s = ⌈2/δ⌉`, `d` the dissection
/// height of an `(s−1) × (s−1)` block), and anything else takes the best of
/// the trivial cover and randomized depth-class carvings.
pub fn low_td_cover(g: &Graph, delta: f64, structure: Structure) -> Result<Cover, CoverError> {
    check_delta(delta)?;
    let cover = build_td_cover(g, delta, structure);
    if verify_cover(g, &cover) {
        Ok(cover)
    } else {
        Err(CoverError::Construction(format!(
            "{} cover failed its contract",
            cover.strategy
        )))
    }
}

fn build_td_cover(g: &Graph, delta: f64, structure: Structure) -> Cover {
    let make = |s, bound, sets: Vec<Vec<usize>>, witnesses, strategy: &str| Cover {
        kind: CoverKind::Treedepth,
        bound,
        delta,
        s,
        sets: to_ids(g, &sets),
        witnesses: Some(witnesses),
        strategy: strategy.to_string(),
    };
    let all: Vec<usize> = (0..g.n()).collect();
    if g.m() == 0 {
        let w = decompose(g);
        return make(1, 1, vec![all], vec![w], "trivial");
    }
    if let Structure::Lattice { width, .. } = structure {
        let s = sets_needed(2.0, delta);
        if let Some(blocks) = lattice_blocks(g, width, s) {
            let d = dissection_height(s - 1, s - 1).max(1);
            return make(s, d, blocks.sets, blocks.witnesses, "lattice-blocks");
        }
    }
    if is_forest(g) {
        let s = sets_needed(1.0, delta);
        let (depth, parent) = layering(g, None);
        let sets = depth_class_sets(g, &depth, s);
        let witnesses = (0..s)
            .map(|j| {
                let map = sets[j]
                    .iter()
                    .map(|&v| {
                        let p = parent[v].filter(|&p| depth[p] % s != j).map(|p| g.id(p));
                        (g.id(v), p)
                    })
                    .collect();
                TreedepthDecomposition::from_parents(map).unwrap()
            })
            .collect();
        return make(s, (s - 1).max(1), sets, witnesses, "forest-depth-classes");
    }
    let trivial = decompose(g);
    let mut best = make(1, trivial.height.max(1), vec![all], vec![trivial], "trivial");
    let s = sets_needed(1.0, delta);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c61_7965_7273);
    for attempt in 0..GENERIC_ATTEMPTS {
        let (depth, _) = layering(g, (attempt > 0).then_some(&mut rng));
        let sets = depth_class_sets(g, &depth, s);
        let (d, witnesses) = witness_heights(g, &sets);
        if d < best.bound {
            best = make(s, d, sets, witnesses, "depth-classes");
        }
    }
    best
}

/// A weak-diameter cover: every vertex in at least `(1 − δ)s` sets and every
/// component of every `G[X_i]` of weak diameter at most `D` in `G`. `D` is
/// the largest weak diameter the chosen strategy achieves.
pub fn weak_diameter_cover(g: &Graph, delta: f64, structure: Structure) -> Result<Cover, CoverError> {
    check_delta(delta)?;
    let achieved = |sets: &[Vec<usize>]| {
        sets.iter()
            .flat_map(|set| {
                let sub = g.induced(set);
                sub.components()
                    .into_iter()
                    .map(move |c| {
                        c.into_iter()
                            .map(|v| g.index_of(sub.id(v)).unwrap())
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            })
            .map(|c| weak_diameter_within(g, &c, usize::MAX).expect("components are connected"))
            .max()
            .unwrap_or(0)
    };
    let make = |s, sets: Vec<Vec<usize>>, strategy: &str| Cover {
        kind: CoverKind::WeakDiameter,
        bound: achieved(&sets),
        delta,
        s,
        sets: to_ids(g, &sets),
        witnesses: None,
        strategy: strategy.to_string(),
    };
    let cover = if let Some(blocks) = match structure {
        Structure::Lattice { width, .. } => lattice_blocks(g, width, sets_needed(2.0, delta)),
        _ => None,
    } {
        make(blocks.sets.len(), blocks.sets, "lattice-blocks")
    } else {
        let s = sets_needed(1.0, delta);
        let all: Vec<usize> = (0..g.n()).collect();
        let mut best = make(1, vec![all], "trivial");
        let mut rng = ChaCha8Rng::seed_from_u64(0x6469_616d);
        let attempts = if is_forest(g) { 1 } else { GENERIC_ATTEMPTS };
        for attempt in 0..attempts {
            let (depth, _) = layering(g, (attempt > 0).then_some(&mut rng));
            let candidate = make(s, depth_class_sets(g, &depth, s), "depth-classes");
            if candidate.bound < best.bound {
                best = candidate;
            }
        }
        best
    };
    if verify_cover(g, &cover) {
        Ok(cover)
    } else {
        Err(CoverError::Construction(format!(
            "{} cover failed its contract",
            cover.strategy
        )))
    }
}

/// Output of [`edge_deletion_to_bounded_td`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TdDeletion {
    pub edits: EditSet,
    pub d: usize,
    /// The averaging-selected set index.
    pub index: usize,
    /// A decomposition of `G ∖ F` of height at most `d`.
    pub decomposition: TreedepthDecomposition,
    pub cover: Cover,
}

/// `F ⊆ E(G)` with `|F| ≤ ε·e(G)` and `td(G ∖ F) ≤ d`, taken as
/// `F_i = E(G) ∖ E(G[X_i])` for a cover with `δ = ε/2`; `i` is the smallest
/// index minimising `|F_i|`.
pub fn edge_deletion_to_bounded_td(g: &Graph, eps: f64, structure: Structure) -> Result<TdDeletion, CoverError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(CoverError::InvalidEps(eps));
    }
    // δ = ε/2 must stay below 1 for the cover contract.
    let cover = low_td_cover(g, eps / 2.0, structure)?;
    let mut best: Option<(usize, EditSet)> = None;
    for (i, set) in cover.sets.iter().enumerate() {
        let inside: HashSet<VertexId> = set.iter().copied().collect();
        let f: EditSet = g
            .edge_ids()
            .into_iter()
            .filter(|(a, b)| !inside.contains(a) || !inside.contains(b))
            .collect();
        if best.as_ref().map_or(true, |(_, b)| f.len() < b.len()) {
            best = Some((i, f));
        }
    }
    let (index, edits) = best.expect("covers have at least one set");
    if !edits.within_budget(eps, g) {
        return Err(CoverError::Construction(format!(
            "averaging produced |F| = {} above eps·e(G)",
            edits.len()
        )));
    }
    let witness = &cover.witnesses.as_ref().expect("treedepth covers carry witnesses")[index];
    let mut parent = witness.parent.clone();
    for &id in g.ids() {
        parent.entry(id).or_insert(None);
    }
    let decomposition = TreedepthDecomposition::from_parents(parent).unwrap();
    Ok(TdDeletion {
        edits,
        d: cover.bound,
        index,
        decomposition,
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_instance, named, Family};

    #[test]
    fn weak_diameter_examples() {
        let p5 = named::path(5);
        assert_eq!(weak_diameter(&p5, &[3]), Ok(Some(0)));
        assert_eq!(weak_diameter(&p5, &[1, 5]), Ok(Some(4)));
        assert_eq!(weak_diameter(&named::grid(3, 3), &[1, 9]), Ok(Some(4)));
        assert_eq!(weak_diameter(&Graph::empty(2), &[1, 2]), Ok(None));
        assert_eq!(weak_diameter(&p5, &[]), Err(CoverError::EmptySet));
    }

    #[test]
    fn path_cover_matches_example() {
        let c = low_td_cover(&named::path(8), 1.0 / 3.0, Structure::Generic).unwrap();
        assert_eq!((c.s, c.bound), (3, 2));
        for v in 1..=8 {
            assert_eq!(c.sets.iter().filter(|s| s.contains(&v)).count(), 2);
        }
        let e = low_td_cover(&Graph::empty(4), 0.3, Structure::Generic).unwrap();
        assert_eq!((e.s, e.bound, e.sets[0].len()), (1, 1, 4));
    }

    #[test]
    fn small_grid_cover() {
        let g = named::grid(3, 3);
        for structure in [Structure::Generic, Structure::Lattice { width: 3, height: 3 }] {
            let c = low_td_cover(&g, 0.5, structure).unwrap();
            assert!(verify_cover(&g, &c));
        }
    }

    #[test]
    fn lattice_covers_verify() {
        for seed in 0..3 {
            let inst = generate_instance(Family::RandomPlanar, 150, seed).unwrap();
            for delta in [0.25, 0.5] {
                let c = low_td_cover(&inst.graph, delta, inst.structure).unwrap();
                assert_eq!(c.strategy, "lattice-blocks");
                let w = weak_diameter_cover(&inst.graph, delta, inst.structure).unwrap();
                assert!(verify_cover(&inst.graph, &w));
            }
        }
        let g = named::grid(20, 20);
        let c = weak_diameter_cover(&g, 0.5, Structure::Lattice { width: 20, height: 20 }).unwrap();
        assert_eq!((c.s, c.bound), (4, 4));
    }

    #[test]
    fn path_weak_cover() {
        let c = weak_diameter_cover(&named::path(100), 1.0 / 3.0, Structure::Generic).unwrap();
        assert_eq!((c.s, c.bound), (3, 1));
        let small = weak_diameter_cover(&named::complete(4), 0.2, Structure::Generic).unwrap();
        assert_eq!((small.s, small.bound), (1, 1));
    }

    #[test]
    fn verify_rejects_violations() {
        let g = named::path(8);
        let mut c = low_td_cover(&g, 1.0 / 3.0, Structure::Generic).unwrap();
        assert!(verify_cover(&g, &c));
        c.sets[0].retain(|&v| v != 2);
        c.sets[1].retain(|&v| v != 2);
        assert!(!verify_cover(&g, &c));
        let c8 = named::cycle(8);
        let bad = Cover {
            kind: CoverKind::Treedepth,
            bound: 3,
            delta: 0.5,
            s: 1,
            sets: vec![c8.ids().to_vec()],
            witnesses: None,
            strategy: String::new(),
        };
        // td(C8) = 4.
        assert!(!verify_cover(&c8, &bad));
    }

    #[test]
    fn deletion_examples() {
        let p8 = named::path(8);
        let out = edge_deletion_to_bounded_td(&p8, 2.0 / 3.0, Structure::Generic).unwrap();
        assert!(out.edits.len() <= 4 && out.d <= 3);
        assert!(verify_decomposition(
            &p8.without_edges(&out.edits),
            &out.decomposition,
            out.d
        ));
        let tri = named::disjoint_triangles(5);
        let out = edge_deletion_to_bounded_td(&tri, 1.0, Structure::Generic).unwrap();
        assert!(out.edits.within_budget(1.0, &tri));
        let rest = tri.without_edges(&out.edits);
        assert!(treedepth(&rest).unwrap().0 <= out.d);
        let forest = named::star(6);
        let out = edge_deletion_to_bounded_td(&forest, 0.5, Structure::Generic).unwrap();
        assert!(verify_decomposition(
            &forest.without_edges(&out.edits),
            &out.decomposition,
            out.d
        ));
    }

    #[test]
    fn cover_json_field_names() {
        let c = low_td_cover(&named::path(4), 0.5, Structure::Generic).unwrap();
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        for key in ["kind", "d_or_D", "delta", "s", "sets"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let back: Cover = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}
