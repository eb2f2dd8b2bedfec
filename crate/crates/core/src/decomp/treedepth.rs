//! Treedepth: exact computation on small components and decomposition checks.
//!
//! A decomposition is a rooted forest given by its parent map. It is valid
//! for `G` when every edge joins a vertex to one of its forest ancestors.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

/// Largest connected component handled by [`treedepth`].
pub const EXACT_TD_MAX: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreedepthError {
    #[error("component of {size} vertices exceeds the exact treedepth guard of {limit}")]
    ComponentTooLarge { size: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreedepthDecomposition {
    pub parent: BTreeMap<VertexId, Option<VertexId>>,
    pub height: usize,
}

impl TreedepthDecomposition {
    /// Builds from a parent map, computing the height. Returns `None` if the
    /// map has a cycle or names a parent outside its key set.
    pub fn from_parents(parent: BTreeMap<VertexId, Option<VertexId>>) -> Option<Self> {
        let depth = depths(&parent)?;
        let height = depth.values().copied().max().unwrap_or(0);
        Some(TreedepthDecomposition { parent, height })
    }

    /// Ancestors of `v`, nearest first, excluding `v`.
    pub fn ancestors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut cur = self.parent.get(&v).copied().flatten();
        while let Some(p) = cur {
            if out.len() > self.parent.len() {
                break;
            }
            out.push(p);
            cur = self.parent.get(&p).copied().flatten();
        }
        out
    }

    /// Depth of every vertex (roots have depth 1).
    pub fn depths(&self) -> Option<BTreeMap<VertexId, usize>> {
        depths(&self.parent)
    }

    /// Merges decompositions over disjoint vertex sets into one forest.
    pub fn merge<I: IntoIterator<Item = TreedepthDecomposition>>(parts: I) -> Self {
        let mut parent = BTreeMap::new();
        let mut height = 0;
        for p in parts {
            height = height.max(p.height);
            parent.extend(p.parent);
        }
        TreedepthDecomposition { parent, height }
    }
}

fn depths(parent: &BTreeMap<VertexId, Option<VertexId>>) -> Option<BTreeMap<VertexId, usize>> {
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &start in parent.keys() {
        let mut chain = Vec::new();
        let mut cur = start;
        let base = loop {
            if let Some(&d) = depth.get(&cur) {
                break d;
            }
            if chain.len() > parent.len() {
                return None;
            }
            chain.push(cur);
            match *parent.get(&cur)? {
                None => break 0,
                Some(p) => cur = p,
            }
        };
        for (k, v) in chain.iter().rev().enumerate() {
            depth.insert(*v, base + k + 1);
        }
    }
    Some(depth)
}

/// Whether `t` is a rooted forest on exactly `V(G)`, every edge joins a vertex
/// to one of its ancestors, the recorded height is the true height, and that
/// height is at most `d`.
pub fn verify_decomposition(g: &Graph, t: &TreedepthDecomposition, d: usize) -> bool {
    if t.parent.len() != g.n() || !g.ids().iter().all(|id| t.parent.contains_key(id)) {
        return false;
    }
    let Some(depth) = t.depths() else {
        return false;
    };
    let height = depth.values().copied().max().unwrap_or(0);
    if height != t.height || height > d {
        return false;
    }
    g.edge_ids().into_iter().all(|(a, b)| {
        let (deep, shallow) = if depth[&a] >= depth[&b] { (a, b) } else { (b, a) };
        let mut cur = deep;
        for _ in 0..depth[&deep] - depth[&shallow] {
            cur = t.parent[&cur].expect("depth implies a parent");
        }
        cur == shallow && deep != shallow
    })
}

struct Exact {
    adj: Vec<u32>,
    memo: HashMap<u32, (u8, u8)>,
}

impl Exact {
    fn components(&self, set: u32) -> Vec<u32> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & set & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    /// Treedepth of a connected vertex set, with the best root.
    fn solve(&mut self, set: u32) -> (u8, u8) {
        if set.count_ones() == 1 {
            return (1, set.trailing_zeros() as u8);
        }
        if let Some(&hit) = self.memo.get(&set) {
            return hit;
        }
        let mut best = (u8::MAX, 0);
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let mut height = 0;
            for comp in self.components(set & !(1 << v)) {
                height = height.max(self.solve(comp).0);
                if height + 1 >= best.0 {
                    break;
                }
            }
            if height + 1 < best.0 {
                best = (height + 1, v as u8);
                if best.0 == 2 {
                    break;
                }
            }
        }
        self.memo.insert(set, best);
        best
    }

    fn build(&mut self, set: u32, above: Option<u8>, parent: &mut Vec<(u8, Option<u8>)>) {
        let (_, root) = self.solve(set);
        parent.push((root, above));
        for comp in self.components(set & !(1 << root)) {
            self.build(comp, Some(root), parent);
        }
    }
}

fn exact_component(g: &Graph, comp: &[usize]) -> TreedepthDecomposition {
    let sub = g.induced(comp);
    let adj: Vec<u32> = sub.adjacency_masks().into_iter().map(|m| m as u32).collect();
    let mut ex = Exact {
        adj,
        memo: HashMap::new(),
    };
    let full = if sub.n() == 32 { u32::MAX } else { (1u32 << sub.n()) - 1 };
    let mut raw = Vec::new();
    ex.build(full, None, &mut raw);
    let parent = raw
        .into_iter()
        .map(|(v, p)| (sub.id(v as usize), p.map(|p| sub.id(p as usize))))
        .collect();
    TreedepthDecomposition::from_parents(parent).expect("exact witness is a forest")
}

/// Exact treedepth with an optimal decomposition. The empty graph has
/// treedepth 0.
pub fn treedepth(g: &Graph) -> Result<(usize, TreedepthDecomposition), TreedepthError> {
    let comps = g.components();
    if let Some(big) = comps.iter().find(|c| c.len() > EXACT_TD_MAX) {
        return Err(TreedepthError::ComponentTooLarge {
            size: big.len(),
            limit: EXACT_TD_MAX,
        });
    }
    let t = TreedepthDecomposition::merge(comps.iter().map(|c| exact_component(g, c)));
    Ok((t.height, t))
}

fn dfs_tree(g: &Graph, comp: &[usize], root: usize) -> Vec<(usize, Option<usize>)> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::with_capacity(comp.len());
    let mut stack = vec![(root, None::<usize>, 0usize)];
    seen[root] = true;
    out.push((root, None));
    while let Some(&mut (v, _, ref mut next)) = stack.last_mut() {
        let nb = g.neighbors(v);
        if *next == nb.len() {
            stack.pop();
            continue;
        }
        let u = nb[*next];
        *next += 1;
        if !seen[u] {
            seen[u] = true;
            out.push((u, Some(v)));
            stack.push((u, Some(v), 0));
        }
    }
    out
}

/// A valid decomposition of `g`: exact on components within the guard, the
/// shallowest of a few depth-first search trees otherwise. Every non-tree
/// edge of a depth-first search tree is a back edge, so the tree is valid.
pub fn decompose(g: &Graph) -> TreedepthDecomposition {
    let parts = g.components().into_iter().map(|comp| {
        if comp.len() <= EXACT_TD_MAX {
            return exact_component(g, &comp);
        }
        let step = (comp.len() / 32).max(1);
        let mut roots: Vec<usize> = comp.iter().copied().step_by(step).collect();
        let top = *comp
            .iter()
            .max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        roots.push(top);
        roots
            .into_iter()
            .map(|r| {
                let tree = dfs_tree(g, &comp, r);
                let parent = tree.into_iter().map(|(v, p)| (g.id(v), p.map(|p| g.id(p)))).collect();
                TreedepthDecomposition::from_parents(parent).unwrap()
            })
            .min_by_key(|t| t.height)
            .unwrap()
    });
    TreedepthDecomposition::merge(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, named};

    fn naive(g: &Graph) -> usize {
        if g.n() == 0 {
            return 0;
        }
        let comps = g.components();
        if comps.len() > 1 {
            return comps.iter().map(|c| naive(&g.induced(c))).max().unwrap();
        }
        1 + (0..g.n()).map(|v| naive(&g.without_vertex(v))).min().unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(treedepth(&Graph::empty(5)).unwrap().0, 1);
        for n in 1..=7 {
            assert_eq!(treedepth(&named::complete(n)).unwrap().0, n);
        }
        assert_eq!(treedepth(&named::path(4)).unwrap().0, 3);
        assert_eq!(treedepth(&named::path(7)).unwrap().0, 3);
        assert_eq!(treedepth(&named::path(8)).unwrap().0, 4);
        assert_eq!(treedepth(&Graph::empty(0)).unwrap().0, 0);
    }

    #[test]
    fn agrees_with_naive_recursion() {
        for n in 1..=7 {
            for g in all_graphs(n) {
                let (td, t) = treedepth(&g).unwrap();
                assert_eq!(td, naive(&g), "{g:?}");
                assert!(verify_decomposition(&g, &t, td));
                assert!(td == 0 || !verify_decomposition(&g, &t, td - 1));
            }
        }
    }

    #[test]
    fn verification_examples() {
        let k3 = named::complete(3);
        let chain = TreedepthDecomposition::from_parents([(1, None), (2, Some(1)), (3, Some(2))].into_iter().collect())
            .unwrap();
        assert!(verify_decomposition(&k3, &chain, 3));
        assert!(!verify_decomposition(&k3, &chain, 2));
        let star = TreedepthDecomposition::from_parents([(1, None), (2, Some(1)), (3, Some(1))].into_iter().collect())
            .unwrap();
        assert_eq!(star.height, 2);
        assert!(!verify_decomposition(&k3, &star, 2));
        // P7 with the balanced order 4; 2, 6; 1, 3, 5, 7.
        let p7 = named::path(7);
        let balanced = TreedepthDecomposition::from_parents(
            [
                (4, None),
                (2, Some(4)),
                (6, Some(4)),
                (1, Some(2)),
                (3, Some(2)),
                (5, Some(6)),
                (7, Some(6)),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        assert!(verify_decomposition(&p7, &balanced, 3));
    }

    #[test]
    fn malformed_maps_fail() {
        let cyc: BTreeMap<_, _> = [(1, Some(2)), (2, Some(1))].into_iter().collect();
        assert!(TreedepthDecomposition::from_parents(cyc.clone()).is_none());
        let bad = TreedepthDecomposition { parent: cyc, height: 2 };
        assert!(!verify_decomposition(&named::path(2), &bad, 5));
        let short = TreedepthDecomposition::from_parents([(1, None)].into_iter().collect()).unwrap();
        assert!(!verify_decomposition(&named::path(2), &short, 5));
    }

    #[test]
    fn guard_and_fallback() {
        let g = named::grid(5, 5);
        assert_eq!(
            treedepth(&g).unwrap_err(),
            TreedepthError::ComponentTooLarge { size: 25, limit: 16 }
        );
        let t = decompose(&g);
        assert!(verify_decomposition(&g, &t, t.height));
        let tree = named::star(40);
        let t = decompose(&tree);
        assert!(verify_decomposition(&tree, &t, 2));
    }
}
