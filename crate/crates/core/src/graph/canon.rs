//! Canonical forms for small graphs and enumeration of isomorphism classes.
//!
//! The canonical form is the minimum adjacency code over every labeling
//! reachable by individualization and colour refinement. Refinement is
//! isomorphism-equivariant, so the set of reachable codes, and hence its
//! minimum, is an isomorphism invariant.

use std::collections::HashSet;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Largest vertex count with a canonical form (the code must fit in 64 bits).
pub const MAX_CANON_VERTICES: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: u8,
    pub code: u64,
}

impl CanonicalForm {
    /// The canonical representative, on identifiers `1..=n`.
    pub fn to_graph(self) -> Graph {
        let n = self.n as usize;
        let mut masks = vec![0u64; n];
        for j in 1..n {
            for i in 0..j {
                if self.code >> pair_index(i, j) & 1 == 1 {
                    masks[i] |= 1 << j;
                    masks[j] |= 1 << i;
                }
            }
        }
        Graph::from_masks(&masks)
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn code_under(adj: &[u64], label: &[usize]) -> u64 {
    let mut code = 0u64;
    for (v, &m) in adj.iter().enumerate() {
        let mut rest = m >> (v + 1);
        while rest != 0 {
            let u = v + 1 + rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = (label[v].min(label[u]), label[v].max(label[u]));
            code |= 1 << pair_index(a, b);
        }
    }
    code
}

fn rank_by<K: Ord + Clone>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let ranks = keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect();
    (ranks, sorted.len())
}

/// Refines `colors` to the coarsest equitable partition finer than it.
fn refine(adj: &[u64], colors: &mut Vec<u32>) {
    let n = adj.len();
    let mut classes = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let keys: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0u32; classes];
                let mut rest = adj[v];
                while rest != 0 {
                    let u = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    counts[colors[u] as usize] += 1;
                }
                (colors[v], counts)
            })
            .collect();
        let (ranks, k) = rank_by(&keys);
        *colors = ranks;
        if k == classes {
            return;
        }
        classes = k;
    }
}

fn search(adj: &[u64], colors: Vec<u32>, best: &mut Option<(u64, Vec<usize>)>) {
    let n = adj.len();
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c as usize] += 1;
    }
    let target = (0..n as u32).find(|&c| size[c as usize] > 1);
    match target {
        None => {
            let label: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let code = code_under(adj, &label);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                *best = Some((code, label));
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| colors[v] == cell) {
                let keys: Vec<(u32, u8)> = (0..n).map(|u| (colors[u], u8::from(u != v))).collect();
                let (mut next, _) = rank_by(&keys);
                refine(adj, &mut next);
                search(adj, next, best);
            }
        }
    }
}

/// Canonical form and canonical labeling (`label[v]` is the canonical
/// position of vertex `v`).
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    assert!(
        g.n() <= MAX_CANON_VERTICES,
        "canonical forms are limited to {MAX_CANON_VERTICES} vertices"
    );
    let adj = g.adjacency_masks();
    canonical_from_masks(&adj)
}

fn canonical_from_masks(adj: &[u64]) -> (CanonicalForm, Vec<usize>) {
    let n = adj.len();
    let mut colors = vec![0u32; n];
    refine(adj, &mut colors);
    let mut best = None;
    search(adj, colors, &mut best);
    let (code, label) = best.unwrap_or((0, Vec::new()));
    (CanonicalForm { n: n as u8, code }, label)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

static LEVELS: Mutex<Vec<Vec<CanonicalForm>>> = Mutex::new(Vec::new());

fn level(n: usize) -> Vec<CanonicalForm> {
    assert!(n <= 9, "isomorphism-class enumeration is limited to 9 vertices");
    let mut levels = LEVELS.lock().unwrap_or_else(|e| e.into_inner());
    if levels.is_empty() {
        levels.push(vec![CanonicalForm { n: 0, code: 0 }]);
    }
    while levels.len() <= n {
        let k = levels.len() - 1;
        let mut seen = HashSet::new();
        for form in &levels[k] {
            let base = form.to_graph().adjacency_masks();
            for nb in 0u64..(1 << k) {
                let mut adj = base.clone();
                for (v, m) in adj.iter_mut().enumerate() {
                    if nb >> v & 1 == 1 {
                        *m |= 1 << k;
                    }
                }
                adj.push(nb);
                seen.insert(canonical_from_masks(&adj).0);
            }
        }
        let mut next: Vec<CanonicalForm> = seen.into_iter().collect();
        next.sort();
        levels.push(next);
    }
    levels[n].clone()
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, in canonical-form order. Results are cached.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    level(n).into_iter().map(CanonicalForm::to_graph).collect()
}

/// Connected representatives on exactly `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn class_counts_match_known_sequence() {
        // Graphs up to isomorphism: 1, 1, 2, 4, 11, 34, 156, 1044.
        let counts: Vec<usize> = (0..=7).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
        let connected: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn relabeling_preserves_form() {
        let pet = named::petersen();
        let perm = [3usize, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        let edges: Vec<_> = pet.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let shuffled = Graph::from_edges(10, &edges).unwrap();
        assert!(is_isomorphic(&pet, &shuffled));
        assert!(!is_isomorphic(&named::cycle(6), &named::disjoint_triangles(2)));
    }

    #[test]
    fn representative_round_trips() {
        for g in all_graphs(5) {
            let form = canonical_form(&g);
            assert_eq!(canonical_form(&form.to_graph()), form);
        }
    }
}
