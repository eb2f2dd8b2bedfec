//! Split graphs: a proper separation `(A, B)` together with an isomorphism
//! `H[A] → H[B]` fixing `A ∩ B` pointwise.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

/// Largest graph accepted by [`find_split`].
pub const SPLIT_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub iso: BTreeMap<VertexId, VertexId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("split detection needs a connected graph")]
    Disconnected,
    #[error("graph has {n} vertices, above the split-search guard of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Checks every condition of a split witness directly on identifiers.
pub fn verify_separation(h: &Graph, sep: &Separation) -> bool {
    let a: BTreeSet<VertexId> = sep.a.iter().copied().collect();
    let b: BTreeSet<VertexId> = sep.b.iter().copied().collect();
    let all: BTreeSet<VertexId> = h.ids().iter().copied().collect();
    if a.len() != sep.a.len() || b.len() != sep.b.len() || &a | &b != all {
        return false;
    }
    let only_a: Vec<_> = a.difference(&b).copied().collect();
    let only_b: Vec<_> = b.difference(&a).copied().collect();
    if only_a.is_empty() || only_b.is_empty() {
        return false;
    }
    let edge = |x: VertexId, y: VertexId| match (h.index_of(x), h.index_of(y)) {
        (Some(i), Some(j)) => h.has_edge(i, j),
        _ => false,
    };
    if only_a.iter().any(|&x| only_b.iter().any(|&y| edge(x, y))) {
        return false;
    }
    let keys: BTreeSet<VertexId> = sep.iso.keys().copied().collect();
    let values: BTreeSet<VertexId> = sep.iso.values().copied().collect();
    if keys != a || values != b || values.len() != sep.iso.len() {
        return false;
    }
    if a.intersection(&b).any(|v| sep.iso[v] != *v) {
        return false;
    }
    a.iter().all(|&x| {
        a.iter()
            .all(|&y| x == y || edge(x, y) == edge(sep.iso[&x], sep.iso[&y]))
    })
}

struct IsoSearch<'a> {
    adj: &'a [u32],
    sep: u32,
    from: Vec<usize>,
    to: Vec<usize>,
    map: Vec<usize>,
    used: u32,
}

impl IsoSearch<'_> {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.from.len() {
            return true;
        }
        let u = self.from[k];
        for t in 0..self.to.len() {
            let w = self.to[t];
            if self.used >> w & 1 == 1 || self.adj[u] & self.sep != self.adj[w] & self.sep {
                continue;
            }
            let consistent = (0..k).all(|j| {
                let (x, y) = (self.from[j], self.map[j]);
                (self.adj[u] >> x & 1) == (self.adj[w] >> y & 1)
            });
            if consistent {
                self.map.push(w);
                self.used |= 1 << w;
                if self.extend(k + 1) {
                    return true;
                }
                self.used &= !(1 << w);
                self.map.pop();
            }
        }
        false
    }
}

fn components(adj: &[u32], set: u32) -> Vec<u32> {
    let mut rest = set;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & set & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// A split witness, or `None` when `H` is unsplit. Separators are tried by
/// size, then the components of `H − (A ∩ B)` are distributed between the
/// two sides, and finally an isomorphism is searched by backtracking.
pub fn find_split(h: &Graph) -> Result<Option<Separation>, SplitError> {
    if h.n() > SPLIT_MAX_VERTICES {
        return Err(SplitError::TooLarge {
            n: h.n(),
            limit: SPLIT_MAX_VERTICES,
        });
    }
    if !h.is_connected() || h.n() == 0 {
        return Err(SplitError::Disconnected);
    }
    let n = h.n();
    let adj: Vec<u32> = h.adjacency_masks().into_iter().map(|m| m as u32).collect();
    let full = (1u32 << n) - 1;
    let mut separators: Vec<u32> = (0..=full).collect();
    separators.sort_by_key(|s| (s.count_ones(), *s));
    for sep in separators {
        let comps = components(&adj, full & !sep);
        if comps.len() < 2 {
            continue;
        }
        // The first component goes to A; any nonempty choice of the others
        // goes to B.
        for choice in 1u32..(1 << (comps.len() - 1)) {
            let mut only_b = 0;
            for (k, c) in comps[1..].iter().enumerate() {
                if choice >> k & 1 == 1 {
                    only_b |= c;
                }
            }
            let only_a = full & !sep & !only_b;
            if only_a.count_ones() != only_b.count_ones() {
                continue;
            }
            let mut search = IsoSearch {
                adj: &adj,
                sep,
                from: bits(only_a),
                to: bits(only_b),
                map: Vec::new(),
                used: 0,
            };
            if search.extend(0) {
                let mut iso: BTreeMap<VertexId, VertexId> = bits(sep).into_iter().map(|v| (h.id(v), h.id(v))).collect();
                for (&u, &w) in search.from.iter().zip(&search.map) {
                    iso.insert(h.id(u), h.id(w));
                }
                let side = |m: u32| bits(m).into_iter().map(|v| h.id(v)).collect();
                return Ok(Some(Separation {
                    a: side(only_a | sep),
                    b: side(only_b | sep),
                    iso,
                }));
            }
        }
    }
    Ok(None)
}
