//! Finite simple graphs with distinct vertex identifiers.
//!
//! Vertices are stored in increasing identifier order and addressed
//! internally by their dense index `0..n`. Neighbor lists are sorted by
//! index, which is the same as sorted by identifier, so "the i-th neighbor
//! of v" is well defined.

mod canon;
mod distance;
mod generate;
pub mod named;
mod parse;
mod planar;
mod property;
mod subgraph;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use canon::{all_graphs, canonical_form, connected_graphs, is_isomorphic, CanonicalForm, MAX_CANON_VERTICES};
pub use distance::{distance_to_property, is_eps_far, max_member_edges, OracleError, OracleLimits};
pub use generate::{generate_instance, Family, GenerateError, Instance, Structure};
pub use parse::{parse_graph, ParseError};
pub use planar::{density_check, find_kuratowski_subdivision, is_planar, Kuratowski};
pub use property::{
    parse_property, Acyclic, AtMostOneCycle, Bipartite, HFree, KColorable, Property, PropertyParseError,
};
pub use subgraph::{contains_subgraph, find_embedding, Embedding};

/// Vertex identifier. Identifiers are positive and pairwise distinct.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex identifier 0 is not allowed")]
    ZeroId,
    #[error("duplicate vertex identifier {0}")]
    DuplicateId(VertexId),
    #[error("unknown vertex identifier {0}")]
    UnknownId(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Serialized form: identifiers plus identifier pairs.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    ids: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            edges: g.edge_ids(),
            ids: g.ids,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(r: GraphRepr) -> Result<Self, Self::Error> {
        Graph::with_ids(r.ids, r.edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n(), self.m, self.edge_ids())
    }
}

impl Graph {
    /// Builds a graph from explicit identifiers and identifier pairs.
    pub fn with_ids<I>(mut ids: Vec<VertexId>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        ids.sort_unstable();
        if ids.first() == Some(&0) {
            return Err(GraphError::ZeroId);
        }
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateId(w[0]));
        }
        let mut g = Graph {
            adj: vec![Vec::new(); ids.len()],
            ids,
            m: 0,
        };
        for (a, b) in edges {
            let i = g.index_of(a).ok_or(GraphError::UnknownId(a))?;
            let j = g.index_of(b).ok_or(GraphError::UnknownId(b))?;
            if i == j {
                return Err(GraphError::Loop(a));
            }
            if g.adj[i].contains(&j) {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
            g.adj[i].push(j);
            g.adj[j].push(i);
            g.m += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a graph on identifiers `1..=n` from index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let ids = (1..=n as VertexId).collect();
        Self::with_ids(ids, edges.iter().map(|&(a, b)| (a as VertexId + 1, b as VertexId + 1)))
    }

    /// Same as [`Graph::from_edges`] for edge lists known to be valid.
    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            ids: (1..=n as VertexId).collect(),
            adj,
            m: edges.len(),
        }
    }

    /// Rebuilds with the given (sorted, distinct) identifiers and index pairs.
    pub(crate) fn from_parts_unchecked(ids: Vec<VertexId>, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::from_edges_unchecked(ids.len(), edges);
        g.ids = ids;
        g
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges_unchecked(n, &[])
    }

    /// Number of vertices, `v(G)`.
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    /// Number of edges, `e(G)`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> VertexId {
        self.ids[v]
    }

    pub fn max_id(&self) -> VertexId {
        self.ids.last().copied().unwrap_or(0)
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// All edges as index pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    /// All edges as identifier pairs `(a, b)` with `a < b`, sorted.
    pub fn edge_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| (self.ids[a], self.ids[b]))
            .collect()
    }

    /// Subgraph induced by the given vertex indices (identifiers preserved).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = local[u];
                if j != usize::MAX && j > i {
                    edges.push((i, j));
                }
            }
        }
        let ids = keep.iter().map(|&v| self.ids[v]).collect();
        Graph::from_parts_unchecked(ids, &edges)
    }

    /// Subgraph induced by a set of identifiers; unknown identifiers are ignored.
    pub fn induced_by_ids<'a, I>(&self, ids: I) -> Graph
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let idx: Vec<usize> = ids.into_iter().filter_map(|&id| self.index_of(id)).collect();
        self.induced(&idx)
    }

    /// The graph with the same vertex set and a subset of its edges.
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Graph {
        Graph::from_parts_unchecked(self.ids.clone(), edges)
    }

    /// `G ∖ F`: same vertices, edges of `F` removed.
    pub fn without_edges(&self, f: &EditSet) -> Graph {
        let kept: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| !f.contains(self.ids[a], self.ids[b]))
            .collect();
        self.spanning_subgraph(&kept)
    }

    /// The graph with every edge incident to a vertex removed but the vertex kept.
    pub fn without_vertex_edges(&self, v: usize) -> Graph {
        let kept: Vec<(usize, usize)> = self.edges().into_iter().filter(|&(a, b)| a != v && b != v).collect();
        self.spanning_subgraph(&kept)
    }

    /// The graph with vertex `v` deleted.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Joins consecutive components by one edge between their smallest
    /// vertices. Forests stay forests and planar graphs stay planar.
    pub fn connect_components(&self) -> Graph {
        let comps = self.components();
        let mut edges = self.edges();
        edges.extend(comps.windows(2).map(|w| (w[0][0], w[1][0])));
        Graph::from_parts_unchecked(self.ids.clone(), &edges)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap() + 1;
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Vertices at distance at most `radius` from `center`, sorted.
    pub fn ball(&self, center: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[center] = 0;
        let mut order = vec![center];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            if dist[v] == radius {
                continue;
            }
            for &u in &self.adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    order.push(u);
                }
            }
        }
        order.sort_unstable();
        order
    }

    /// Largest eccentricity, or `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n() {
            for d in self.bfs(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Disjoint union; the second graph's identifiers are shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.max_id();
        let n = self.n();
        let mut ids = self.ids.clone();
        ids.extend(other.ids.iter().map(|&id| id + shift));
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(a, b)| (a + n, b + n)));
        Graph::from_parts_unchecked(ids, &edges)
    }

    /// Same graph with identifiers replaced by `1..=n` (order preserved).
    pub fn relabeled(&self) -> Graph {
        Graph::from_edges_unchecked(self.n(), &self.edges())
    }

    /// Whether every edge of `sub` (by identifiers) is an edge of `self`.
    pub fn contains_edges_of(&self, sub: &Graph) -> bool {
        sub.edge_ids()
            .into_iter()
            .all(|(a, b)| match (self.index_of(a), self.index_of(b)) {
                (Some(i), Some(j)) => self.has_edge(i, j),
                _ => false,
            })
    }

    /// Edge-list document: header `n m`, then one `u v` line per edge with
    /// 1-based positional identifiers.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m);
        for (a, b) in self.edges() {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }

    /// SHA-256 over the canonical sorted identifier edge list.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("v {}\n", self.ids.len()));
        for id in &self.ids {
            h.update(format!("{id}\n"));
        }
        for (a, b) in self.edge_ids() {
            h.update(format!("e {a} {b}\n"));
        }
        hex::encode(h.finalize())
    }

    /// Adjacency bitmasks for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "adjacency masks need at most 64 vertices");
        self.adj
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect()
    }

    /// Builds a graph on `1..=n` from adjacency masks.
    pub fn from_masks(masks: &[u64]) -> Graph {
        let mut edges = Vec::new();
        for (a, &m) in masks.iter().enumerate() {
            let mut rest = m >> (a + 1);
            while rest != 0 {
                let off = rest.trailing_zeros() as usize;
                edges.push((a, a + 1 + off));
                rest &= rest - 1;
            }
        }
        Graph::from_edges_unchecked(masks.len(), &edges)
    }
}

/// A set of host edges, stored by identifier pairs `(min, max)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditSet {
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl EditSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: VertexId, b: VertexId) -> bool {
        self.edges.insert((a.min(b), a.max(b)))
    }

    pub fn contains(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VertexId, VertexId)> {
        self.edges.iter()
    }

    pub fn extend_from(&mut self, other: &EditSet) {
        self.edges.extend(other.edges.iter().copied());
    }

    /// Whether every edge of the set is an edge of `g`.
    pub fn is_subset_of(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&(a, b)| match (g.index_of(a), g.index_of(b)) {
            (Some(i), Some(j)) => g.has_edge(i, j),
            _ => false,
        })
    }

    /// `|F| ≤ eps · e(G)` evaluated with a small tolerance for float noise.
    pub fn within_budget(&self, eps: f64, g: &Graph) -> bool {
        self.len() as f64 <= eps * g.m() as f64 + 1e-9
    }
}

impl FromIterator<(VertexId, VertexId)> for EditSet {
    fn from_iter<T: IntoIterator<Item = (VertexId, VertexId)>>(iter: T) -> Self {
        let mut s = EditSet::new();
        for (a, b) in iter {
            s.insert(a, b);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::with_ids(vec![1, 1], []), Err(GraphError::DuplicateId(1)));
        assert_eq!(Graph::with_ids(vec![0, 1], []), Err(GraphError::ZeroId));
        assert_eq!(Graph::with_ids(vec![1, 2], [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::with_ids(vec![1, 2], [(1, 2), (2, 1)]),
            Err(GraphError::DuplicateEdge(1, 2))
        );
        assert_eq!(Graph::with_ids(vec![1, 2], [(1, 3)]), Err(GraphError::UnknownId(3)));
    }

    #[test]
    fn neighbors_sorted_by_id() {
        let g = Graph::with_ids(vec![9, 4, 7], [(9, 7), (9, 4)]).unwrap();
        assert_eq!(g.ids(), &[4, 7, 9]);
        let v = g.index_of(9).unwrap();
        let nb: Vec<_> = g.neighbors(v).iter().map(|&u| g.id(u)).collect();
        assert_eq!(nb, vec![4, 7]);
    }

    #[test]
    fn induced_and_union() {
        let k3 = named::complete(3);
        let u = k3.disjoint_union(&k3);
        assert_eq!((u.n(), u.m()), (6, 6));
        assert_eq!(u.components().len(), 2);
        let half = u.induced(&[0, 1, 2]);
        assert_eq!(half, k3);
    }

    #[test]
    fn ball_and_diameter() {
        let p = named::path(5);
        assert_eq!(p.ball(0, 2), vec![0, 1, 2]);
        assert_eq!(p.diameter(), Some(4));
        assert_eq!(Graph::empty(2).diameter(), None);
    }

    #[test]
    fn digest_depends_only_on_content() {
        let a = Graph::with_ids(vec![1, 2, 3], [(1, 2), (2, 3)]).unwrap();
        let b = Graph::with_ids(vec![3, 2, 1], [(3, 2), (2, 1)]).unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), named::path(4).digest());
    }

    #[test]
    fn masks_round_trip() {
        let g = named::petersen();
        assert_eq!(Graph::from_masks(&g.adjacency_masks()), g);
    }

    #[test]
    fn json_round_trip_validates() {
        let g = named::star(3).induced(&[0, 1, 3]);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"ids":[1,2,4],"edges":[[1,2],[1,4]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), g);
        assert!(serde_json::from_str::<Graph>(r#"{"ids":[1,2],"edges":[[1,3]]}"#).is_err());
    }
}
