//! Exact deletion distance to a monotone property.
//!
//! For a monotone property adding edges never helps, so the distance is the
//! minimum number of edge deletions, `e(G)` minus the largest member edge
//! subset. The oracle finds that subset by branch and bound over the edges:
//! a non-member partial selection is never extended (monotonicity), and a
//! branch is cut as soon as it cannot beat the incumbent.

use thiserror::Error;

use super::{Graph, Property};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("property `{0}` is not monotone; the deletion-only oracle does not apply")]
    NotMonotone(String),
    #[error("oracle too large: {edges} edges exceeds the exhaustive-search guard of {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("no edge subset of the graph satisfies `{0}`")]
    Unreachable(String),
}

/// Size guard for the exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_edges: 16 }
    }
}

impl OracleLimits {
    pub const ENV_VAR: &'static str = "MINORLAB_ORACLE_MAX_EDGES";

    /// Default limits, overridden by `MINORLAB_ORACLE_MAX_EDGES` when set.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.parse().ok())
            .map(|max_edges| OracleLimits { max_edges })
            .unwrap_or_default()
    }
}

struct Search<'a, P: ?Sized> {
    g: &'a Graph,
    p: &'a P,
    edges: Vec<(usize, usize)>,
    chosen: Vec<(usize, usize)>,
    best: usize,
    best_found: bool,
    stop_at: usize,
}

impl<P: Property + ?Sized> Search<'_, P> {
    fn run(&mut self, idx: usize) {
        if self.best_found && self.best >= self.stop_at {
            return;
        }
        let reachable = self.chosen.len() + (self.edges.len() - idx);
        if self.best_found && reachable <= self.best {
            return;
        }
        if idx == self.edges.len() {
            self.best = self.chosen.len();
            self.best_found = true;
            return;
        }
        self.chosen.push(self.edges[idx]);
        if self.p.is_member(&self.g.spanning_subgraph(&self.chosen)) {
            self.run(idx + 1);
        }
        self.chosen.pop();
        self.run(idx + 1);
    }
}

fn check_preconditions<P: Property + ?Sized>(g: &Graph, p: &P, limits: OracleLimits) -> Result<(), OracleError> {
    if !p.is_monotone() {
        return Err(OracleError::NotMonotone(p.name()));
    }
    if g.m() > limits.max_edges {
        return Err(OracleError::TooLarge {
            edges: g.m(),
            limit: limits.max_edges,
        });
    }
    if !p.is_member(&g.spanning_subgraph(&[])) {
        return Err(OracleError::Unreachable(p.name()));
    }
    Ok(())
}

/// Largest `|S|`, `S ⊆ E(G)`, with `(V(G), S)` in the property, searching
/// only until a subset of size `stop_at` is found.
fn largest_member_subset<P: Property + ?Sized>(g: &Graph, p: &P, stop_at: usize) -> usize {
    let mut s = Search {
        g,
        p,
        edges: g.edges(),
        chosen: Vec::new(),
        best: 0,
        best_found: false,
        stop_at,
    };
    s.run(0);
    s.best
}

/// Exact size of the largest member edge subset.
pub fn max_member_edges<P: Property + ?Sized>(g: &Graph, p: &P, limits: OracleLimits) -> Result<usize, OracleError> {
    if p.is_monotone() && p.is_member(g) {
        return Ok(g.m());
    }
    check_preconditions(g, p, limits)?;
    Ok(largest_member_subset(g, p, usize::MAX))
}

/// Minimum `|F|`, `F ⊆ E(G)`, with `G ∖ F` in the property.
pub fn distance_to_property<P: Property + ?Sized>(
    g: &Graph,
    p: &P,
    limits: OracleLimits,
) -> Result<usize, OracleError> {
    Ok(g.m() - max_member_edges(g, p, limits)?)
}

/// Whether `distance_to_property(G, P) ≥ eps · e(G)`. Graphs without edges
/// are far from nothing.
pub fn is_eps_far<P: Property + ?Sized>(g: &Graph, p: &P, eps: f64, limits: OracleLimits) -> Result<bool, OracleError> {
    if !p.is_monotone() {
        return Err(OracleError::NotMonotone(p.name()));
    }
    if g.m() == 0 || p.is_member(g) {
        return Ok(false);
    }
    check_preconditions(g, p, limits)?;
    let m = g.m() as f64;
    // Far iff every member subset has at most m - eps*m edges; search for
    // the smallest size that would witness closeness.
    let ceiling = (m - eps * m + 1e-9).floor();
    if ceiling < 0.0 {
        return Ok(true);
    }
    let witness = ceiling as usize + 1;
    if witness > g.m() {
        return Ok(true);
    }
    Ok(largest_member_subset(g, p, witness) < witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Acyclic, AtMostOneCycle, Bipartite};

    const LIMITS: OracleLimits = OracleLimits { max_edges: 16 };

    #[test]
    fn spec_examples() {
        assert_eq!(distance_to_property(&named::cycle(5), &Bipartite, LIMITS), Ok(1));
        let two = named::disjoint_triangles(2);
        assert_eq!(distance_to_property(&two, &Bipartite, LIMITS), Ok(2));
        assert_eq!(distance_to_property(&named::star(5), &Acyclic, LIMITS), Ok(0));
        let k3 = named::complete(3);
        assert_eq!(is_eps_far(&k3, &Bipartite, 1.0 / 3.0, LIMITS), Ok(true));
        assert_eq!(is_eps_far(&named::cycle(4), &Bipartite, 0.1, LIMITS), Ok(false));
        assert_eq!(is_eps_far(&k3, &Bipartite, 0.5, LIMITS), Ok(false));
    }

    #[test]
    fn guard_and_edgeless() {
        let big = named::complete(7);
        assert_eq!(
            distance_to_property(&big, &Bipartite, LIMITS),
            Err(OracleError::TooLarge { edges: 21, limit: 16 })
        );
        // Members are answered without search, whatever their size.
        assert_eq!(distance_to_property(&named::path(40), &Acyclic, LIMITS), Ok(0));
        assert_eq!(is_eps_far(&Graph::empty(3), &Bipartite, 0.5, LIMITS), Ok(false));
    }

    #[test]
    fn distance_is_cyclomatic_for_forests() {
        let k5 = named::complete(5);
        assert_eq!(distance_to_property(&k5, &Acyclic, LIMITS), Ok(6));
        assert_eq!(distance_to_property(&k5, &AtMostOneCycle, LIMITS), Ok(5));
        assert_eq!(is_eps_far(&k5, &Acyclic, 0.6, LIMITS), Ok(true));
        assert_eq!(is_eps_far(&k5, &Acyclic, 0.61, LIMITS), Ok(false));
    }
}
