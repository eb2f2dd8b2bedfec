use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{contains_subgraph, named, Graph};

/// A graph property with an exact membership decider.
///
/// `is_monotone` means closed under edge and vertex deletion;
/// `is_summable` means closed under disjoint union.
pub trait Property: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn is_member(&self, g: &Graph) -> bool;
    fn is_monotone(&self) -> bool;
    fn is_summable(&self) -> bool;
}

impl<P: Property + ?Sized> Property for Arc<P> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn is_member(&self, g: &Graph) -> bool {
        (**self).is_member(g)
    }
    fn is_monotone(&self) -> bool {
        (**self).is_monotone()
    }
    fn is_summable(&self) -> bool {
        (**self).is_summable()
    }
}

impl<P: Property + ?Sized> Property for Box<P> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn is_member(&self, g: &Graph) -> bool {
        (**self).is_member(g)
    }
    fn is_monotone(&self) -> bool {
        (**self).is_monotone()
    }
    fn is_summable(&self) -> bool {
        (**self).is_summable()
    }
}

fn cyclomatic_number(g: &Graph) -> usize {
    g.m() + g.components().len() - g.n()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Bipartite;

impl Property for Bipartite {
    fn name(&self) -> String {
        "bipartite".into()
    }

    fn is_member(&self, g: &Graph) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; g.n()];
        let mut stack = Vec::new();
        for s in 0..g.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &u in g.neighbors(v) {
                    match side[u] {
                        None => {
                            side[u] = Some(!sv);
                            stack.push(u);
                        }
                        Some(su) if su == sv => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    fn is_monotone(&self) -> bool {
        true
    }

    fn is_summable(&self) -> bool {
        true
    }
}

/// Proper vertex colorability with `k` colors, decided by backtracking.
#[derive(Debug, Clone, Copy)]
pub struct KColorable {
    pub k: usize,
}

impl KColorable {
    fn color_component(&self, g: &Graph, comp: &[usize], colors: &mut [usize]) -> bool {
        // Highest degree first, then grow along neighbors so conflicts surface early.
        let mut order = Vec::with_capacity(comp.len());
        let mut placed = vec![false; g.n()];
        let start = *comp.iter().max_by_key(|&&v| (g.degree(v), usize::MAX - v)).unwrap();
        placed[start] = true;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            let mut next: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !placed[u]).collect();
            next.sort_by_key(|&u| (usize::MAX - g.degree(u), u));
            for u in next {
                placed[u] = true;
                order.push(u);
            }
        }
        self.backtrack(g, &order, 0, colors, 0)
    }

    fn backtrack(&self, g: &Graph, order: &[usize], pos: usize, colors: &mut [usize], used: usize) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let mut forbidden = 0u64;
        for &u in g.neighbors(v) {
            if colors[u] != usize::MAX {
                forbidden |= 1 << colors[u];
            }
        }
        // Colors beyond `used` are interchangeable: try only the first fresh one.
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if forbidden & (1 << c) == 0 {
                colors[v] = c;
                if self.backtrack(g, order, pos + 1, colors, used.max(c + 1)) {
                    return true;
                }
            }
        }
        colors[v] = usize::MAX;
        false
    }
}

impl Property for KColorable {
    fn name(&self) -> String {
        format!("{}-colorable", self.k)
    }

    fn is_member(&self, g: &Graph) -> bool {
        if self.k == 0 {
            return g.n() == 0;
        }
        if self.k >= 64 || g.n() <= self.k {
            return true;
        }
        let mut colors = vec![usize::MAX; g.n()];
        g.components().iter().all(|c| self.color_component(g, c, &mut colors))
    }

    fn is_monotone(&self) -> bool {
        true
    }

    fn is_summable(&self) -> bool {
        true
    }
}

/// Forests.
#[derive(Debug, Clone, Copy, Default)]
pub struct Acyclic;

impl Property for Acyclic {
    fn name(&self) -> String {
        "acyclic".into()
    }

    fn is_member(&self, g: &Graph) -> bool {
        cyclomatic_number(g) == 0
    }

    fn is_monotone(&self) -> bool {
        true
    }

    fn is_summable(&self) -> bool {
        true
    }
}

/// Graphs whose cycle space has dimension at most one. Monotone but not
/// summable: two disjoint triangles are not members.
#[derive(Debug, Clone, Copy, Default)]
pub struct AtMostOneCycle;

impl Property for AtMostOneCycle {
    fn name(&self) -> String {
        "at-most-one-cycle".into()
    }

    fn is_member(&self, g: &Graph) -> bool {
        cyclomatic_number(g) <= 1
    }

    fn is_monotone(&self) -> bool {
        true
    }

    fn is_summable(&self) -> bool {
        false
    }
}

/// Graphs containing no member of a finite family as a (not necessarily
/// induced) subgraph.
#[derive(Debug, Clone)]
pub struct HFree {
    label: String,
    members: Vec<Graph>,
}

impl HFree {
    pub fn new(label: impl Into<String>, members: Vec<Graph>) -> Self {
        HFree {
            label: label.into(),
            members,
        }
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }
}

impl Property for HFree {
    fn name(&self) -> String {
        format!("{}-free", self.label)
    }

    fn is_member(&self, g: &Graph) -> bool {
        self.members.iter().all(|h| !contains_subgraph(g, h))
    }

    fn is_monotone(&self) -> bool {
        true
    }

    fn is_summable(&self) -> bool {
        self.members.iter().all(|h| h.n() > 0 && h.is_connected())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown property `{0}` (expected bipartite, acyclic, at-most-one-cycle, triangle-free or k-colorable:K)")]
pub struct PropertyParseError(pub String);

/// Resolves a shipped property by name.
pub fn parse_property(name: &str) -> Result<Arc<dyn Property>, PropertyParseError> {
    let lower = name.trim().to_ascii_lowercase();
    let p: Arc<dyn Property> = match lower.as_str() {
        "bipartite" => Arc::new(Bipartite),
        "acyclic" | "forest" => Arc::new(Acyclic),
        "at-most-one-cycle" | "unicyclic" => Arc::new(AtMostOneCycle),
        "triangle-free" => Arc::new(HFree::new("triangle", vec![named::complete(3)])),
        other => {
            let k = other
                .strip_prefix("k-colorable:")
                .or_else(|| other.strip_suffix("-colorable"))
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| PropertyParseError(name.to_string()))?;
            Arc::new(KColorable { k })
        }
    };
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deciders_on_named_graphs() {
        assert!(Bipartite.is_member(&named::cycle(6)));
        assert!(!Bipartite.is_member(&named::cycle(5)));
        assert!(Acyclic.is_member(&named::star(4)));
        assert!(!Acyclic.is_member(&named::cycle(4)));
        assert!(AtMostOneCycle.is_member(&named::cycle(7)));
        assert!(!AtMostOneCycle.is_member(&named::disjoint_triangles(2)));
        let three = KColorable { k: 3 };
        assert!(three.is_member(&named::petersen()));
        assert!(!three.is_member(&named::complete(4)));
        assert!(!three.is_member(&named::wheel(5)));
        assert!(three.is_member(&named::wheel(6)));
        assert!(!KColorable { k: 2 }.is_member(&named::petersen()));
    }

    #[test]
    fn h_free_summability_tracks_connectivity() {
        let connected = HFree::new("triangle", vec![named::complete(3)]);
        assert!(connected.is_summable());
        let two = HFree::new("2K3", vec![named::disjoint_triangles(2)]);
        assert!(!two.is_summable());
        assert!(two.is_member(&named::complete(5)));
        assert!(!connected.is_member(&named::complete(5)));
    }

    #[test]
    fn parse_names() {
        assert_eq!(parse_property("k-colorable:3").unwrap().name(), "3-colorable");
        assert_eq!(parse_property("4-colorable").unwrap().name(), "4-colorable");
        assert_eq!(parse_property("forest").unwrap().name(), "acyclic");
        assert!(parse_property("planar").is_err());
    }
}
