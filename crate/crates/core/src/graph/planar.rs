use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};

/// Vertex count up to which [`is_planar`] decides by subdivision search.
const SUBDIVISION_SEARCH_MAX: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3: branch vertices plus internally disjoint
/// paths (as identifier sequences) realising every required branch pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    pub branch: Vec<VertexId>,
    pub paths: Vec<Vec<VertexId>>,
}

/// `e(G) ≤ c · v(G)`.
pub fn density_check(g: &Graph, c: f64) -> bool {
    g.m() as f64 <= c * g.n() as f64 + 1e-9
}

/// Planarity. Graphs violating Euler's bound `e ≤ 3v − 6` are rejected
/// outright; small graphs are then decided by Kuratowski subdivision search
/// and larger ones by the left-right planarity test.
pub fn is_planar(g: &Graph) -> bool {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return false;
    }
    if g.n() <= SUBDIVISION_SEARCH_MAX {
        return find_kuratowski_subdivision(g).is_none();
    }
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    let nodes: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for (a, b) in g.edges() {
        pg.add_edge(nodes[a], nodes[b], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

struct Router<'a> {
    g: &'a Graph,
    blocked: Vec<bool>,
    pairs: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
}

impl Router<'_> {
    fn route(&mut self, k: usize) -> bool {
        if k == self.pairs.len() {
            return true;
        }
        let (a, b) = self.pairs[k];
        let mut path = vec![a];
        self.walk(k, a, b, &mut path)
    }

    fn walk(&mut self, k: usize, v: usize, target: usize, path: &mut Vec<usize>) -> bool {
        let g = self.g;
        for &u in g.neighbors(v) {
            if u == target {
                // A direct edge may serve only its own pair, which holds
                // because each branch pair is routed exactly once.
                path.push(u);
                self.paths.push(path.clone());
                if self.route(k + 1) {
                    return true;
                }
                self.paths.pop();
                path.pop();
            } else if !self.blocked[u] {
                self.blocked[u] = true;
                path.push(u);
                if self.walk(k, u, target, path) {
                    return true;
                }
                path.pop();
                self.blocked[u] = false;
            }
        }
        false
    }
}

fn route_all(g: &Graph, branch: &[usize], pairs: Vec<(usize, usize)>) -> Option<Vec<Vec<usize>>> {
    let mut blocked = vec![false; g.n()];
    for &b in branch {
        blocked[b] = true;
    }
    let mut r = Router {
        g,
        blocked,
        pairs,
        paths: Vec::new(),
    };
    r.route(0).then_some(r.paths)
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive search for a subdivision of K5 or K3,3. Exponential; meant for
/// graphs with a handful of vertices.
pub fn find_kuratowski_subdivision(g: &Graph) -> Option<Kuratowski> {
    let to_ids = |paths: Vec<Vec<usize>>| -> Vec<Vec<VertexId>> {
        paths
            .into_iter()
            .map(|p| p.into_iter().map(|v| g.id(v)).collect())
            .collect()
    };
    let deg4: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 4).collect();
    for branch in combinations(&deg4, 5) {
        let pairs = combinations(&branch, 2).into_iter().map(|p| (p[0], p[1])).collect();
        if let Some(paths) = route_all(g, &branch, pairs) {
            return Some(Kuratowski {
                kind: KuratowskiKind::K5,
                branch: branch.iter().map(|&v| g.id(v)).collect(),
                paths: to_ids(paths),
            });
        }
    }
    let deg3: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
    for six in combinations(&deg3, 6) {
        // Sides containing six[0]; the other side is the complement.
        for rest in combinations(&six[1..], 2) {
            let left = [six[0], rest[0], rest[1]];
            let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs = left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect();
            if let Some(paths) = route_all(g, &six, pairs) {
                let mut branch: Vec<VertexId> = left.iter().map(|&v| g.id(v)).collect();
                branch.extend(right.iter().map(|&v| g.id(v)));
                return Some(Kuratowski {
                    kind: KuratowskiKind::K33,
                    branch,
                    paths: to_ids(paths),
                });
            }
        }
    }
    None
}
