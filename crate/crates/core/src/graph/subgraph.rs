use super::Graph;

/// Injective map from pattern vertex indices to host vertex indices that
/// carries every pattern edge onto a host edge.
pub type Embedding = Vec<usize>;

struct Plan {
    /// Pattern vertices in matching order.
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent to it.
    back: Vec<Vec<usize>>,
}

impl Plan {
    fn new(pattern: &Graph) -> Plan {
        let n = pattern.n();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for comp in pattern.components() {
            let start = *comp.iter().max_by_key(|&&v| (pattern.degree(v), n - v)).unwrap();
            placed[start] = true;
            let first = order.len();
            order.push(start);
            let mut i = first;
            while i < order.len() {
                let v = order[i];
                i += 1;
                for &u in pattern.neighbors(v) {
                    if !placed[u] {
                        placed[u] = true;
                        order.push(u);
                    }
                }
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut b: Vec<usize> = pattern
                    .neighbors(v)
                    .iter()
                    .map(|&u| pos[u])
                    .filter(|&p| p < i)
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        Plan { order, back }
    }
}

struct Search<'a, F> {
    host: &'a Graph,
    pattern: &'a Graph,
    plan: Plan,
    edge_ok: F,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<F: Fn(usize, usize) -> bool> Search<'_, F> {
    fn extend(&mut self, i: usize) -> bool {
        if i == self.plan.order.len() {
            return true;
        }
        let host = self.host;
        match self.plan.back[i].first() {
            Some(&p) => {
                let anchor = self.image[p];
                for &h in host.neighbors(anchor) {
                    if self.try_candidate(i, h) {
                        return true;
                    }
                }
            }
            None => {
                for h in 0..host.n() {
                    if self.try_candidate(i, h) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn try_candidate(&mut self, i: usize, h: usize) -> bool {
        let pv = self.plan.order[i];
        if self.used[h] || self.host.degree(h) < self.pattern.degree(pv) {
            return false;
        }
        for &p in &self.plan.back[i] {
            let hp = self.image[p];
            if !self.host.has_edge(h, hp) || !(self.edge_ok)(h.min(hp), h.max(hp)) {
                return false;
            }
        }
        self.used[h] = true;
        self.image[i] = h;
        if self.extend(i + 1) {
            return true;
        }
        self.used[h] = false;
        false
    }
}

/// Finds an embedding of `pattern` into `host` that only uses host edges
/// accepted by `edge_ok(a, b)` (called with `a < b`).
///
/// The search order is deterministic: pattern vertices are matched
/// component by component in breadth-first order and host candidates are
/// tried by increasing index, so the first embedding in that order is
/// returned.
pub fn find_embedding<F>(host: &Graph, pattern: &Graph, edge_ok: F) -> Option<Embedding>
where
    F: Fn(usize, usize) -> bool,
{
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return None;
    }
    let plan = Plan::new(pattern);
    let k = plan.order.len();
    let mut s = Search {
        host,
        pattern,
        plan,
        edge_ok,
        image: vec![usize::MAX; k],
        used: vec![false; host.n()],
    };
    if !s.extend(0) {
        return None;
    }
    let mut emb = vec![0; k];
    for (i, &pv) in s.plan.order.iter().enumerate() {
        emb[pv] = s.image[i];
    }
    Some(emb)
}

/// Subgraph (not induced) containment.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_embedding(host, pattern, |_, _| true).is_some()
}
