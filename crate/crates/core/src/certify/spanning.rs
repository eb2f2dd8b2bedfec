//! Spanning-tree certificates: `(id(root), d_T(v, root), id(parent))`,
//! checked at horizon 1.

use std::collections::{BTreeMap, VecDeque};

use super::{id_width, BallView, Bits, CertifyError, Proof, Scheme};
use crate::graph::{Graph, Structure, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeCert {
    pub root: VertexId,
    pub dist: u64,
    pub parent: Option<VertexId>,
}

impl TreeCert {
    /// `3w + 1` bits: root, distance, a parent flag and the parent (zero
    /// when absent).
    pub fn encode(&self, w: usize, out: &mut Bits) {
        out.push_uint(self.root as u64, w);
        out.push_uint(self.dist, w);
        out.push(self.parent.is_some());
        out.push_uint(self.parent.unwrap_or(0) as u64, w);
    }

    pub fn decode(r: &mut super::BitReader<'_>, w: usize) -> Option<TreeCert> {
        let root = r.uint(w)? as VertexId;
        let dist = r.uint(w)?;
        let flag = r.bit()?;
        let parent = r.uint(w)? as VertexId;
        match (flag, parent) {
            (false, 0) => Some(TreeCert {
                root,
                dist,
                parent: None,
            }),
            (false, _) => None,
            (true, p) => Some(TreeCert {
                root,
                dist,
                parent: Some(p),
            }),
        }
    }

    pub fn width(w: usize) -> usize {
        3 * w + 1
    }

    /// The horizon-1 rule at `v`, given the certificates of its neighbors.
    pub fn locally_consistent(&self, v: VertexId, nbrs: &[(VertexId, TreeCert)]) -> bool {
        if nbrs.iter().any(|(_, c)| c.root != self.root) {
            return false;
        }
        match (self.dist, self.parent) {
            (0, None) => v == self.root,
            (0, Some(_)) | (_, None) => false,
            (dist, Some(p)) => nbrs.iter().any(|&(u, c)| u == p && c.dist + 1 == dist),
        }
    }
}

/// BFS tree from `root`, neighbors visited in identifier order.
pub fn bfs_tree(g: &Graph, root: VertexId) -> BTreeMap<VertexId, TreeCert> {
    let mut out = BTreeMap::new();
    let Some(r) = g.index_of(root) else { return out };
    let mut dist = vec![None; g.n()];
    let mut parent = vec![None; g.n()];
    dist[r] = Some(0u64);
    let mut queue = VecDeque::from([r]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(dist[v].unwrap() + 1);
                parent[u] = Some(g.id(v));
                queue.push_back(u);
            }
        }
    }
    for v in 0..g.n() {
        if let Some(d) = dist[v] {
            out.insert(
                g.id(v),
                TreeCert {
                    root,
                    dist: d,
                    parent: parent[v],
                },
            );
        }
    }
    out
}

pub fn spanning_tree_prove(g: &Graph, root: VertexId) -> Result<Proof, CertifyError> {
    if g.n() == 0 {
        return Err(CertifyError::Empty);
    }
    if !g.is_connected() {
        return Err(CertifyError::Disconnected);
    }
    if g.index_of(root).is_none() {
        return Err(CertifyError::UnknownVertex(root));
    }
    let w = id_width(g.max_id() as u64);
    let certs = bfs_tree(g, root)
        .into_iter()
        .map(|(v, c)| {
            let mut b = Bits::new();
            c.encode(w, &mut b);
            (v, b)
        })
        .collect();
    Ok(Proof {
        scheme: SpanningTree.name(),
        params: SpanningTree.params(),
        id_width: w,
        certs,
    })
}

fn decode_exact(bits: &Bits, w: usize) -> Option<TreeCert> {
    let mut r = bits.reader();
    let c = TreeCert::decode(&mut r, w)?;
    r.is_done().then_some(c)
}

pub fn spanning_tree_verify(view: &BallView) -> bool {
    let w = view.id_width;
    let Some(own) = view.cert(view.center).and_then(|b| decode_exact(b, w)) else {
        return false;
    };
    let c = view.center_index();
    let mut nbrs = Vec::new();
    for &u in view.graph.neighbors(c) {
        let id = view.graph.id(u);
        match view.cert(id).and_then(|b| decode_exact(b, w)) {
            Some(cert) => nbrs.push((id, cert)),
            None => return false,
        }
    }
    own.locally_consistent(view.center, &nbrs)
}

/// The spanning-tree scheme, rooted at the minimum identifier.
#[derive(Debug, Clone, Copy, Default)]
pub struct SpanningTree;

impl Scheme for SpanningTree {
    fn name(&self) -> String {
        "spanning-tree".into()
    }

    fn horizon(&self) -> usize {
        1
    }

    fn params(&self) -> serde_json::Value {
        serde_json::json!({})
    }

    fn prove(&self, g: &Graph, _structure: Structure) -> Result<Proof, CertifyError> {
        let root = *g.ids().first().ok_or(CertifyError::Empty)?;
        spanning_tree_prove(g, root)
    }

    fn verify(&self, view: &BallView) -> bool {
        spanning_tree_verify(view)
    }

    fn local_precheck(&self, cert: &Bits, id_width: usize) -> bool {
        decode_exact(cert, id_width).is_some_and(|c| (c.dist == 0) == c.parent.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::evaluate;
    use crate::graph::named;

    fn cert_of(proof: &Proof, v: VertexId) -> TreeCert {
        decode_exact(&proof.certs[&v], proof.id_width).unwrap()
    }

    #[test]
    fn k2_and_path() {
        let k2 = named::path(2);
        let p = spanning_tree_prove(&k2, 1).unwrap();
        assert_eq!(
            cert_of(&p, 2),
            TreeCert {
                root: 1,
                dist: 1,
                parent: Some(1)
            }
        );
        let p5 = named::path(5);
        let p = spanning_tree_prove(&p5, 1).unwrap();
        let dists: Vec<u64> = (1..=5).map(|v| cert_of(&p, v).dist).collect();
        assert_eq!(dists, vec![0, 1, 2, 3, 4]);
        // 3·⌈log₂ 6⌉ + 1.
        assert_eq!(p.size_bits(), 10);
    }

    #[test]
    fn honest_proofs_accept() {
        for g in [
            named::cycle(7),
            named::grid(4, 5),
            named::petersen(),
            named::complete(5),
        ] {
            for &root in g.ids() {
                let p = spanning_tree_prove(&g, root).unwrap();
                assert!(evaluate(&g, &p, &SpanningTree).unwrap().accepted);
            }
        }
    }

    fn forge(g: &Graph, certs: &[(VertexId, TreeCert)]) -> Proof {
        let mut p = spanning_tree_prove(g, 1).unwrap();
        for &(v, c) in certs {
            let mut b = Bits::new();
            c.encode(p.id_width, &mut b);
            p.certs.insert(v, b);
        }
        p
    }

    #[test]
    fn parent_two_cycle_on_p4() {
        // 2 and 3 name each other as parents; every distance choice fails
        // somewhere.
        let g = named::path(4);
        for d2 in 0..8 {
            for d3 in 0..8 {
                let p = forge(
                    &g,
                    &[
                        (
                            2,
                            TreeCert {
                                root: 1,
                                dist: d2,
                                parent: Some(3),
                            },
                        ),
                        (
                            3,
                            TreeCert {
                                root: 1,
                                dist: d3,
                                parent: Some(2),
                            },
                        ),
                    ],
                );
                assert!(!evaluate(&g, &p, &SpanningTree).unwrap().accepted);
            }
        }
    }

    #[test]
    fn disagreeing_roots() {
        let g = named::path(2);
        let p = forge(
            &g,
            &[
                (
                    1,
                    TreeCert {
                        root: 1,
                        dist: 0,
                        parent: None,
                    },
                ),
                (
                    2,
                    TreeCert {
                        root: 2,
                        dist: 0,
                        parent: None,
                    },
                ),
            ],
        );
        let v = evaluate(&g, &p, &SpanningTree).unwrap();
        assert_eq!(v.rejecting_vertices, vec![1, 2]);
    }

    #[test]
    fn malformed_certificates_reject() {
        let g = named::path(3);
        let mut p = spanning_tree_prove(&g, 1).unwrap();
        p.certs.insert(3, Bits::from_bools(vec![true]));
        let v = evaluate(&g, &p, &SpanningTree).unwrap();
        assert_eq!(v.rejecting_vertices, vec![2, 3]);
        // A set parent field without the flag is not a valid encoding.
        let mut b = Bits::new();
        b.push_uint(1, 2);
        b.push_uint(0, 2);
        b.push(false);
        b.push_uint(2, 2);
        assert!(decode_exact(&b, 2).is_none());
    }
}
