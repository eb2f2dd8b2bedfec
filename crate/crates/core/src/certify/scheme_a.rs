//! Constant-size scheme for summable properties: each vertex holds the set
//! `I(v) ⊆ {0, …, s−1}` of cover sets containing it.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BallView, Bits, CertifyError, Proof, Scheme};
use crate::decomp::{coverage_ok, weak_diameter_cover};
use crate::graph::{EditSet, Graph, Property, Structure, VertexId};

#[derive(Debug, Clone)]
pub struct SchemeA {
    property: Arc<dyn Property>,
    pub eps: f64,
    /// `δ = ε/2`.
    pub delta: f64,
    pub s: usize,
    /// Public weak-diameter bound `D`.
    pub d_max: usize,
}

fn check_eps(eps: f64) -> Result<(), CertifyError> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(CertifyError::InvalidParameter(format!(
            "eps must lie in (0, 1], got {eps}"
        )))
    }
}

fn sets_for(k: f64, delta: f64) -> usize {
    (k / delta - 1e-9).ceil() as usize
}

impl SchemeA {
    /// Explicit public parameters `(ε, s, D)`.
    pub fn new(property: Arc<dyn Property>, eps: f64, s: usize, d_max: usize) -> Result<Self, CertifyError> {
        check_eps(eps)?;
        if !property.is_monotone() {
            return Err(CertifyError::NotMonotone(property.name()));
        }
        if !property.is_summable() {
            return Err(CertifyError::NotSummable(property.name()));
        }
        if s == 0 || s >= 32 {
            return Err(CertifyError::InvalidParameter(format!("s must lie in 1..32, got {s}")));
        }
        Ok(SchemeA {
            property,
            eps,
            delta: eps / 2.0,
            s,
            d_max,
        })
    }

    /// Parameters matching the cover constructor on forests (`s = ⌈1/δ⌉`) or
    /// full grids (`s = ⌈2/δ⌉`). Both carve pieces spanning at most `s − 1`
    /// layers or lines, so `D = 2(s − 2)`.
    pub fn for_structure(property: Arc<dyn Property>, eps: f64, structure: &Structure) -> Result<Self, CertifyError> {
        check_eps(eps)?;
        let delta = eps / 2.0;
        let s = match structure {
            Structure::Forest => sets_for(1.0, delta),
            Structure::Lattice { .. } => sets_for(2.0, delta),
            Structure::Generic => {
                return Err(CertifyError::InvalidParameter(
                    "generic graphs have no public weak-diameter bound; give s and D explicitly".into(),
                ))
            }
        };
        SchemeA::new(property, eps, s, 2 * s.saturating_sub(2))
    }

    pub fn property(&self) -> &dyn Property {
        self.property.as_ref()
    }

    fn parse(&self, bits: &Bits) -> Option<Vec<bool>> {
        (bits.len() == self.s).then(|| bits.as_slice().to_vec())
    }

    /// Every vertex of `v`'s monochromatic component for colour `i` is within
    /// `D` of `v`, and any two of them are within `D` of each other.
    fn component_ok(&self, view: &BallView, dist: &[usize], i: usize) -> bool {
        let g = &view.graph;
        let in_set = |u: usize| view.cert(g.id(u)).and_then(|b| self.parse(b)).is_some_and(|set| set[i]);
        let c = view.center_index();
        let mut seen = vec![false; g.n()];
        seen[c] = true;
        let mut comp = vec![c];
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            k += 1;
            for &u in g.neighbors(v) {
                if !seen[u] && in_set(u) {
                    if dist[u] > self.d_max {
                        return false;
                    }
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.iter().all(|&x| {
            let bfs = capped_bfs(g, x, self.d_max);
            comp.iter().all(|&y| bfs[y].is_some())
        })
    }

    /// `I(v)` for each vertex, when every certificate is well formed.
    pub fn memberships(&self, proof: &Proof) -> Option<Vec<(VertexId, Vec<bool>)>> {
        proof.certs.iter().map(|(&v, b)| Some((v, self.parse(b)?))).collect()
    }
}

fn capped_bfs(g: &Graph, source: usize, cap: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        if d == cap {
            continue;
        }
        for &u in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

impl Scheme for SchemeA {
    fn name(&self) -> String {
        "A".into()
    }

    fn horizon(&self) -> usize {
        2 * self.d_max + 1
    }

    fn params(&self) -> serde_json::Value {
        serde_json::json!({
            "property": self.property.name(),
            "eps": self.eps,
            "delta": self.delta,
            "s": self.s,
            "D": self.d_max,
        })
    }

    fn prove(&self, g: &Graph, structure: Structure) -> Result<Proof, CertifyError> {
        let cover = weak_diameter_cover(g, self.delta, structure)?;
        if cover.bound > self.d_max {
            return Err(CertifyError::ParameterMismatch(format!(
                "cover has weak diameter {} above D = {}",
                cover.bound, self.d_max
            )));
        }
        // A single set covering everything is repeated s times.
        let sets = match cover.s {
            s if s == self.s => cover.sets,
            1 => vec![cover.sets[0].clone(); self.s],
            s => {
                return Err(CertifyError::ParameterMismatch(format!(
                    "cover has {s} sets, expected {}",
                    self.s
                )))
            }
        };
        let mut certs: std::collections::BTreeMap<VertexId, Vec<bool>> =
            g.ids().iter().map(|&v| (v, vec![false; self.s])).collect();
        for (i, set) in sets.iter().enumerate() {
            for v in set {
                certs.get_mut(v).expect("cover vertices belong to g")[i] = true;
            }
        }
        Ok(Proof {
            scheme: self.name(),
            params: self.params(),
            id_width: super::id_width(g.max_id() as u64),
            certs: certs.into_iter().map(|(v, b)| (v, Bits::from_bools(b))).collect(),
        })
    }

    fn verify(&self, view: &BallView) -> bool {
        let Some(own) = view.cert(view.center) else {
            return false;
        };
        if !self.local_precheck(own, view.id_width) {
            return false;
        }
        if !self.property.is_member(&view.graph) {
            return false;
        }
        let dist = view.distances();
        own.as_slice()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .all(|(i, _)| self.component_ok(view, &dist, i))
    }

    fn local_precheck(&self, cert: &Bits, _id_width: usize) -> bool {
        cert.len() == self.s && coverage_ok(cert.count_ones(), self.delta, self.s)
    }

    fn certificate_alphabet(&self) -> Option<Vec<Bits>> {
        Some(Bits::all_of_length(self.s))
    }
}

/// What the averaging argument extracts from an accepting proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosthocWitness {
    pub index: usize,
    pub edits: EditSet,
    pub within_budget: bool,
    pub remainder_in_property: bool,
}

/// The set `X_i` minimising `|F_i| = |E(G) ∖ E(G[X_i])|`, with the two
/// consequences soundness promises: `|F_i| ≤ ε·e(G)` and `G ∖ F_i ∈ P`.
pub fn posthoc_soundness(scheme: &SchemeA, g: &Graph, proof: &Proof) -> Option<PosthocWitness> {
    let members = scheme.memberships(proof)?;
    let lookup: std::collections::HashMap<VertexId, &Vec<bool>> = members.iter().map(|(v, b)| (*v, b)).collect();
    let (index, edits) = (0..scheme.s)
        .map(|i| {
            let inside = |v: &VertexId| lookup.get(v).is_some_and(|b| b[i]);
            let f: EditSet = g
                .edge_ids()
                .into_iter()
                .filter(|(a, b)| !inside(a) || !inside(b))
                .collect();
            (i, f)
        })
        .min_by_key(|(i, f)| (f.len(), *i))?;
    let within_budget = edits.within_budget(scheme.eps, g);
    let remainder_in_property = scheme.property.is_member(&g.without_edges(&edits));
    Some(PosthocWitness {
        index,
        edits,
        within_budget,
        remainder_in_property,
    })
}
