//! Searching for all-accepting proofs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{id_width, BallView, Bits, CertifyError, Proof, Scheme};
use crate::graph::{Graph, Structure, VertexId};

/// Exhaustive search refuses certificate spaces above `2^SPACE_LIMIT`.
pub const SPACE_LIMIT: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum AdversaryMode {
    Exhaustive,
    Randomized { budget: u64, seed: u64 },
}

/// `log₂` of the number of proofs over the scheme's alphabet on `n`
/// vertices.
pub fn certificate_space(scheme: &dyn Scheme, n: usize) -> Option<f64> {
    let a = scheme.certificate_alphabet()?;
    Some(n as f64 * (a.len() as f64).log2())
}

struct Balls {
    ids: Vec<VertexId>,
    /// Ball of each vertex, as a graph with identifiers.
    graphs: Vec<Graph>,
    /// Largest vertex index inside each ball.
    last: Vec<usize>,
    radius: usize,
    width: usize,
}

impl Balls {
    fn new(g: &Graph, radius: usize) -> Balls {
        let mut graphs = Vec::with_capacity(g.n());
        let mut last = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let ball = g.ball(v, radius);
            last.push(*ball.iter().max().unwrap());
            graphs.push(g.induced(&ball));
        }
        Balls {
            ids: g.ids().to_vec(),
            graphs,
            last,
            radius,
            width: id_width(g.max_id() as u64),
        }
    }

    fn accepts(&self, scheme: &dyn Scheme, v: usize, certs: &[Option<&Bits>]) -> bool {
        let ball = &self.graphs[v];
        let view = BallView {
            center: self.ids[v],
            radius: self.radius,
            graph: ball.clone(),
            certs: ball
                .ids()
                .iter()
                .map(|&id| {
                    let k = self.ids.binary_search(&id).unwrap();
                    (id, certs[k].expect("ball is fully assigned").clone())
                })
                .collect(),
            id_width: self.width,
        };
        scheme.verify(&view)
    }
}

fn proof_of(scheme: &dyn Scheme, ids: &[VertexId], width: usize, certs: Vec<Bits>) -> Proof {
    Proof {
        scheme: scheme.name(),
        params: scheme.params(),
        id_width: width,
        certs: ids.iter().copied().zip(certs).collect::<BTreeMap<_, _>>(),
    }
}

struct Exhaustive<'a> {
    scheme: &'a dyn Scheme,
    balls: &'a Balls,
    options: &'a [Vec<Bits>],
    /// Vertices whose ball is complete once vertex `k` is assigned.
    ready: Vec<Vec<usize>>,
}

impl<'a> Exhaustive<'a> {
    fn run(&self, k: usize, certs: &mut Vec<Option<&'a Bits>>) -> bool {
        if k == certs.len() {
            return true;
        }
        for opt in &self.options[k] {
            certs[k] = Some(opt);
            if self.ready[k].iter().all(|&v| self.balls.accepts(self.scheme, v, certs)) && self.run(k + 1, certs) {
                return true;
            }
        }
        certs[k] = None;
        false
    }
}

/// An all-accepting proof for `g`, if the search finds one.
pub fn adversary_search(g: &Graph, scheme: &dyn Scheme, mode: AdversaryMode) -> Result<Option<Proof>, CertifyError> {
    if g.n() == 0 {
        return Err(CertifyError::Empty);
    }
    if !g.is_connected() {
        return Err(CertifyError::Disconnected);
    }
    let balls = Balls::new(g, scheme.horizon());
    match mode {
        AdversaryMode::Exhaustive => {
            let alphabet = scheme.certificate_alphabet().ok_or(CertifyError::NoAlphabet)?;
            let log2 = certificate_space(scheme, g.n()).unwrap();
            if log2 > SPACE_LIMIT as f64 + 1e-9 {
                return Err(CertifyError::SpaceTooLarge { log2 });
            }
            let options: Vec<Bits> = alphabet
                .into_iter()
                .filter(|b| scheme.local_precheck(b, balls.width))
                .collect();
            let per_vertex = vec![options; g.n()];
            let mut ready = vec![Vec::new(); g.n()];
            for v in 0..g.n() {
                ready[balls.last[v]].push(v);
            }
            let search = Exhaustive {
                scheme,
                balls: &balls,
                options: &per_vertex,
                ready,
            };
            // The first vertex's choices split the space into independent ranges.
            let found = per_vertex[0].par_iter().find_map_any(|first| {
                let mut certs: Vec<Option<&Bits>> = vec![None; g.n()];
                certs[0] = Some(first);
                let ok = search.ready[0].iter().all(|&v| balls.accepts(scheme, v, &certs)) && search.run(1, &mut certs);
                ok.then(|| certs.into_iter().map(|c| c.unwrap().clone()).collect::<Vec<_>>())
            });
            Ok(found.map(|certs| proof_of(scheme, &balls.ids, balls.width, certs)))
        }
        AdversaryMode::Randomized { budget, seed } => {
            let honest = scheme.prove(g, Structure::Generic).ok();
            let alphabet = scheme.certificate_alphabet();
            let len = honest.as_ref().map_or(0, |p| p.size_bits());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..budget {
                let certs: Vec<Bits> = match (&alphabet, &honest) {
                    (Some(a), _) => (0..g.n()).map(|_| a[rng.gen_range(0..a.len())].clone()).collect(),
                    (None, Some(p)) if rng.gen_bool(0.5) => {
                        // Flip a few bits of the honest proof.
                        let mut certs: Vec<Bits> = p.certs.values().cloned().collect();
                        for _ in 0..rng.gen_range(1..=3) {
                            let v = rng.gen_range(0..certs.len());
                            let mut raw = certs[v].as_slice().to_vec();
                            if !raw.is_empty() {
                                let k = rng.gen_range(0..raw.len());
                                raw[k] = !raw[k];
                            }
                            certs[v] = Bits::from_bools(raw);
                        }
                        certs
                    }
                    _ => (0..g.n())
                        .map(|_| Bits::from_bools((0..len).map(|_| rng.gen()).collect()))
                        .collect(),
                };
                let refs: Vec<Option<&Bits>> = certs.iter().map(Some).collect();
                if (0..g.n()).all(|v| balls.accepts(scheme, v, &refs)) {
                    return Ok(Some(proof_of(scheme, &balls.ids, balls.width, certs)));
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{evaluate, SchemeA};
    use crate::graph::{named, Acyclic};
    use std::sync::Arc;

    fn scheme() -> SchemeA {
        SchemeA::new(Arc::new(Acyclic), 0.5, 3, 3).unwrap()
    }

    #[test]
    fn member_admits_a_proof() {
        // P4 fits in one colour class of weak diameter 3; P5 does not.
        let g = named::path(4);
        let a = scheme();
        let found = adversary_search(&g, &a, AdversaryMode::Exhaustive).unwrap().unwrap();
        assert!(evaluate(&g, &found, &a).unwrap().accepted);
        assert_eq!(
            adversary_search(&named::path(5), &a, AdversaryMode::Exhaustive).unwrap(),
            None
        );
    }

    #[test]
    fn far_cycle_has_none() {
        // K4: 6 edges, distance 3 to acyclic, so 0.5-far.
        let a = scheme();
        assert_eq!(
            adversary_search(&named::complete(4), &a, AdversaryMode::Exhaustive).unwrap(),
            None
        );
        let r = adversary_search(
            &named::complete(4),
            &a,
            AdversaryMode::Randomized { budget: 200, seed: 1 },
        )
        .unwrap();
        assert_eq!(r, None);
    }

    #[test]
    fn space_guard() {
        let a = scheme();
        let g = named::path(9);
        assert!(matches!(
            adversary_search(&g, &a, AdversaryMode::Exhaustive),
            Err(CertifyError::SpaceTooLarge { .. })
        ));
        assert_eq!(certificate_space(&a, 8), Some(24.0));
    }

    #[test]
    fn precheck_failure_means_rejection() {
        // Every certificate the precheck discards is rejected by the
        // verifier at its own vertex, whatever its neighbors hold.
        let a = scheme();
        let g = named::path(3);
        for own in Bits::all_of_length(3).into_iter().filter(|b| !a.local_precheck(b, 2)) {
            for other in Bits::all_of_length(3) {
                let mut certs: BTreeMap<VertexId, Bits> = g.ids().iter().map(|&v| (v, other.clone())).collect();
                certs.insert(2, own.clone());
                let proof = Proof {
                    scheme: "A".into(),
                    params: a.params(),
                    id_width: 2,
                    certs,
                };
                let v = evaluate(&g, &proof, &a).unwrap();
                assert!(v.rejecting_vertices.contains(&2));
            }
        }
    }
}
