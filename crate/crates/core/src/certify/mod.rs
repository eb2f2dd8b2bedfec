//! Proof labelling schemes: per-vertex certificates checked by verifiers
//! that only see a ball around their vertex.

mod adversary;
mod bits;
mod scheme_a;
mod scheme_b;
mod spanning;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomp::CoverError;
use crate::graph::{Graph, Structure, VertexId};

pub use adversary::{adversary_search, certificate_space, AdversaryMode, SPACE_LIMIT};
pub use bits::{id_width, BitReader, Bits};
pub use scheme_a::{posthoc_soundness, PosthocWitness, SchemeA};
pub use scheme_b::{component_subsets, SchemeB};
pub use spanning::{spanning_tree_prove, spanning_tree_verify, SpanningTree, TreeCert};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("proof has no certificate for vertex {0}")]
    MissingCertificate(VertexId),
    #[error("proof certifies unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("proof is for scheme `{found}`, expected `{expected}`")]
    SchemeMismatch { expected: String, found: String },
    #[error("property `{0}` is not summable")]
    NotSummable(String),
    #[error("property `{0}` is not monotone")]
    NotMonotone(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("cover does not fit the public parameters: {0}")]
    ParameterMismatch(String),
    #[error("certificate space of 2^{log2:.1} exceeds the exhaustive limit of 2^24")]
    SpaceTooLarge { log2: f64 },
    #[error("scheme has no finite certificate alphabet")]
    NoAlphabet,
}

/// Certificates for every vertex, with the identifier width used to encode
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub scheme: String,
    pub params: serde_json::Value,
    pub id_width: usize,
    pub certs: BTreeMap<VertexId, Bits>,
}

impl Proof {
    /// Largest certificate, in bits.
    pub fn size_bits(&self) -> usize {
        self.certs.values().map(Bits::len).max().unwrap_or(0)
    }
}

/// What a verifier sees: the ball of radius `r` around `center`, with
/// identifiers and certificates, and nothing else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallView {
    pub center: VertexId,
    pub radius: usize,
    pub graph: Graph,
    pub certs: BTreeMap<VertexId, Bits>,
    pub id_width: usize,
}

impl BallView {
    pub fn new(g: &Graph, proof: &Proof, center: VertexId, radius: usize) -> Option<BallView> {
        let c = g.index_of(center)?;
        let ball = g.ball(c, radius);
        let graph = g.induced(&ball);
        let certs = graph
            .ids()
            .iter()
            .filter_map(|id| Some((*id, proof.certs.get(id)?.clone())))
            .collect();
        Some(BallView {
            center,
            radius,
            graph,
            certs,
            id_width: proof.id_width,
        })
    }

    pub fn center_index(&self) -> usize {
        self.graph.index_of(self.center).expect("center lies in its ball")
    }

    /// Distances from the center, which are the true distances in the host
    /// for every vertex of the ball.
    pub fn distances(&self) -> Vec<usize> {
        self.graph
            .bfs(self.center_index())
            .into_iter()
            .map(|d| d.expect("balls are connected"))
            .collect()
    }

    pub fn cert(&self, id: VertexId) -> Option<&Bits> {
        self.certs.get(&id)
    }
}

pub trait Scheme: Send + Sync {
    fn name(&self) -> String;
    /// Verifier horizon `r`.
    fn horizon(&self) -> usize;
    fn params(&self) -> serde_json::Value;
    /// The honest prover. `structure` tells the cover constructor how the
    /// graph was generated.
    fn prove(&self, g: &Graph, structure: Structure) -> Result<Proof, CertifyError>;
    fn verify(&self, view: &BallView) -> bool;
    /// A check of a vertex's own certificate that the verifier at that
    /// vertex performs first. Failing it means rejection at that vertex.
    fn local_precheck(&self, _cert: &Bits, _id_width: usize) -> bool {
        true
    }
    /// Every well-formed certificate, when there are finitely many that do
    /// not depend on identifiers.
    fn certificate_alphabet(&self) -> Option<Vec<Bits>> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub accepted: bool,
    pub rejecting_vertices: Vec<VertexId>,
    pub proof_size_bits: usize,
    /// The output bit of every vertex.
    #[serde(skip)]
    pub outputs: BTreeMap<VertexId, bool>,
}

fn check_proof(g: &Graph, proof: &Proof) -> Result<(), CertifyError> {
    if g.n() == 0 {
        return Err(CertifyError::Empty);
    }
    if !g.is_connected() {
        return Err(CertifyError::Disconnected);
    }
    if let Some(&id) = g.ids().iter().find(|id| !proof.certs.contains_key(id)) {
        return Err(CertifyError::MissingCertificate(id));
    }
    if let Some(&id) = proof.certs.keys().find(|&&id| g.index_of(id).is_none()) {
        return Err(CertifyError::UnknownVertex(id));
    }
    Ok(())
}

/// Runs the verifier at every vertex on its own ball.
pub fn evaluate(g: &Graph, proof: &Proof, scheme: &dyn Scheme) -> Result<Verdict, CertifyError> {
    check_proof(g, proof)?;
    if proof.scheme != scheme.name() {
        return Err(CertifyError::SchemeMismatch {
            expected: scheme.name(),
            found: proof.scheme.clone(),
        });
    }
    let r = scheme.horizon();
    let outputs: BTreeMap<VertexId, bool> = g
        .ids()
        .par_iter()
        .map(|&v| {
            let view = BallView::new(g, proof, v, r).expect("vertex of g");
            (v, scheme.verify(&view))
        })
        .collect();
    let rejecting_vertices: Vec<VertexId> = outputs.iter().filter(|(_, &ok)| !ok).map(|(&v, _)| v).collect();
    Ok(Verdict {
        accepted: rejecting_vertices.is_empty(),
        rejecting_vertices,
        proof_size_bits: proof.size_bits(),
        outputs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn ball_view_holds_exactly_the_ball() {
        let g = named::path(6);
        let st = SpanningTree;
        let proof = st.prove(&g, Structure::Generic).unwrap();
        let view = BallView::new(&g, &proof, 3, 1).unwrap();
        assert_eq!(view.graph.ids(), &[2, 3, 4]);
        assert_eq!(view.certs.keys().copied().collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(view.distances(), vec![1, 0, 1]);
    }

    #[test]
    fn evaluate_preconditions() {
        let st = SpanningTree;
        let g = named::path(3);
        let mut proof = st.prove(&g, Structure::Generic).unwrap();
        let two = Graph::empty(2);
        assert_eq!(evaluate(&two, &proof, &st), Err(CertifyError::Disconnected));
        proof.certs.remove(&2);
        assert_eq!(evaluate(&g, &proof, &st), Err(CertifyError::MissingCertificate(2)));
        proof.certs.insert(2, Bits::new());
        proof.certs.insert(9, Bits::new());
        assert_eq!(evaluate(&g, &proof, &st), Err(CertifyError::UnknownVertex(9)));
    }

    #[test]
    fn verdict_json() {
        let g = named::cycle(5);
        let st = SpanningTree;
        let proof = st.prove(&g, Structure::Generic).unwrap();
        let v = evaluate(&g, &proof, &st).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["accepted"], true);
        assert_eq!(json["rejecting_vertices"].as_array().unwrap().len(), 0);
        assert_eq!(json["proof_size_bits"], 10);
        let p = serde_json::to_value(&proof).unwrap();
        assert_eq!(p["scheme"], "spanning-tree");
        assert_eq!(p["id_width"], 3);
        assert!(p["certs"]["1"].as_str().unwrap().starts_with("10:"));
    }
}
