//! Ball-swap locality and the post-hoc soundness harness.

mod common;

use std::sync::Arc;

use minorlab::certify::{
    adversary_search, evaluate, posthoc_soundness, AdversaryMode, BallView, Bits, Proof, Scheme, SchemeA, SchemeB,
    SpanningTree,
};
use minorlab::graph::{connected_graphs, generate_instance, parse_property, Acyclic, Family, Structure};
use minorlab::obstructions::enumerate_minimal_forbidden;
use minorlab::{Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `g` cut down to the ball of radius `r` around `center`, with a tail of
/// fresh vertices hanging off a vertex at distance exactly `r` and random
/// certificates on them. The radius-`r` ball is unchanged. `None` when the
/// ball is all of `g`'s component.
fn swap_outside(g: &Graph, proof: &Proof, center: usize, r: usize, rng: &mut ChaCha8Rng) -> Option<(Graph, Proof)> {
    let ball = g.ball(center, r);
    let dist = g.bfs(center);
    let anchor = *ball.iter().find(|&&v| dist[v] == Some(r))?;
    let mut ids: Vec<VertexId> = ball.iter().map(|&v| g.id(v)).collect();
    let mut edges: Vec<(VertexId, VertexId)> = g.induced(&ball).edge_ids();
    let fresh = g.max_id() + 1;
    let tail = rng.gen_range(1..4);
    for k in 0..tail {
        ids.push(fresh + k);
        edges.push((if k == 0 { g.id(anchor) } else { fresh + k - 1 }, fresh + k));
    }
    let h = Graph::with_ids(ids, edges).unwrap();
    let mut certs = proof.certs.clone();
    certs.retain(|v, _| h.index_of(*v).is_some());
    let len = proof.certs.values().next().unwrap().len();
    for k in 0..tail {
        certs.insert(fresh + k, Bits::from_bools((0..len).map(|_| rng.gen()).collect()));
    }
    Some((h, Proof { certs, ..proof.clone() }))
}

fn check_locality(scheme: &dyn Scheme, g: &Graph, proof: &Proof, rng: &mut ChaCha8Rng) {
    let r = scheme.horizon();
    let mut checked = 0;
    for _ in 0..1000 {
        if checked == 8 {
            break;
        }
        let center = rng.gen_range(0..g.n());
        let Some((h, proof_h)) = swap_outside(g, proof, center, r, rng) else {
            continue;
        };
        checked += 1;
        let id = g.id(center);
        let a = BallView::new(g, proof, id, r).unwrap();
        let b = BallView::new(&h, &proof_h, id, r).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.certs, b.certs);
        assert_eq!(scheme.verify(&a), scheme.verify(&b), "{} at {id}", scheme.name());
    }
    assert_eq!(checked, 8, "host too shallow for radius {r}");
}

/// Flips a few random certificate bits.
fn tamper(proof: &Proof, rng: &mut ChaCha8Rng) -> Proof {
    let mut out = proof.clone();
    let keys: Vec<VertexId> = out.certs.keys().copied().collect();
    for _ in 0..3 {
        let v = keys[rng.gen_range(0..keys.len())];
        let mut bits = out.certs[&v].as_slice().to_vec();
        if !bits.is_empty() {
            let i = rng.gen_range(0..bits.len());
            bits[i] = !bits[i];
        }
        out.certs.insert(v, Bits::from_bools(bits));
    }
    out
}

#[test]
fn ball_swap_preserves_every_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = SchemeA::for_structure(Arc::new(Acyclic), 0.5, &Structure::Forest).unwrap();
    let amoc = parse_property("at-most-one-cycle").unwrap();
    let family = enumerate_minimal_forbidden(amoc.as_ref(), 4, 6).unwrap();
    let b = SchemeB::for_structure(amoc, 2.0 / 3.0, family, &Structure::Forest).unwrap();
    let schemes: [&dyn Scheme; 3] = [&a, &b, &SpanningTree];
    for seed in 0..6 {
        let g = generate_instance(Family::RandomForest, 300, seed)
            .unwrap()
            .graph
            .connect_components();
        for scheme in schemes {
            let honest = scheme.prove(&g, Structure::Forest).unwrap();
            check_locality(scheme, &g, &honest, &mut rng);
            check_locality(scheme, &g, &tamper(&honest, &mut rng), &mut rng);
        }
    }
}

#[test]
fn accepting_proofs_yield_a_cheap_repair() {
    // s = 4 and ε = 2/3 demand three of four sets at every vertex.
    let scheme = SchemeA::new(Arc::new(Acyclic), 2.0 / 3.0, 4, 2).unwrap();
    let mut accepted = 0;
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let Some(proof) = adversary_search(&g, &scheme, AdversaryMode::Exhaustive).unwrap() else {
                continue;
            };
            assert!(evaluate(&g, &proof, &scheme).unwrap().accepted);
            let w = posthoc_soundness(&scheme, &g, &proof).unwrap();
            assert!(w.within_budget, "{g:?}");
            assert!(w.remainder_in_property, "{g:?}");
            // Re-derived without the library: the remainder is a forest.
            let rest = g.without_edges(&w.edits);
            assert!(common::is_forest(rest.n(), &common::edges(&rest)));
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn randomized_adversary_on_larger_hosts() {
    let scheme = SchemeA::for_structure(Arc::new(Acyclic), 0.5, &Structure::Forest).unwrap();
    for seed in 0..4 {
        let g = generate_instance(Family::RandomPlanar, 12, seed).unwrap().graph;
        if !g.is_connected() {
            continue;
        }
        let mode = AdversaryMode::Randomized { budget: 2_000, seed };
        if let Some(proof) = adversary_search(&g, &scheme, mode).unwrap() {
            let w = posthoc_soundness(&scheme, &g, &proof).unwrap();
            assert!(w.within_budget && w.remainder_in_property, "{g:?}");
        }
    }
}
