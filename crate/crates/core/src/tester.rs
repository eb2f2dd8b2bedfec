//! The random-neighbor oracle and a one-sided tester for freeness from a
//! finite family.
//!
//! The tester runs `⌈c₁·N/δ⌉` rounds. A round draws a random vertex and then
//! spends `⌈N·c₂^N⌉` random-neighbor queries growing an exploration of at most
//! `N` vertices: each step queries a random neighbor of a uniformly chosen
//! explored vertex. A dead end restarts the exploration at a fresh random
//! vertex, in the same query slot. The explored edges are searched for a
//! family member whenever an exploration ends. The whole budget is always
//! spent, so query counts depend only on `δ`, `N`, `c₁` and `c₂`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{contains_subgraph, find_embedding, Graph, Property, VertexId};
use crate::obstructions::ForbiddenFamily;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QueryStats {
    pub random_vertex_count: u64,
    pub random_neighbor_count: u64,
}

impl QueryStats {
    pub fn total(&self) -> u64 {
        self.random_vertex_count + self.random_neighbor_count
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("random vertex requested from an empty host")]
    EmptyHost,
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
}

/// Query access to a hidden host graph.
pub struct Oracle<'g> {
    host: &'g Graph,
    rng: ChaCha8Rng,
    stats: QueryStats,
}

impl<'g> Oracle<'g> {
    pub fn new(host: &'g Graph, seed: u64) -> Self {
        Oracle {
            host,
            rng: ChaCha8Rng::seed_from_u64(seed),
            stats: QueryStats::default(),
        }
    }

    pub fn stats(&self) -> QueryStats {
        self.stats
    }

    /// Uniform over `V(G)`.
    pub fn random_vertex(&mut self) -> Result<VertexId, QueryError> {
        if self.host.n() == 0 {
            return Err(QueryError::EmptyHost);
        }
        self.stats.random_vertex_count += 1;
        let v = self.rng.gen_range(0..self.host.n());
        Ok(self.host.id(v))
    }

    /// Uniform over the neighbors of `v`; `None` when `v` is isolated.
    pub fn random_neighbor(&mut self, v: VertexId) -> Result<Option<VertexId>, QueryError> {
        let i = self.host.index_of(v).ok_or(QueryError::UnknownVertex(v))?;
        self.stats.random_neighbor_count += 1;
        let nbrs = self.host.neighbors(i);
        if nbrs.is_empty() {
            return Ok(None);
        }
        let j = nbrs[self.rng.gen_range(0..nbrs.len())];
        Ok(Some(self.host.id(j)))
    }
}

/// Configuration constants of the query budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TesterParams {
    pub c1: f64,
    pub c2: f64,
}

impl Default for TesterParams {
    fn default() -> Self {
        TesterParams { c1: 1.0, c2: 2.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryBudget {
    pub rounds: u64,
    pub steps: u64,
    /// `rounds · (1 + steps)`, about `c₁·(N²/δ)·c₂^N`.
    pub total: u64,
}

/// The budget for proximity `delta` and family bound `n_bound`.
pub fn query_budget(delta: f64, n_bound: usize, params: TesterParams) -> QueryBudget {
    let n = n_bound.max(1) as f64;
    let rounds = (params.c1 * n / delta - 1e-9).ceil().max(1.0) as u64;
    let steps = (n * params.c2.powf(n) - 1e-9).ceil().max(1.0) as u64;
    QueryBudget {
        rounds,
        steps,
        total: rounds * (1 + steps),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TesterVerdict {
    pub decision: Decision,
    /// A copy of a family member built only from queried edges.
    pub witness: Option<Graph>,
    pub stats: QueryStats,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TesterError {
    #[error("eps must lie in (0, 1), got {0}")]
    InvalidEps(f64),
    #[error("forbidden family is empty")]
    EmptyFamily,
    #[error("property `{0}` is not monotone")]
    NotMonotone(String),
    #[error("C must be positive, got {0}")]
    InvalidDensity(f64),
    #[error("family member {0} belongs to the property")]
    MemberInProperty(usize),
    #[error("family member {index} has {vertices} vertices, more than N = {bound}")]
    MemberTooLarge {
        index: usize,
        vertices: usize,
        bound: usize,
    },
}

struct Exploration {
    vertices: Vec<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl Exploration {
    fn at(v: VertexId) -> Self {
        Exploration {
            vertices: vec![v],
            edges: BTreeSet::new(),
        }
    }

    fn find(&self, family: &ForbiddenFamily) -> Option<Graph> {
        let min_edges = family.members.iter().map(Graph::m).min().unwrap_or(0);
        if self.edges.len() < min_edges {
            return None;
        }
        let seen = Graph::with_ids(self.vertices.clone(), self.edges.iter().copied()).ok()?;
        family.members.iter().find_map(|h| {
            let emb = find_embedding(&seen, h, |_, _| true)?;
            let ids: Vec<VertexId> = emb.iter().map(|&v| seen.id(v)).collect();
            let edges = h.edges().into_iter().map(|(a, b)| (ids[a], ids[b]));
            Graph::with_ids(ids.clone(), edges).ok()
        })
    }
}

/// One-sided test of freeness from `family` at proximity `eps`. Rejects only
/// with a witness assembled from answered queries. An empty host is
/// accepted without queries.
pub fn test_h_freeness(
    oracle: &mut Oracle<'_>,
    family: &ForbiddenFamily,
    eps: f64,
    params: TesterParams,
    seed: u64,
) -> TesterVerdict {
    let budget = query_budget(eps, family.size_bound, params);
    let cap = family.size_bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness: Option<Graph> = None;
    let consider = |ex: &Exploration, witness: &mut Option<Graph>| {
        if witness.is_none() {
            *witness = ex.find(family);
        }
    };
    'rounds: for _ in 0..budget.rounds {
        let Ok(start) = oracle.random_vertex() else {
            break 'rounds;
        };
        let mut ex = Exploration::at(start);
        let mut dead = false;
        for _ in 0..budget.steps {
            if dead {
                consider(&ex, &mut witness);
                ex = Exploration::at(oracle.random_vertex().expect("host is nonempty"));
                dead = false;
                continue;
            }
            let x = ex.vertices[rng.gen_range(0..ex.vertices.len())];
            match oracle.random_neighbor(x).expect("explored vertices are host vertices") {
                None => dead = true,
                Some(y) => {
                    let fresh = !ex.vertices.contains(&y);
                    if fresh && ex.vertices.len() >= cap {
                        continue;
                    }
                    if fresh {
                        ex.vertices.push(y);
                    }
                    ex.edges.insert((x.min(y), x.max(y)));
                }
            }
        }
        consider(&ex, &mut witness);
    }
    let decision = if witness.is_some() {
        Decision::Reject
    } else {
        Decision::Accept
    };
    TesterVerdict {
        decision,
        witness,
        stats: oracle.stats(),
    }
}

/// Proximity handed to the freeness tester: `δ = ε/(2NC)`.
pub fn monotone_delta(eps: f64, n_bound: usize, c: f64) -> f64 {
    eps / (2.0 * n_bound.max(1) as f64 * c)
}

/// Tests a monotone property through its forbidden family, at proximity
/// `δ = ε/(2NC)`. A witness is a host subgraph outside `P`.
pub fn test_monotone<P: Property + ?Sized>(
    oracle: &mut Oracle<'_>,
    p: &P,
    eps: f64,
    family: &ForbiddenFamily,
    c: f64,
    params: TesterParams,
    seed: u64,
) -> Result<TesterVerdict, TesterError> {
    let delta = check_monotone_setup(p, eps, family, c)?;
    Ok(test_h_freeness(oracle, family, delta, params, seed))
}

fn check_monotone_setup<P: Property + ?Sized>(
    p: &P,
    eps: f64,
    family: &ForbiddenFamily,
    c: f64,
) -> Result<f64, TesterError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(TesterError::InvalidEps(eps));
    }
    if family.is_empty() {
        return Err(TesterError::EmptyFamily);
    }
    if !p.is_monotone() {
        return Err(TesterError::NotMonotone(p.name()));
    }
    if c.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(TesterError::InvalidDensity(c));
    }
    for (index, h) in family.members.iter().enumerate() {
        if h.n() > family.size_bound {
            return Err(TesterError::MemberTooLarge {
                index,
                vertices: h.n(),
                bound: family.size_bound,
            });
        }
        if p.is_member(h) {
            return Err(TesterError::MemberInProperty(index));
        }
    }
    Ok(monotone_delta(eps, family.size_bound, c))
}

/// The witness is a subgraph of `host` containing a family member.
pub fn verify_witness(host: &Graph, witness: &Graph, family: &ForbiddenFamily) -> bool {
    host.contains_edges_of(witness) && family.members.iter().any(|h| contains_subgraph(witness, h))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub host_digest: String,
    pub property: String,
    pub eps: f64,
    pub delta: f64,
    #[serde(rename = "N")]
    pub size_bound: usize,
    #[serde(rename = "C")]
    pub density: f64,
    pub c1: f64,
    pub c2: f64,
    pub budget: u64,
    pub trials: usize,
    pub reject_rate: f64,
    pub mean_queries: f64,
    pub seeds: Vec<u64>,
    pub witness_samples: Vec<Graph>,
}

/// Oracle and tester seeds of one trial.
fn trial_seeds(seed: u64) -> (u64, u64) {
    (seed, seed ^ 0x5eed_7e57_0000_0000)
}

/// Independent trials of [`test_monotone`], one per seed, in parallel.
pub fn run_trials<P: Property + ?Sized>(
    host: &Graph,
    p: &P,
    eps: f64,
    family: &ForbiddenFamily,
    c: f64,
    params: TesterParams,
    seeds: &[u64],
) -> Result<(TrialReport, Vec<TesterVerdict>), TesterError> {
    let delta = check_monotone_setup(p, eps, family, c)?;
    let verdicts: Vec<TesterVerdict> = seeds
        .par_iter()
        .map(|&seed| {
            let (oracle_seed, tester_seed) = trial_seeds(seed);
            let mut oracle = Oracle::new(host, oracle_seed);
            test_h_freeness(&mut oracle, family, delta, params, tester_seed)
        })
        .collect();
    let trials = verdicts.len();
    let rejects = verdicts.iter().filter(|v| v.decision == Decision::Reject).count();
    let queries: u64 = verdicts.iter().map(|v| v.stats.total()).sum();
    let per_trial = |x: f64| if trials == 0 { 0.0 } else { x / trials as f64 };
    let report = TrialReport {
        host_digest: host.digest(),
        property: p.name(),
        eps,
        delta,
        size_bound: family.size_bound,
        density: c,
        c1: params.c1,
        c2: params.c2,
        budget: query_budget(delta, family.size_bound, params).total,
        trials,
        reject_rate: per_trial(rejects as f64),
        mean_queries: per_trial(queries as f64),
        seeds: seeds.to_vec(),
        witness_samples: verdicts.iter().filter_map(|v| v.witness.clone()).take(3).collect(),
    };
    Ok((report, verdicts))
}
