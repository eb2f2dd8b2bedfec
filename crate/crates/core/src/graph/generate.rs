use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{is_planar, Graph, VertexId};

/// Instance families. Every family produces planar graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Near-square grid; vertex `(x, y)` has identifier `y·w + x + 1`.
    Grid,
    /// Random subgraph of a lattice with one diagonal per cell, connected
    /// through a random spanning tree.
    RandomPlanar,
    /// `⌊n/3⌋` triangles chained by bridge edges, leftovers as a tail.
    DisjointTrianglesPlusPath,
    /// Random recursive forest.
    RandomForest,
    /// Disjoint odd cycles, leftovers isolated.
    OddCycleSum,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Grid,
        Family::RandomPlanar,
        Family::DisjointTrianglesPlusPath,
        Family::RandomForest,
        Family::OddCycleSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::RandomPlanar => "random-planar",
            Family::DisjointTrianglesPlusPath => "disjoint-triangles-plus-path",
            Family::RandomForest => "random-forest",
            Family::OddCycleSum => "odd-cycle-sum",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("n must be at least 1")]
    Empty,
    #[error("generator produced a non-planar {0} instance")]
    NotPlanar(Family),
}

impl FromStr for Family {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenerateError::UnknownFamily(s.to_string()))
    }
}

/// Structural metadata known from the generator, used by cover constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Structure {
    Generic,
    Forest,
    /// Subgraph of the `width × height` lattice with at most one diagonal per
    /// cell; vertex `(x, y)` has identifier `y·width + x + 1`.
    Lattice {
        width: usize,
        height: usize,
    },
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub family: Family,
    pub structure: Structure,
}

fn near_square(n: usize) -> (usize, usize) {
    let w = (1..=n)
        .take_while(|w| w * w <= n)
        .filter(|w| n % w == 0)
        .last()
        .unwrap_or(1);
    (w, n / w)
}

fn rng_for(family: Family, n: usize, seed: u64) -> ChaCha8Rng {
    let tag = Family::ALL.iter().position(|&f| f == family).unwrap() as u64;
    ChaCha8Rng::seed_from_u64(seed ^ (tag << 56) ^ ((n as u64) << 24))
}

/// Relabels vertex `i` to identifier `perm[i]`.
fn with_permuted_ids(n: usize, edges: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<VertexId> = (1..=n as VertexId).collect();
    perm.shuffle(rng);
    Graph::with_ids(perm.clone(), edges.iter().map(|&(a, b)| (perm[a], perm[b]))).expect("generator edges are simple")
}

fn union_find_root(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn random_planar(n: usize, rng: &mut ChaCha8Rng) -> (Graph, Structure) {
    let (w, h) = near_square(n);
    let at = |x: usize, y: usize| y * w + x;
    let mut candidates = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                candidates.push((at(x, y), at(x + 1, y)));
            }
            if y + 1 < h {
                candidates.push((at(x, y), at(x, y + 1)));
            }
            if x + 1 < w && y + 1 < h {
                if rng.gen_bool(0.5) {
                    candidates.push((at(x, y), at(x + 1, y + 1)));
                } else {
                    candidates.push((at(x + 1, y), at(x, y + 1)));
                }
            }
        }
    }
    let keep = rng.gen_range(0.25..0.9);
    candidates.shuffle(rng);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    let mut extra = Vec::new();
    for (a, b) in candidates {
        let (ra, rb) = (union_find_root(&mut parent, a), union_find_root(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            edges.push((a, b));
        } else {
            extra.push((a, b));
        }
    }
    edges.extend(extra.into_iter().filter(|_| rng.gen_bool(keep)));
    edges.sort_unstable();
    (
        Graph::from_edges_unchecked(n, &edges),
        Structure::Lattice { width: w, height: h },
    )
}

/// Deterministic instance for `(family, n, seed)`, checked planar.
pub fn generate_instance(family: Family, n: usize, seed: u64) -> Result<Instance, GenerateError> {
    if n == 0 {
        return Err(GenerateError::Empty);
    }
    let mut rng = rng_for(family, n, seed);
    let (graph, structure) = match family {
        Family::Grid => {
            let (w, h) = near_square(n);
            (super::named::grid(w, h), Structure::Lattice { width: w, height: h })
        }
        Family::RandomPlanar => random_planar(n, &mut rng),
        Family::DisjointTrianglesPlusPath => {
            let t = n / 3;
            let mut edges = Vec::new();
            for i in 0..t {
                let b = 3 * i;
                edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
                if i + 1 < t {
                    edges.push((b + 2, b + 3));
                }
            }
            for v in 3 * t..n {
                if v > 0 {
                    edges.push((v - 1, v));
                }
            }
            (with_permuted_ids(n, &edges, &mut rng), Structure::Generic)
        }
        Family::RandomForest => {
            let mut edges = Vec::new();
            for v in 1..n {
                if rng.gen_bool(0.9) {
                    edges.push((rng.gen_range(0..v), v));
                }
            }
            (with_permuted_ids(n, &edges, &mut rng), Structure::Forest)
        }
        Family::OddCycleSum => {
            let mut edges = Vec::new();
            let mut start = 0;
            while n - start >= 3 {
                let room = n - start;
                let options: Vec<usize> = [3, 5, 7, 9]
                    .into_iter()
                    .filter(|&l| l <= room && room - l != 1)
                    .collect();
                let len = *options.choose(&mut rng).unwrap_or(&3);
                for i in 0..len {
                    edges.push((start + i, start + (i + 1) % len));
                }
                start += len;
            }
            for e in &mut edges {
                *e = (e.0.min(e.1), e.0.max(e.1));
            }
            (with_permuted_ids(n, &edges, &mut rng), Structure::Generic)
        }
    };
    if !is_planar(&graph) {
        return Err(GenerateError::NotPlanar(family));
    }
    Ok(Instance {
        graph,
        family,
        structure,
    })
}
