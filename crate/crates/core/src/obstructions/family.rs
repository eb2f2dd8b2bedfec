use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bounds::unsplit_size_bound;
use super::split::find_split;
use crate::decomp::treedepth;
use crate::graph::{all_graphs, canonical_form, Graph, Property};

/// Largest `n_max` accepted by [`enumerate_minimal_forbidden`].
pub const ENUMERATION_MAX_VERTICES: usize = 8;

/// Digit budget used when capping `N` by the unsplit size bound.
const CAP_DIGITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySource {
    /// Exhaustive over all graphs up to `n_max` vertices with `td ≤ d`.
    Enumerated {
        d: usize,
        n_max: usize,
    },
    UserSupplied,
}

/// A finite set of forbidden graphs with a vertex bound `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenFamily {
    pub members: Vec<Graph>,
    #[serde(rename = "N")]
    pub size_bound: usize,
    pub source: FamilySource,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("n_max = {n_max} exceeds the enumeration guard of {limit}")]
    TooLarge { n_max: usize, limit: usize },
    #[error("forbidden family is empty")]
    Empty,
    #[error("member {index} has {vertices} vertices, more than N = {bound}")]
    MemberTooLarge {
        index: usize,
        vertices: usize,
        bound: usize,
    },
}

impl ForbiddenFamily {
    /// A user-supplied family; `N` is the largest member.
    pub fn user_supplied(members: Vec<Graph>) -> Result<Self, FamilyError> {
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        let size_bound = members.iter().map(Graph::n).max().unwrap();
        Ok(ForbiddenFamily {
            members,
            size_bound,
            source: FamilySource::UserSupplied,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Members within the declared bound `N`.
    pub fn check_bound(&self) -> Result<(), FamilyError> {
        for (index, h) in self.members.iter().enumerate() {
            if h.n() > self.size_bound {
                return Err(FamilyError::MemberTooLarge {
                    index,
                    vertices: h.n(),
                    bound: self.size_bound,
                });
            }
        }
        Ok(())
    }
}

/// `H ∉ P` while deleting any edge or any vertex of `H` lands in `P`. For a
/// monotone property this is exactly minimality among subgraphs.
pub fn is_minimal_non_member<P: Property + ?Sized>(p: &P, h: &Graph) -> bool {
    !p.is_member(h)
        && h.edges().into_iter().all(|(a, b)| {
            let mut f = crate::graph::EditSet::new();
            f.insert(h.id(a), h.id(b));
            p.is_member(&h.without_edges(&f))
        })
        && (0..h.n()).all(|v| p.is_member(&h.without_vertex(v)))
}

/// Every graph on at most `n_max` vertices, up to isomorphism, that is
/// minimally outside `P` and has treedepth at most `d`. Members come in
/// `(vertex count, canonical form)` order. `N` is `n_max`, lowered to the
/// unsplit size bound for `d` when that is smaller and every member found
/// is unsplit.
pub fn enumerate_minimal_forbidden<P: Property + ?Sized>(
    p: &P,
    d: usize,
    n_max: usize,
) -> Result<ForbiddenFamily, FamilyError> {
    if n_max > ENUMERATION_MAX_VERTICES {
        return Err(FamilyError::TooLarge {
            n_max,
            limit: ENUMERATION_MAX_VERTICES,
        });
    }
    let mut members = Vec::new();
    for n in 1..=n_max {
        for h in all_graphs(n) {
            // Minimal obstructions of a monotone property have no isolated
            // vertices unless they are a single vertex.
            if n > 1 && (0..n).any(|v| h.degree(v) == 0) {
                continue;
            }
            if is_minimal_non_member(p, &h) && treedepth(&h).is_ok_and(|(td, _)| td <= d) {
                members.push(h);
            }
        }
    }
    debug_assert!(members
        .windows(2)
        .all(|w| { (w[0].n(), canonical_form(&w[0])) < (w[1].n(), canonical_form(&w[1])) }));
    let all_unsplit = members
        .iter()
        .all(|h| h.is_connected() && find_split(h).ok() == Some(None));
    let cap = unsplit_size_bound(d, CAP_DIGITS)
        .ok()
        .and_then(|b| usize::try_from(b).ok())
        .filter(|_| all_unsplit)
        .unwrap_or(usize::MAX);
    Ok(ForbiddenFamily {
        members,
        size_bound: n_max.min(cap),
        source: FamilySource::Enumerated { d, n_max },
    })
}
