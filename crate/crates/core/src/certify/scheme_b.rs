//! Logarithmic-size scheme for monotone properties. Each set `X_i` of a
//! low-treedepth cover is certified component by component: a spanning tree
//! per component, an ancestor list in a decomposition of depth at most `d`,
//! and at each component root `r_C` the array `b(r_C)` of which graphs of
//! `𝓗′` occur in `C`. The arrays `c(v)` aggregate those claims up a global
//! spanning tree, and the global root checks that no member of `𝓗` is
//! assembled from distinct components.
//!
//! Component-level claims are checked by looking at the whole component,
//! which lies within distance `2^d − 1` of any of its vertices, so the
//! horizon is `R = 2^d + 1` rather than a single round.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::spanning::{bfs_tree, TreeCert};
use super::{id_width, BallView, BitReader, Bits, CertifyError, Proof, Scheme};
use crate::decomp::{coverage_ok, dissection_height, low_td_cover, TreedepthDecomposition};
use crate::graph::{
    canonical_form, contains_subgraph, CanonicalForm, Graph, Property, Structure, VertexId, MAX_CANON_VERTICES,
};
use crate::obstructions::ForbiddenFamily;

/// Every union of a nonempty set of components of a member, up to
/// isomorphism, ordered by `(vertex count, canonical form)`.
pub fn component_subsets(family: &ForbiddenFamily) -> Result<Vec<Graph>, CertifyError> {
    let mut forms: Vec<CanonicalForm> = Vec::new();
    for h in &family.members {
        if h.n() > MAX_CANON_VERTICES {
            return Err(CertifyError::InvalidParameter(format!(
                "family member on {} vertices exceeds the canonical-form limit {MAX_CANON_VERTICES}",
                h.n()
            )));
        }
        for sub in subset_unions(h) {
            forms.push(canonical_form(&sub));
        }
    }
    forms.sort_by_key(|f| (f.n, *f));
    forms.dedup();
    Ok(forms.into_iter().map(CanonicalForm::to_graph).collect())
}

/// `subset_unions(h)[mask − 1]` is the union of the components in `mask`.
fn subset_unions(h: &Graph) -> Vec<Graph> {
    let comps = h.components();
    (1u32..1 << comps.len())
        .map(|mask| {
            let mut vs: Vec<usize> = comps
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .flat_map(|(_, c)| c.iter().copied())
                .collect();
            vs.sort_unstable();
            h.induced(&vs).relabeled()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SchemeB {
    property: Arc<dyn Property>,
    pub eps: f64,
    /// `δ = ε/2`.
    pub delta: f64,
    pub s: usize,
    pub d: usize,
    pub family: ForbiddenFamily,
    /// `𝓗′` in index order.
    pub hprime: Vec<Graph>,
    /// For each `H′`, the index of every union of its components, by mask.
    parts: Vec<Vec<usize>>,
    /// Indices of the members of `𝓗` inside `𝓗′`.
    members: Vec<usize>,
}

struct Block {
    tree: Option<TreeCert>,
    anc: Vec<VertexId>,
    b: Vec<bool>,
    c: Vec<bool>,
}

struct CertB {
    member: Vec<bool>,
    global: TreeCert,
    blocks: Vec<Block>,
}

fn sets_for(k: f64, delta: f64) -> usize {
    (k / delta - 1e-9).ceil() as usize
}

impl SchemeB {
    pub fn new(
        property: Arc<dyn Property>,
        eps: f64,
        family: ForbiddenFamily,
        s: usize,
        d: usize,
    ) -> Result<Self, CertifyError> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(CertifyError::InvalidParameter(format!(
                "eps must lie in (0, 1], got {eps}"
            )));
        }
        if !property.is_monotone() {
            return Err(CertifyError::NotMonotone(property.name()));
        }
        if s == 0 || d == 0 || d > 16 {
            return Err(CertifyError::InvalidParameter(format!(
                "need s ≥ 1 and 1 ≤ d ≤ 16, got s = {s}, d = {d}"
            )));
        }
        let hprime = component_subsets(&family)?;
        let index: HashMap<CanonicalForm, usize> =
            hprime.iter().enumerate().map(|(k, h)| (canonical_form(h), k)).collect();
        let parts = hprime
            .iter()
            .map(|h| {
                let mut v = vec![usize::MAX];
                v.extend(subset_unions(h).iter().map(|u| index[&canonical_form(u)]));
                v
            })
            .collect();
        let members = family.members.iter().map(|h| index[&canonical_form(h)]).collect();
        Ok(SchemeB {
            property,
            eps,
            delta: eps / 2.0,
            s,
            d,
            family,
            hprime,
            parts,
            members,
        })
    }

    /// Public `(s, d)` of the cover constructor on forests (`s = ⌈1/δ⌉`,
    /// `d = s − 1`) or on lattices (`s = ⌈2/δ⌉`, `d` the dissection height
    /// of an `(s−1) × (s−1)` block).
    pub fn for_structure(
        property: Arc<dyn Property>,
        eps: f64,
        family: ForbiddenFamily,
        structure: &Structure,
    ) -> Result<Self, CertifyError> {
        let delta = eps / 2.0;
        let (s, d) = match structure {
            Structure::Forest => {
                let s = sets_for(1.0, delta);
                (s, s.saturating_sub(1).max(1))
            }
            Structure::Lattice { .. } => {
                let s = sets_for(2.0, delta);
                (s, dissection_height(s - 1, s - 1).max(1))
            }
            Structure::Generic => {
                return Err(CertifyError::InvalidParameter(
                    "generic graphs have no public treedepth bound; give s and d explicitly".into(),
                ))
            }
        };
        SchemeB::new(property, eps, family, s, d)
    }

    pub fn property(&self) -> &dyn Property {
        self.property.as_ref()
    }

    fn count_width(&self) -> usize {
        id_width(self.d as u64)
    }

    /// Certificate length for identifier width `w`.
    pub fn cert_len(&self, w: usize) -> usize {
        let l = self.hprime.len();
        self.s + TreeCert::width(w) + self.s * (TreeCert::width(w) + self.count_width() + self.d * w + 2 * l)
    }

    fn encode(&self, cert: &CertB, w: usize) -> Bits {
        let mut out = Bits::from_bools(cert.member.clone());
        cert.global.encode(w, &mut out);
        for blk in &cert.blocks {
            match blk.tree {
                Some(t) => t.encode(w, &mut out),
                None => out.push_uint(0, TreeCert::width(w)),
            }
            out.push_uint(blk.anc.len() as u64, self.count_width());
            for k in 0..self.d {
                out.push_uint(blk.anc.get(k).copied().unwrap_or(0) as u64, w);
            }
            out.extend(&Bits::from_bools(blk.b.clone()));
            out.extend(&Bits::from_bools(blk.c.clone()));
        }
        out
    }

    /// Strict decoding: exact length, and every field that carries no
    /// information must be zero.
    fn decode(&self, bits: &Bits, w: usize) -> Option<CertB> {
        if bits.len() != self.cert_len(w) {
            return None;
        }
        let l = self.hprime.len();
        let mut r: BitReader<'_> = bits.reader();
        let member = r.take(self.s)?;
        let global = TreeCert::decode(&mut r, w)?;
        let mut blocks = Vec::with_capacity(self.s);
        for &inside in &member {
            let raw = r.take(TreeCert::width(w))?;
            let count = r.uint(self.count_width())? as usize;
            let slots: Vec<VertexId> = (0..self.d)
                .map(|_| r.uint(w).map(|x| x as VertexId))
                .collect::<Option<_>>()?;
            let b = r.take(l)?;
            let c = r.take(l)?;
            if count > self.d || slots[count..].iter().any(|&x| x != 0) {
                return None;
            }
            let tree = if inside {
                Some(TreeCert::decode(&mut Bits::from_bools(raw).reader(), w)?)
            } else {
                if raw.iter().any(|&x| x) || count != 0 || b.iter().any(|&x| x) {
                    return None;
                }
                None
            };
            blocks.push(Block {
                tree,
                anc: slots[..count].to_vec(),
                b,
                c,
            });
        }
        Some(CertB { member, global, blocks })
    }

    /// `c` from its sources: entry `H′` is set when the components of `H′`
    /// can be grouped so that each group is claimed by a different source.
    fn combine(&self, sources: &[&[bool]]) -> Vec<bool> {
        (0..self.hprime.len())
            .map(|x| {
                let parts = &self.parts[x];
                let full = parts.len() - 1;
                let mut reach = vec![false; full + 1];
                reach[0] = true;
                for src in sources {
                    let mut next = reach.clone();
                    for a in 0..=full {
                        if !reach[a] {
                            continue;
                        }
                        let free = full & !a;
                        let mut sub = free;
                        while sub != 0 {
                            if src[parts[sub]] {
                                next[a | sub] = true;
                            }
                            sub = (sub - 1) & free;
                        }
                    }
                    reach = next;
                }
                reach[full]
            })
            .collect()
    }

    fn occurrences(&self, c: &Graph) -> Vec<bool> {
        self.hprime.iter().map(|h| contains_subgraph(c, h)).collect()
    }

    pub fn horizon_radius(&self) -> usize {
        (1usize << self.d) + 1
    }
}

/// The decomposition restricted to `comp`: each vertex hangs below its
/// nearest ancestor inside `comp`. Returns root-to-vertex chains.
fn restricted_chains(t: &TreedepthDecomposition, comp: &[VertexId]) -> BTreeMap<VertexId, Vec<VertexId>> {
    let inside: std::collections::HashSet<VertexId> = comp.iter().copied().collect();
    comp.iter()
        .map(|&v| {
            let mut chain: Vec<VertexId> = t.ancestors(v).into_iter().filter(|a| inside.contains(a)).collect();
            chain.reverse();
            chain.push(v);
            (v, chain)
        })
        .collect()
}

impl Scheme for SchemeB {
    fn name(&self) -> String {
        "B".into()
    }

    fn horizon(&self) -> usize {
        self.horizon_radius()
    }

    fn params(&self) -> serde_json::Value {
        serde_json::json!({
            "property": self.property.name(),
            "eps": self.eps,
            "delta": self.delta,
            "s": self.s,
            "d": self.d,
            "R": self.horizon_radius(),
            "N": self.family.size_bound,
            "hprime": self.hprime.len(),
            "single_round": false,
        })
    }

    fn prove(&self, g: &Graph, structure: Structure) -> Result<Proof, CertifyError> {
        if g.n() == 0 {
            return Err(CertifyError::Empty);
        }
        if !g.is_connected() {
            return Err(CertifyError::Disconnected);
        }
        let cover = low_td_cover(g, self.delta, structure)?;
        if cover.bound > self.d {
            return Err(CertifyError::ParameterMismatch(format!(
                "cover has depth {} above d = {}",
                cover.bound, self.d
            )));
        }
        let witnesses = cover.witnesses.clone().expect("treedepth covers carry witnesses");
        let (sets, witnesses) = match cover.s {
            s if s == self.s => (cover.sets, witnesses),
            1 => (vec![cover.sets[0].clone(); self.s], vec![witnesses[0].clone(); self.s]),
            s => {
                return Err(CertifyError::ParameterMismatch(format!(
                    "cover has {s} sets, expected {}",
                    self.s
                )))
            }
        };
        let w = id_width(g.max_id() as u64);
        let l = self.hprime.len();
        let global = bfs_tree(g, g.id(0));
        let mut certs: BTreeMap<VertexId, CertB> = g
            .ids()
            .iter()
            .map(|&v| {
                let blocks = (0..self.s)
                    .map(|_| Block {
                        tree: None,
                        anc: vec![],
                        b: vec![false; l],
                        c: vec![false; l],
                    })
                    .collect();
                (
                    v,
                    CertB {
                        member: vec![false; self.s],
                        global: global[&v],
                        blocks,
                    },
                )
            })
            .collect();
        // Component roots per set, with their occurrence arrays.
        let mut roots: Vec<HashMap<VertexId, Vec<bool>>> = vec![HashMap::new(); self.s];
        for (i, set) in sets.iter().enumerate() {
            let sub = g.induced_by_ids(set.iter());
            for comp in sub.components() {
                let ids: Vec<VertexId> = comp.iter().map(|&v| sub.id(v)).collect();
                let cg = sub.induced(&comp);
                let tree = bfs_tree(&cg, ids[0]);
                let chains = restricted_chains(&witnesses[i], &ids);
                for &v in &ids {
                    let cert = certs.get_mut(&v).unwrap();
                    cert.member[i] = true;
                    cert.blocks[i].tree = Some(tree[&v]);
                    cert.blocks[i].anc = chains[&v].clone();
                }
                let occ = self.occurrences(&cg);
                certs.get_mut(&ids[0]).unwrap().blocks[i].b = occ.clone();
                roots[i].insert(ids[0], occ);
            }
        }
        // Aggregate bottom-up along the global tree.
        let mut order: Vec<VertexId> = g.ids().to_vec();
        order.sort_by_key(|v| std::cmp::Reverse(global[v].dist));
        let mut children: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
        for (&v, c) in &global {
            if let Some(p) = c.parent {
                children.entry(p).or_default().push(v);
            }
        }
        for i in 0..self.s {
            for &v in &order {
                let kids = children.get(&v).map(Vec::as_slice).unwrap_or(&[]);
                let own = roots[i].get(&v);
                let kid_cs: Vec<Vec<bool>> = kids.iter().map(|u| certs[u].blocks[i].c.clone()).collect();
                let mut sources: Vec<&[bool]> = own.iter().map(|b| b.as_slice()).collect();
                sources.extend(kid_cs.iter().map(Vec::as_slice));
                let c = self.combine(&sources);
                certs.get_mut(&v).unwrap().blocks[i].c = c;
            }
        }
        Ok(Proof {
            scheme: self.name(),
            params: self.params(),
            id_width: w,
            certs: certs.iter().map(|(&v, c)| (v, self.encode(c, w))).collect(),
        })
    }

    fn verify(&self, view: &BallView) -> bool {
        let w = view.id_width;
        let g = &view.graph;
        let decoded: HashMap<VertexId, CertB> = view
            .certs
            .iter()
            .filter_map(|(&v, b)| Some((v, self.decode(b, w)?)))
            .collect();
        let v = view.center;
        let Some(own) = decoded.get(&v) else { return false };
        if !coverage_ok(own.member.iter().filter(|&&b| b).count(), self.delta, self.s) {
            return false;
        }
        let c = view.center_index();
        let mut nbrs: Vec<(VertexId, &CertB)> = Vec::new();
        for &u in g.neighbors(c) {
            match decoded.get(&g.id(u)) {
                Some(cert) => nbrs.push((g.id(u), cert)),
                None => return false,
            }
        }
        let global_nbrs: Vec<(VertexId, TreeCert)> = nbrs.iter().map(|(u, c)| (*u, c.global)).collect();
        if !own.global.locally_consistent(v, &global_nbrs) {
            return false;
        }
        let children: Vec<&CertB> = nbrs
            .iter()
            .filter(|(_, c)| c.global.parent == Some(v))
            .map(|(_, c)| *c)
            .collect();
        let dist = view.distances();
        for i in 0..self.s {
            let blk = &own.blocks[i];
            let is_comp_root = blk.tree.is_some_and(|t| t.dist == 0);
            if let Some(tree) = blk.tree {
                if !self.check_component(view, &decoded, &nbrs, i, tree) {
                    return false;
                }
                if is_comp_root && !self.check_occurrences(view, &decoded, &dist, i, &blk.b) {
                    return false;
                }
            }
            if !is_comp_root && blk.b.iter().any(|&x| x) {
                return false;
            }
            let mut sources: Vec<&[bool]> = Vec::new();
            if is_comp_root {
                sources.push(&blk.b);
            }
            sources.extend(children.iter().map(|k| k.blocks[i].c.as_slice()));
            if self.combine(&sources) != blk.c {
                return false;
            }
            if own.global.dist == 0 && self.members.iter().any(|&m| blk.c[m]) {
                return false;
            }
        }
        true
    }

    fn local_precheck(&self, cert: &Bits, id_width: usize) -> bool {
        self.decode(cert, id_width)
            .is_some_and(|c| coverage_ok(c.member.iter().filter(|&&b| b).count(), self.delta, self.s))
    }
}

impl SchemeB {
    /// Component spanning tree at horizon 1 and the ancestor list of `v`.
    fn check_component(
        &self,
        view: &BallView,
        decoded: &HashMap<VertexId, CertB>,
        nbrs: &[(VertexId, &CertB)],
        i: usize,
        tree: TreeCert,
    ) -> bool {
        let v = view.center;
        let inside: Vec<(VertexId, &CertB)> = nbrs.iter().filter(|(_, c)| c.member[i]).copied().collect();
        let tree_nbrs: Vec<(VertexId, TreeCert)> = inside
            .iter()
            .map(|(u, c)| (*u, c.blocks[i].tree.expect("members carry trees")))
            .collect();
        if !tree.locally_consistent(v, &tree_nbrs) {
            return false;
        }
        let anc = &decoded[&v].blocks[i].anc;
        if anc.is_empty() || anc.len() > self.d || anc.last() != Some(&v) {
            return false;
        }
        let mut distinct = anc.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != anc.len() {
            return false;
        }
        // Every edge inside X_i joins an ancestor and a descendant.
        for (u, cu) in &inside {
            if !anc.contains(u) && !cu.blocks[i].anc.contains(&v) {
                return false;
            }
        }
        if anc.len() >= 2 {
            let p = anc[anc.len() - 2];
            let Some(cp) = decoded.get(&p) else { return false };
            if !cp.member[i]
                || cp.blocks[i].tree.map(|t| t.root) != Some(tree.root)
                || cp.blocks[i].anc != anc[..anc.len() - 1]
            {
                return false;
            }
        }
        true
    }

    /// At a component root: the whole component is visible and `b` is
    /// exactly its occurrence array.
    fn check_occurrences(
        &self,
        view: &BallView,
        decoded: &HashMap<VertexId, CertB>,
        dist: &[usize],
        i: usize,
        b: &[bool],
    ) -> bool {
        let g = &view.graph;
        let c = view.center_index();
        let in_set = |u: usize| decoded.get(&g.id(u)).is_some_and(|cert| cert.member[i]);
        let mut seen = vec![false; g.n()];
        seen[c] = true;
        let mut comp = vec![c];
        let mut k = 0;
        while k < comp.len() {
            let x = comp[k];
            k += 1;
            if dist[x] >= view.radius {
                return false;
            }
            for &u in g.neighbors(x) {
                if !seen[u] && in_set(u) {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        self.occurrences(&g.induced(&comp)) == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::evaluate;
    use crate::decomp::low_td_cover;
    use crate::graph::{generate_instance, named, Acyclic, AtMostOneCycle, Bipartite, Family};
    use crate::obstructions::enumerate_minimal_forbidden;

    fn tree(n: usize, seed: u64) -> Graph {
        generate_instance(Family::RandomForest, n, seed)
            .unwrap()
            .graph
            .connect_components()
    }

    #[test]
    fn component_subsets_of_two_triangles() {
        let fam = ForbiddenFamily::user_supplied(vec![named::disjoint_triangles(2), named::cycle(4)]).unwrap();
        let hp = component_subsets(&fam).unwrap();
        assert_eq!(hp.len(), 3);
        assert_eq!(hp[0].n(), 3);
        assert!(hp.iter().any(|h| h.n() == 6 && h.m() == 6));
    }

    #[test]
    fn combine_needs_distinct_sources() {
        let fam = ForbiddenFamily::user_supplied(vec![named::disjoint_triangles(2)]).unwrap();
        let b = SchemeB::new(Arc::new(AtMostOneCycle), 0.5, fam, 2, 3).unwrap();
        // 𝓗′ = [C3, C3 ⊎ C3].
        let one = [true, false];
        assert_eq!(b.combine(&[&one]), vec![true, false]);
        assert_eq!(b.combine(&[&one, &one]), vec![true, true]);
        assert_eq!(b.combine(&[&[true, true]]), vec![true, true]);
        assert_eq!(b.combine(&[]), vec![false, false]);
    }

    #[test]
    fn honest_trees_accept() {
        let fam = enumerate_minimal_forbidden(&AtMostOneCycle, 2, 7).unwrap();
        let b = SchemeB::for_structure(Arc::new(AtMostOneCycle), 2.0 / 3.0, fam, &Structure::Forest).unwrap();
        assert_eq!((b.s, b.d, b.horizon()), (3, 2, 5));
        for seed in 0..4 {
            let g = tree(40, seed);
            let proof = b.prove(&g, Structure::Forest).unwrap();
            assert_eq!(proof.size_bits(), b.cert_len(proof.id_width));
            let v = evaluate(&g, &proof, &b).unwrap();
            assert!(v.accepted, "seed {seed}: {:?}", v.rejecting_vertices);
        }
    }

    #[test]
    fn honest_grids_accept() {
        let fam = enumerate_minimal_forbidden(&Bipartite, 4, 5).unwrap();
        let structure = Structure::Lattice { width: 6, height: 5 };
        let b = SchemeB::for_structure(Arc::new(Bipartite), 1.0, fam, &structure).unwrap();
        let g = named::grid(6, 5);
        let proof = b.prove(&g, structure).unwrap();
        let v = evaluate(&g, &proof, &b).unwrap();
        assert!(v.accepted, "{:?}", v.rejecting_vertices);
    }

    #[test]
    fn two_triangles_with_a_bridge_reject() {
        // Triangles 1-2-3 and 5-6-7 joined through 4.
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
        assert!(!AtMostOneCycle.is_member(&g));
        let fam = enumerate_minimal_forbidden(&AtMostOneCycle, 4, 6).unwrap();
        let eps = 0.2;
        let cover = low_td_cover(&g, eps / 2.0, Structure::Generic).unwrap();
        let b = SchemeB::new(Arc::new(AtMostOneCycle), eps, fam, cover.s, cover.bound).unwrap();
        let proof = b.prove(&g, Structure::Generic).unwrap();
        let v = evaluate(&g, &proof, &b).unwrap();
        assert!(!v.accepted);
        // The global root is the one rejecting.
        assert!(v.rejecting_vertices.contains(&1));
    }

    #[test]
    fn tampering_is_caught() {
        let fam = enumerate_minimal_forbidden(&Acyclic, 2, 5).unwrap();
        let b = SchemeB::for_structure(Arc::new(Acyclic), 2.0 / 3.0, fam, &Structure::Forest).unwrap();
        let g = tree(25, 3);
        let proof = b.prove(&g, Structure::Forest).unwrap();
        let mut rng_bits = 0u64;
        for (&v, bits) in proof.certs.iter().take(10) {
            let mut forged = proof.clone();
            let mut raw = bits.as_slice().to_vec();
            rng_bits = rng_bits
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let k = (rng_bits >> 33) as usize % raw.len();
            raw[k] = !raw[k];
            forged.certs.insert(v, Bits::from_bools(raw));
            // A single flipped bit either breaks the encoding or a check.
            let verdict = evaluate(&g, &forged, &b).unwrap();
            assert!(!verdict.accepted, "bit {k} of vertex {v}");
        }
    }

    #[test]
    fn size_is_logarithmic() {
        let fam = enumerate_minimal_forbidden(&Acyclic, 2, 5).unwrap();
        let b = SchemeB::for_structure(Arc::new(Acyclic), 2.0 / 3.0, fam, &Structure::Forest).unwrap();
        let sizes: Vec<usize> = [16, 64, 256]
            .iter()
            .map(|&n| b.prove(&tree(n, 1), Structure::Forest).unwrap().size_bits())
            .collect();
        assert_eq!(sizes[1] - sizes[0], sizes[2] - sizes[1]);
    }
}
