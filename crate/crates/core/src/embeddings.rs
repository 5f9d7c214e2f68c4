//! Embeddings of distributive lattices into products of chains, sublattice
//! classification and the correspondence with loose chain covers.

use std::collections::HashMap;
use std::fmt;

use crate::digraph::{Digraph, Poset, VertexSet};
use crate::error::{Error, Result};
use crate::intervals::{construct_a, construct_d, rival_extract, ChainProduct, Sublattice};
use crate::lattice::{birkhoff_map, downset_lattice, LabeledLattice, Lattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Classification {
    pub full: bool,
    pub subdirect: bool,
    pub tight: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "full={} subdirect={} tight={}",
            self.full, self.subdirect, self.tight
        )
    }
}

/// Classification read from the definitions alone.
pub fn classify_by_definition(l: &Sublattice) -> Classification {
    let p = l.product();
    let full = l.contains(&p.bottom_point()) && l.contains(&p.top_point());
    let subdirect = (0..p.dim()).all(|k| {
        let mut seen = vec![false; p.sizes()[k] + 1];
        for x in l.elements() {
            seen[x[k]] = true;
        }
        seen.iter().all(|&s| s)
    });
    let lattice = l.lattice();
    let tight = full
        && lattice.lattice.covers().iter().all(|&(u, v)| {
            let (x, y) = (lattice.label(u), lattice.label(v));
            x.iter().zip(y).map(|(a, b)| a - b).sum::<usize>() == 1
        });
    Classification {
        full,
        subdirect,
        tight,
    }
}

/// Classification read from the digraphs of the closed removed family: `D`
/// acyclic for tightness, no up edge `alpha e_i -> (alpha+1) e_i` for
/// subdirectness. The irreflexivity and strong acyclicity of `A` are
/// returned alongside as two further readings of subdirectness.
pub fn classify_by_digraphs(l: &Sublattice) -> (Classification, [bool; 2]) {
    let p = l.product();
    let fam = rival_extract(l);
    let d = construct_d(&fam);
    let a = construct_a(&fam);
    let up_edge = (1..=p.dim()).any(|i| {
        (0..=p.size(i)).any(|alpha| d.has_arc(p.inf_vertex(i, alpha), p.inf_vertex(i, alpha + 1)))
    });
    let full = l.contains(&p.bottom_point()) && l.contains(&p.top_point());
    (
        Classification {
            full,
            subdirect: !up_edge,
            tight: d.is_acyclic(),
        },
        [a.is_irreflexive(), a.is_strongly_acyclic()],
    )
}

/// Full, subdirect and tight flags, computed from the definitions and
/// cross-checked against the digraph criteria and the height criterion.
pub fn classify(l: &Sublattice) -> Result<Classification> {
    let by_def = classify_by_definition(l);
    let (by_graph, a_flags) = classify_by_digraphs(l);
    let by_height = by_def.full && l.lattice().lattice.height() == l.product().height();
    if by_def != by_graph
        || a_flags != [by_def.subdirect; 2]
        || by_height != by_def.tight
        || (by_def.tight && !by_def.subdirect)
        || (by_def.subdirect && !by_def.full)
    {
        return Err(Error::Invariant(format!(
            "classification mismatch: definitions give {by_def}, digraphs give {by_graph}, \
             A irreflexive/strongly acyclic {a_flags:?}, equal height {by_height}"
        )));
    }
    Ok(by_def)
}

/// A minimum chain partition of `p`, each chain listed bottom to top and
/// the chains ordered by their bottom element.
///
/// Uses maximum matching between "has a successor" and "has a predecessor"
/// copies of the strict order; unmatched vertices start chains.
pub fn dilworth_decompose(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let above: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| p.lt(u, v)).collect())
        .collect();
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut visited = vec![false; n];
        augment(u, &above, &mut next, &mut prev, &mut visited);
    }
    (0..n)
        .filter(|&v| prev[v].is_none())
        .map(|start| {
            let mut chain = vec![start];
            while let Some(v) = next[*chain.last().unwrap()] {
                chain.push(v);
            }
            chain
        })
        .collect()
}

fn augment(
    u: usize,
    above: &[Vec<usize>],
    next: &mut [Option<usize>],
    prev: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &v in &above[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let free = match prev[v] {
            None => true,
            Some(w) => augment(w, above, next, prev, visited),
        };
        if free {
            next[u] = Some(v);
            prev[v] = Some(u);
            return true;
        }
    }
    false
}

/// Checks that `chains` partitions the vertices of `p` into chains and
/// returns them sorted bottom to top.
pub fn check_decomposition(p: &Poset, chains: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; p.len()];
    let mut sorted = Vec::with_capacity(chains.len());
    for chain in chains {
        if chain.is_empty() {
            return Err(Error::InvalidDecomposition("empty chain".into()));
        }
        for &v in chain {
            if v >= p.len() {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex {v} out of range"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex {v} used twice"
                )));
            }
        }
        if !p.is_chain_set(chain) {
            return Err(Error::InvalidDecomposition(format!(
                "{chain:?} is not a chain"
            )));
        }
        let mut c = chain.clone();
        c.sort_by_key(|&v| p.downset(v).count_ones(..));
        sorted.push(c);
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidDecomposition(format!(
            "vertex {v} is not covered"
        )));
    }
    Ok(sorted)
}

/// A lattice homomorphism into a product of chains that is one-to-one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: Lattice,
    target: ChainProduct,
    image: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn new(source: Lattice, target: ChainProduct, image: Vec<Vec<usize>>) -> Result<Self> {
        if image.len() != source.len() {
            return Err(Error::NotAnEmbedding(format!(
                "{} images for {} elements",
                image.len(),
                source.len()
            )));
        }
        for x in &image {
            target
                .check_point(x)
                .map_err(|e| Error::NotAnEmbedding(e.to_string()))?;
        }
        let mut seen = HashMap::new();
        for (k, x) in image.iter().enumerate() {
            if let Some(other) = seen.insert(x, k) {
                return Err(Error::NotAnEmbedding(format!(
                    "elements {other} and {k} share the image {x:?}"
                )));
            }
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                let lo: Vec<usize> = image[a]
                    .iter()
                    .zip(&image[b])
                    .map(|(x, y)| *x.min(y))
                    .collect();
                let hi: Vec<usize> = image[a]
                    .iter()
                    .zip(&image[b])
                    .map(|(x, y)| *x.max(y))
                    .collect();
                if image[source.meet(a, b)] != lo || image[source.join(a, b)] != hi {
                    return Err(Error::NotAnEmbedding(format!(
                        "meet or join of elements {a} and {b} is not preserved"
                    )));
                }
            }
        }
        Ok(Embedding {
            source,
            target,
            image,
        })
    }

    pub fn source(&self) -> &Lattice {
        &self.source
    }

    pub fn target(&self) -> &ChainProduct {
        &self.target
    }

    pub fn image(&self) -> &[Vec<usize>] {
        &self.image
    }

    pub fn image_sublattice(&self) -> Sublattice {
        Sublattice::new(self.target.clone(), self.image.iter().cloned())
            .expect("the image of an embedding is a sublattice")
    }

    pub fn classify(&self) -> Result<Classification> {
        classify(&self.image_sublattice())
    }
}

/// `x -> (|S_x within C_1|, .., |S_x within C_d|)` for a chain decomposition
/// of the join-irreducibles of `l` (vertex ids of `join_irreducibles().carrier`).
pub fn embed_from_decomposition(l: &Lattice, chains: &[Vec<usize>]) -> Result<Embedding> {
    let map = birkhoff_map(l)?;
    let chains = check_decomposition(&map.irreducibles.carrier, chains)?;
    let sets: Vec<VertexSet> = chains.iter().map(|c| c.iter().copied().collect()).collect();
    let target = ChainProduct::new(chains.iter().map(Vec::len).collect())
        .map_err(|e| Error::InvalidDecomposition(e.to_string()))?;
    let image = (0..l.len())
        .map(|x| {
            let s = map.set_of(x);
            sets.iter().map(|c| s.intersection(*c).len()).collect()
        })
        .collect();
    Embedding::new(l.clone(), target, image)
}

/// The subgraph of a digraph on `C^inf` induced by the interior vertices,
/// renumbered as `C*`.
pub fn d_star(p: &ChainProduct, d: &Digraph) -> Result<Digraph> {
    if d.vertex_count() != p.inf_count() {
        return Err(Error::OutOfRange(format!(
            "digraph has {} vertices, C^inf has {}",
            d.vertex_count(),
            p.inf_count()
        )));
    }
    let interior: Vec<usize> = (1..=p.star_count()).collect();
    Ok(d.induced_subgraph(&interior))
}

/// The join-irreducibles of a tight sublattice read off `D*` of its closed
/// removed family.
#[derive(Debug, Clone)]
pub struct RecoveredIrreducibles {
    /// A poset on the vertices of `C*`.
    pub poset: Poset,
    /// `isomorphism[v]` is the vertex of `lattice.join_irreducibles().carrier`
    /// matched with `C*` vertex `v`.
    pub isomorphism: Vec<usize>,
    pub lattice: LabeledLattice<Vec<usize>>,
}

pub fn recover_j(l: &Sublattice) -> Result<RecoveredIrreducibles> {
    if !classify(l)?.tight {
        return Err(Error::NotTight);
    }
    let p = l.product();
    let d = construct_d(&rival_extract(l));
    let poset = Poset::new(d_star(p, &d)?)
        .map_err(|e| Error::Invariant(format!("D* of a tight sublattice: {e}")))?;
    let lattice = l.lattice();
    let j = lattice.lattice.join_irreducibles();
    let isomorphism = poset
        .isomorphism(&j.carrier)
        .ok_or_else(|| Error::Invariant("D* is not isomorphic to the join-irreducibles".into()))?;
    Ok(RecoveredIrreducibles {
        poset,
        isomorphism,
        lattice,
    })
}

/// A vertex of `P^inf`: a poset vertex or one of the adjoined extremes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointedVertex {
    Bottom,
    Vertex(usize),
    Top,
}

impl PointedVertex {
    pub fn le(self, other: PointedVertex, p: &Poset) -> bool {
        match (self, other) {
            (PointedVertex::Bottom, _) | (_, PointedVertex::Top) => true,
            (PointedVertex::Vertex(a), PointedVertex::Vertex(b)) => p.le(a, b),
            _ => false,
        }
    }
}

impl fmt::Display for PointedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointedVertex::Bottom => f.write_str("bot"),
            PointedVertex::Vertex(v) => write!(f, "{v}"),
            PointedVertex::Top => f.write_str("top"),
        }
    }
}

/// A surjective pointed homomorphism from a union of chains onto `P^inf`.
///
/// `chains[k][alpha - 1]` is the image of level `alpha` of chain `k + 1`;
/// the global bottom and top of the chains map to the adjoined extremes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooseChainCover {
    poset: Poset,
    chains: Vec<Vec<PointedVertex>>,
}

impl LooseChainCover {
    pub fn new(poset: Poset, chains: Vec<Vec<PointedVertex>>) -> Result<Self> {
        if chains.is_empty() || chains.iter().any(Vec::is_empty) {
            return Err(Error::InvalidCover("chains must be nonempty".into()));
        }
        let mut covered = vec![false; poset.len()];
        for (k, chain) in chains.iter().enumerate() {
            for &v in chain {
                if let PointedVertex::Vertex(x) = v {
                    if x >= poset.len() {
                        return Err(Error::InvalidCover(format!("vertex {x} out of range")));
                    }
                    covered[x] = true;
                }
            }
            if let Some(w) = chain.windows(2).position(|w| !w[0].le(w[1], &poset)) {
                return Err(Error::InvalidCover(format!(
                    "chain {} is not order-preserving at level {}",
                    k + 1,
                    w + 1
                )));
            }
        }
        if let Some(x) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidCover(format!("vertex {x} is not covered")));
        }
        Ok(LooseChainCover { poset, chains })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn chains(&self) -> &[Vec<PointedVertex>] {
        &self.chains
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.chains.iter().map(Vec::len).collect()
    }

    /// Every level maps into the poset itself.
    pub fn is_full(&self) -> bool {
        self.chains
            .iter()
            .flatten()
            .all(|v| matches!(v, PointedVertex::Vertex(_)))
    }

    /// Full, and every chain maps one-to-one.
    pub fn is_chain_cover(&self) -> bool {
        self.is_full()
            && self
                .chains
                .iter()
                .all(|c| c.windows(2).all(|w| w[0] != w[1]))
    }

    /// A chain cover whose chains are pairwise disjoint.
    pub fn is_decomposition(&self) -> bool {
        self.is_chain_cover() && {
            let total: usize = self.chains.iter().map(Vec::len).sum();
            total == self.poset.len()
        }
    }

    pub fn classification(&self) -> Classification {
        Classification {
            full: self.is_full(),
            subdirect: self.is_chain_cover(),
            tight: self.is_decomposition(),
        }
    }
}

/// The cover of an embedding of the downset lattice of `poset`.
///
/// Level `alpha` of chain `k` maps to `p` when
/// `E(D_p - {p})_k < alpha <= E(D_p)_k`, to the bottom when
/// `alpha <= E(0)_k` and to the top when `alpha > E(1)_k`.
fn cover_from_downset_image(
    poset: &Poset,
    downsets: &LabeledLattice<VertexSet>,
    target: &ChainProduct,
    image: &[Vec<usize>],
) -> Result<LooseChainCover> {
    let lat = &downsets.lattice;
    let lookup = |s: VertexSet| -> Result<&Vec<usize>> {
        downsets
            .position(&s)
            .map(|k| &image[k])
            .ok_or_else(|| Error::Invariant(format!("{s:?} is not a downset")))
    };
    let bounds: Vec<(&Vec<usize>, &Vec<usize>)> = (0..poset.len())
        .map(|p| {
            let d = poset.principal_downset(p);
            Ok((lookup(d.without(p))?, lookup(d)?))
        })
        .collect::<Result<_>>()?;
    let (low, high) = (&image[lat.bottom()], &image[lat.top()]);
    let mut chains = Vec::with_capacity(target.dim());
    for k in 0..target.dim() {
        let mut chain = Vec::with_capacity(target.sizes()[k]);
        for alpha in 1..=target.sizes()[k] {
            let v = if alpha <= low[k] {
                PointedVertex::Bottom
            } else if alpha > high[k] {
                PointedVertex::Top
            } else {
                let hits: Vec<usize> = (0..poset.len())
                    .filter(|&p| bounds[p].0[k] < alpha && alpha <= bounds[p].1[k])
                    .collect();
                match hits.as_slice() {
                    [p] => PointedVertex::Vertex(*p),
                    _ => {
                        return Err(Error::Invariant(format!(
                            "level {alpha} of chain {} lies in {} fibres",
                            k + 1,
                            hits.len()
                        )))
                    }
                }
            };
            chain.push(v);
        }
        chains.push(chain);
    }
    LooseChainCover::new(poset.clone(), chains)
        .map_err(|e| Error::Invariant(format!("fibre construction: {e}")))
}

/// The cover `phi_E` of an embedding of a distributive lattice, over the
/// join-irreducibles of the source (vertex ids of
/// `join_irreducibles().carrier`).
pub fn embedding_to_cover(e: &Embedding) -> Result<LooseChainCover> {
    let map = birkhoff_map(e.source())?;
    let mut image = vec![Vec::new(); e.source().len()];
    for (x, &y) in map.image.iter().enumerate() {
        image[y] = e.image()[x].clone();
    }
    cover_from_downset_image(&map.irreducibles.carrier, &map.downsets, e.target(), &image)
}

/// The embedding `S -> join of phi^{-1}(S)` of the downset lattice of the
/// cover's poset, whose elements are in canonical downset order.
pub fn cover_to_embedding(cover: &LooseChainCover) -> Result<Embedding> {
    let downsets = downset_lattice(cover.poset())?;
    let target = ChainProduct::new(cover.sizes())?;
    let image = cover_image(cover, &downsets);
    Embedding::new(downsets.lattice, target, image)
}

fn cover_image(cover: &LooseChainCover, downsets: &LabeledLattice<VertexSet>) -> Vec<Vec<usize>> {
    downsets
        .labels
        .iter()
        .map(|s| {
            cover
                .chains()
                .iter()
                .map(|chain| {
                    chain
                        .iter()
                        .filter(|v| match v {
                            PointedVertex::Bottom => true,
                            PointedVertex::Vertex(x) => s.contains(*x),
                            PointedVertex::Top => false,
                        })
                        .count()
                })
                .collect()
        })
        .collect()
}

/// Every embedding of `l` into `target`, as image lists indexed by the
/// elements of `l`, in lexicographic order of the search.
pub fn enumerate_embeddings(l: &Lattice, target: &ChainProduct) -> Result<Vec<Vec<Vec<usize>>>> {
    let order = l.order().linear_extension();
    let covers = l.covers();
    let lower: Vec<Vec<usize>> = (0..l.len())
        .map(|x| covers.iter().filter(|c| c.0 == x).map(|c| c.1).collect())
        .collect();
    let points: Vec<Vec<usize>> = target.points().collect();
    let mut search = EmbeddingSearch {
        l,
        order: &order,
        lower: &lower,
        points: &points,
        image: vec![None; l.len()],
        used: vec![false; points.len()],
        target,
        found: Vec::new(),
    };
    search.run(0);
    Ok(search.found)
}

struct EmbeddingSearch<'a> {
    l: &'a Lattice,
    order: &'a [usize],
    lower: &'a [Vec<usize>],
    points: &'a [Vec<usize>],
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    target: &'a ChainProduct,
    found: Vec<Vec<Vec<usize>>>,
}

impl EmbeddingSearch<'_> {
    fn run(&mut self, pos: usize) {
        if pos == self.order.len() {
            let image: Vec<Vec<usize>> = self
                .image
                .iter()
                .map(|k| self.points[k.expect("assigned")].clone())
                .collect();
            if Embedding::new(self.l.clone(), self.target.clone(), image.clone()).is_ok() {
                self.found.push(image);
            }
            return;
        }
        let x = self.order[pos];
        let candidates: Vec<usize> = match self.lower[x].as_slice() {
            [] => (0..self.points.len()).collect(),
            [c] => {
                let below = &self.points[self.image[*c].expect("lower cover assigned")];
                (0..self.points.len())
                    .filter(|&k| {
                        let q = &self.points[k];
                        q != below && below.iter().zip(q).all(|(a, b)| a <= b)
                    })
                    .collect()
            }
            many => {
                let joined = many.iter().fold(vec![0; self.target.dim()], |acc, &c| {
                    let q = &self.points[self.image[c].expect("lower cover assigned")];
                    acc.iter().zip(q).map(|(a, b)| *a.max(b)).collect()
                });
                vec![self.target.index_of(&joined)]
            }
        };
        for k in candidates {
            if self.used[k] || !self.meets_agree(x, k, pos) {
                continue;
            }
            self.used[k] = true;
            self.image[x] = Some(k);
            self.run(pos + 1);
            self.image[x] = None;
            self.used[k] = false;
        }
    }

    fn meets_agree(&self, x: usize, k: usize, pos: usize) -> bool {
        let q = &self.points[k];
        self.order[..pos].iter().all(|&y| {
            let m = self.l.meet(x, y);
            let qy = &self.points[self.image[y].expect("assigned")];
            let lo: Vec<usize> = q.iter().zip(qy).map(|(a, b)| *a.min(b)).collect();
            self.image[m].is_none_or(|km| self.points[km] == lo)
        })
    }
}

/// Every surjective pointed homomorphism from the chains of `target` onto
/// `P^inf`, as covers.
pub fn enumerate_pointed_homomorphisms(p: &Poset, target: &ChainProduct) -> Vec<LooseChainCover> {
    let mut values = vec![PointedVertex::Bottom];
    values.extend((0..p.len()).map(PointedVertex::Vertex));
    values.push(PointedVertex::Top);
    let per_chain: Vec<Vec<Vec<PointedVertex>>> = target
        .sizes()
        .iter()
        .map(|&n| multichains(p, &values, n))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<Vec<PointedVertex>> = Vec::new();
    product_search(p, &per_chain, &mut current, &mut out);
    out
}

fn multichains(p: &Poset, values: &[PointedVertex], n: usize) -> Vec<Vec<PointedVertex>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn go(
        p: &Poset,
        values: &[PointedVertex],
        n: usize,
        current: &mut Vec<PointedVertex>,
        out: &mut Vec<Vec<PointedVertex>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for &v in values {
            if current.last().is_none_or(|&u| u.le(v, p)) {
                current.push(v);
                go(p, values, n, current, out);
                current.pop();
            }
        }
    }
    go(p, values, n, &mut current, &mut out);
    out
}

fn product_search(
    p: &Poset,
    per_chain: &[Vec<Vec<PointedVertex>>],
    current: &mut Vec<Vec<PointedVertex>>,
    out: &mut Vec<LooseChainCover>,
) {
    if current.len() == per_chain.len() {
        if let Ok(cover) = LooseChainCover::new(p.clone(), current.clone()) {
            out.push(cover);
        }
        return;
    }
    for chain in &per_chain[current.len()] {
        current.push(chain.clone());
        product_search(p, per_chain, current, out);
        current.pop();
    }
}

/// Number of ordered partitions of `p` into chains `C_1, .., C_d` with
/// `|C_k| = sizes[k]`.
pub fn count_chain_decompositions(p: &Poset, sizes: &[usize]) -> usize {
    if sizes.iter().sum::<usize>() != p.len() {
        return 0;
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); sizes.len()];
    fn go(p: &Poset, sizes: &[usize], v: usize, classes: &mut Vec<Vec<usize>>) -> usize {
        if v == p.len() {
            return 1;
        }
        let mut total = 0;
        for k in 0..sizes.len() {
            if classes[k].len() < sizes[k] && classes[k].iter().all(|&u| p.comparable(u, v)) {
                classes[k].push(v);
                total += go(p, sizes, v + 1, classes);
                classes[k].pop();
            }
        }
        total
    }
    go(p, sizes, 0, &mut classes)
}

/// Counts from matching embeddings of `D(P)` with covers of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CorrespondenceReport {
    pub embeddings: usize,
    pub homomorphisms: usize,
    pub full: usize,
    pub subdirect: usize,
    pub tight: usize,
    pub loose_covers: usize,
    pub chain_covers: usize,
    pub decompositions: usize,
    /// Chain decompositions with the target's chain sizes, counted directly.
    pub counted_decompositions: usize,
}

pub const CORRESPONDENCE_POSET_LIMIT: usize = 8;
pub const CORRESPONDENCE_PRODUCT_LIMIT: usize = 512;

/// Enumerates both sides of the correspondence and checks that the two maps
/// are mutually inverse bijections respecting the full / subdirect / tight
/// strata.
pub fn enumerate_correspondence(p: &Poset, target: &ChainProduct) -> Result<CorrespondenceReport> {
    if p.len() > CORRESPONDENCE_POSET_LIMIT {
        return Err(Error::ResourceGuard {
            what: "correspondence poset size",
            limit: CORRESPONDENCE_POSET_LIMIT,
            requested: p.len(),
        });
    }
    if target.len() > CORRESPONDENCE_PRODUCT_LIMIT {
        return Err(Error::ResourceGuard {
            what: "correspondence product size",
            limit: CORRESPONDENCE_PRODUCT_LIMIT,
            requested: target.len(),
        });
    }
    let downsets = downset_lattice(p)?;
    let embeddings = enumerate_embeddings(&downsets.lattice, target)?;
    let covers = enumerate_pointed_homomorphisms(p, target);
    let embedding_index: HashMap<&Vec<Vec<usize>>, usize> =
        embeddings.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let cover_index: HashMap<&Vec<Vec<PointedVertex>>, usize> = covers
        .iter()
        .enumerate()
        .map(|(k, c)| (&c.chains, k))
        .collect();

    let mut report = CorrespondenceReport {
        embeddings: embeddings.len(),
        homomorphisms: covers.len(),
        counted_decompositions: count_chain_decompositions(p, target.sizes()),
        ..Default::default()
    };
    for image in &embeddings {
        let cover = cover_from_downset_image(p, &downsets, target, image)?;
        if !cover_index.contains_key(&cover.chains) {
            return Err(Error::Invariant(format!(
                "cover of embedding {image:?} was not enumerated"
            )));
        }
        if cover_image(&cover, &downsets) != *image {
            return Err(Error::Invariant(format!(
                "embedding {image:?} does not survive the round trip"
            )));
        }
        let sub = Sublattice::new(target.clone(), image.iter().cloned())?;
        let class = classify(&sub)?;
        if class != cover.classification() {
            return Err(Error::Invariant(format!(
                "embedding {image:?} is {class} but its cover is {}",
                cover.classification()
            )));
        }
        report.full += usize::from(class.full);
        report.subdirect += usize::from(class.subdirect);
        report.tight += usize::from(class.tight);
    }
    for cover in &covers {
        let image = cover_image(cover, &downsets);
        if !embedding_index.contains_key(&image) {
            return Err(Error::Invariant(format!(
                "embedding of cover {:?} was not enumerated",
                cover.chains
            )));
        }
        let back = cover_from_downset_image(p, &downsets, target, &image)?;
        if back != *cover {
            return Err(Error::Invariant(format!(
                "cover {:?} does not survive the round trip",
                cover.chains
            )));
        }
        report.loose_covers += usize::from(cover.is_full());
        report.chain_covers += usize::from(cover.is_chain_cover());
        report.decompositions += usize::from(cover.is_decomposition());
    }
    if report.embeddings != report.homomorphisms
        || report.full != report.loose_covers
        || report.subdirect != report.chain_covers
        || report.tight != report.decompositions
        || report.decompositions != report.counted_decompositions
    {
        return Err(Error::Invariant(format!("count mismatch: {report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::{remove, Interval, IntervalFamily};

    fn product(sizes: &[usize]) -> ChainProduct {
        ChainProduct::new(sizes.to_vec()).unwrap()
    }

    fn grid_cut() -> Sublattice {
        remove(
            &IntervalFamily::from_intervals(product(&[4, 5]), [Interval::new(2, 1, 3, 2)]).unwrap(),
        )
        .unwrap()
    }

    fn five_element() -> Sublattice {
        remove(
            &IntervalFamily::from_intervals(
                product(&[2, 2]),
                [Interval::new(1, 2, 2, 1), Interval::new(2, 1, 2, 1)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn classification_examples() {
        let all = Classification {
            full: true,
            subdirect: true,
            tight: true,
        };
        assert_eq!(classify(&Sublattice::full(product(&[2, 2]))).unwrap(), all);
        assert_eq!(
            classify(&five_element()).unwrap(),
            Classification {
                full: true,
                subdirect: true,
                tight: false
            }
        );
        let diagonal = Sublattice::new(product(&[2, 2]), [vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(
            classify(&diagonal).unwrap(),
            Classification {
                full: true,
                subdirect: false,
                tight: false
            }
        );
        assert!(classify(&grid_cut()).unwrap().tight);
    }

    #[test]
    fn dilworth_examples() {
        assert_eq!(dilworth_decompose(&Poset::antichain(3)).len(), 3);
        assert_eq!(dilworth_decompose(&Poset::chain(4)), vec![vec![0, 1, 2, 3]]);
        let v = Poset::from_relation(3, [(0, 1), (0, 2)]).unwrap();
        let chains = dilworth_decompose(&v);
        assert_eq!(chains.len(), 2);
        assert!(check_decomposition(&v, &chains).is_ok());
        assert!(check_decomposition(&v, &[vec![1, 2], vec![0]]).is_err());
    }

    #[test]
    fn decomposition_embeddings() {
        let chain = Lattice::chain(3);
        let e = embed_from_decomposition(&chain, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(e.image(), &[vec![0], vec![1], vec![2], vec![3]]);

        let cut = grid_cut().lattice().lattice;
        let j = cut.join_irreducibles();
        assert_eq!(j.len(), 9);
        let chains = dilworth_decompose(&j.carrier);
        assert_eq!(chains.len(), 2);
        let e = embed_from_decomposition(&cut, &chains).unwrap();
        assert_eq!(e.target().height(), 9);
        assert!(e.classify().unwrap().tight);
    }

    #[test]
    fn star_and_recovery() {
        let p = product(&[4, 5]);
        assert_eq!(d_star(&p, &p.c_infinity()).unwrap(), p.c_star());
        let r = recover_j(&grid_cut()).unwrap();
        assert_eq!(r.poset.len(), 9);
        assert!(r.poset.le(p.star_vertex(1, 3), p.star_vertex(2, 3)));
        assert_eq!(recover_j(&five_element()).unwrap_err(), Error::NotTight);
    }

    #[test]
    fn covers_of_small_embeddings() {
        let z1 = Lattice::chain(1);
        let diag =
            Embedding::new(z1.clone(), product(&[1, 1]), vec![vec![0, 0], vec![1, 1]]).unwrap();
        let cover = embedding_to_cover(&diag).unwrap();
        assert_eq!(
            cover.chains(),
            &[
                vec![PointedVertex::Vertex(0)],
                vec![PointedVertex::Vertex(0)]
            ]
        );
        assert_eq!(cover_to_embedding(&cover).unwrap(), diag);

        let side = Embedding::new(z1, product(&[1, 1]), vec![vec![0, 0], vec![1, 0]]).unwrap();
        let cover = embedding_to_cover(&side).unwrap();
        assert_eq!(
            cover.chains(),
            &[vec![PointedVertex::Vertex(0)], vec![PointedVertex::Top]]
        );
        assert_eq!(cover_to_embedding(&cover).unwrap(), side);
    }

    #[test]
    fn correspondence_counts() {
        let point = Poset::antichain(1);
        let r = enumerate_correspondence(&point, &product(&[1, 1])).unwrap();
        assert_eq!((r.embeddings, r.homomorphisms), (5, 5));
        let r = enumerate_correspondence(&Poset::chain(2), &product(&[2])).unwrap();
        assert_eq!((r.embeddings, r.tight, r.counted_decompositions), (1, 1, 1));
    }
}
