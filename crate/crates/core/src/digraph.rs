//! Finite digraphs over dense vertex ids.
//!
//! An arc `a -> b` encodes the comparability `a >= b`, so a partial order is a
//! reflexive, transitive and antisymmetric digraph whose out-neighbourhoods are
//! principal downsets. Adjacency is kept as one bitset row per vertex in both
//! directions.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A set of at most 64 vertices, packed into a machine word.
///
/// Terminal sets, independent sets and downsets are all values of this type;
/// enumerations over them are only ever run on small digraphs.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const CAPACITY: usize = 64;

    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "vertex set capacity exceeded");
        if n == Self::CAPACITY {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < Self::CAPACITY, "vertex set capacity exceeded");
        VertexSet(1u64 << v)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < Self::CAPACITY && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        *self = self.with(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < Self::CAPACITY {
            self.0 &= !(1u64 << v);
        }
    }

    pub fn with(self, v: usize) -> Self {
        self.union(Self::singleton(v))
    }

    pub fn without(self, v: usize) -> Self {
        let mut s = self;
        s.remove(v);
        s
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Canonical enumeration key: by cardinality, then by numeric value.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::empty(), VertexSet::with)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sort sets into canonical order, see [`VertexSet::canonical_key`].
pub fn sort_canonical(sets: &mut [VertexSet]) {
    sets.sort_by_key(|s| s.canonical_key());
}

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<FixedBitSet>,
    inc: Vec<FixedBitSet>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("vertices", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// The arcless digraph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
            inc: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Builds a digraph from an arc list, rejecting out-of-range endpoints.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::new(n);
        for (u, v) in arcs {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.add_arc(u, v);
        }
        Ok(g)
    }

    /// Every vertex has a loop.
    pub fn complete(n: usize) -> Self {
        let mut g = Digraph::new(n);
        for u in 0..n {
            g.out[u].insert_range(..);
            g.inc[u].insert_range(..);
        }
        g
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                count: self.n,
            })
        }
    }

    /// Panics if either endpoint is out of range.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inc[v].insert(u);
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) {
        self.out[u].set(v, false);
        self.inc[v].set(u, false);
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|row| row.count_ones(..)).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    pub fn successors(&self, u: usize) -> &FixedBitSet {
        &self.out[u]
    }

    pub fn predecessors(&self, v: usize) -> &FixedBitSet {
        &self.inc[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].count_ones(..)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.has_loop(v))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|v| !self.has_loop(v))
    }

    pub fn is_transitive(&self) -> bool {
        self.arcs()
            .all(|(u, v)| self.out[v].is_subset(&self.out[u]))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// Same vertex count and every arc of `self` is an arc of `other`.
    pub fn is_spanning_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n && self.out.iter().zip(&other.out).all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &Digraph) -> Digraph {
        assert_eq!(
            self.n, other.n,
            "union of digraphs on different vertex sets"
        );
        let mut g = self.clone();
        for (u, v) in other.arcs() {
            g.add_arc(u, v);
        }
        g
    }

    pub fn reflexive_closure(&self) -> Digraph {
        let mut g = self.clone();
        for v in 0..self.n {
            g.add_arc(v, v);
        }
        g
    }

    /// Smallest transitive supergraph on the same vertices (Warshall over rows).
    ///
    /// A loop appears on `v` exactly when `v` lies on a directed cycle.
    pub fn transitive_closure(&self) -> Digraph {
        let mut out = self.out.clone();
        for k in 0..self.n {
            let row_k = out[k].clone();
            for row in out.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Digraph::from_rows(self.n, out)
    }

    fn from_rows(n: usize, out: Vec<FixedBitSet>) -> Digraph {
        let mut inc = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in out.iter().enumerate() {
            for v in row.ones() {
                inc[v].insert(u);
            }
        }
        Digraph { n, out, inc }
    }

    pub fn without_loops(&self) -> Digraph {
        let mut g = self.clone();
        for v in 0..self.n {
            g.remove_arc(v, v);
        }
        g
    }

    /// Whether a directed path from `u` to `v` exists.
    ///
    /// With `require_nontrivial` the path must use at least one arc, so a
    /// loop counts but the empty path at `u` does not.
    pub fn reachable(&self, u: usize, v: usize, require_nontrivial: bool) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !require_nontrivial && u == v {
            return Ok(true);
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut stack: Vec<usize> = self.out[u].ones().collect();
        while let Some(w) = stack.pop() {
            if w == v {
                return Ok(true);
            }
            if seen.put(w) {
                continue;
            }
            stack.extend(self.out[w].ones().filter(|&x| !seen.contains(x)));
        }
        Ok(false)
    }

    /// Only loops are allowed as directed cycles.
    pub fn is_acyclic(&self) -> bool {
        let c = self.transitive_closure();
        (0..self.n).all(|u| c.out[u].ones().all(|v| v == u || !c.out[v].contains(u)))
    }

    /// No directed cycles at all, loops included.
    pub fn is_strongly_acyclic(&self) -> bool {
        self.transitive_closure().is_irreflexive()
    }

    /// The set reachable from `v` by paths of length zero or more.
    pub fn closure_of(&self, v: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut stack = vec![v];
        while let Some(w) = stack.pop() {
            if seen.put(w) {
                continue;
            }
            stack.extend(self.out[w].ones().filter(|&x| !seen.contains(x)));
        }
        seen
    }

    fn require_small(&self, what: &'static str) -> Result<()> {
        if self.n > VertexSet::CAPACITY {
            Err(Error::TooLarge {
                what,
                limit: VertexSet::CAPACITY,
                requested: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn out_set(&self, v: usize) -> VertexSet {
        self.out[v].ones().collect()
    }

    /// Vertex sets closed under out-arcs, including the empty and full set,
    /// in canonical order.
    ///
    /// Every such set is a union of the closures of its members, so the
    /// family is generated from the single-vertex closures by unions.
    pub fn terminal_sets(&self) -> Result<Vec<VertexSet>> {
        self.require_small("terminal set enumeration")?;
        let principal: Vec<VertexSet> = (0..self.n)
            .map(|v| self.closure_of(v).ones().collect())
            .collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(VertexSet::empty());
        let mut frontier = vec![VertexSet::empty()];
        while let Some(s) = frontier.pop() {
            for (v, p) in principal.iter().enumerate() {
                if s.contains(v) {
                    continue;
                }
                let next = s.union(*p);
                if seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        let mut sets: Vec<VertexSet> = seen.into_iter().collect();
        sort_canonical(&mut sets);
        Ok(sets)
    }

    pub fn is_terminal(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| v < self.n && self.out_set(v).is_subset(set))
    }

    /// Incompatibility-free vertex pairs for independent sets: neither vertex
    /// reaches the other and neither lies on a cycle.
    fn independence_graph(&self) -> (Vec<usize>, Vec<FixedBitSet>) {
        let c = self.transitive_closure();
        let good: Vec<usize> = (0..self.n).filter(|&v| !c.has_loop(v)).collect();
        let mut compat = vec![FixedBitSet::with_capacity(self.n); self.n];
        for &u in &good {
            for &v in &good {
                if u != v && !c.has_arc(u, v) && !c.has_arc(v, u) {
                    compat[u].insert(v);
                }
            }
        }
        (good, compat)
    }

    /// A set with no non-trivial path between any two (not necessarily
    /// distinct) members. Looped vertices never qualify.
    pub fn is_independent(&self, set: VertexSet) -> bool {
        let c = self.transitive_closure();
        set.iter()
            .all(|x| x < self.n && set.iter().all(|y| !c.has_arc(x, y)))
    }

    /// A maximum independent set, smallest vertex ids preferred on ties.
    pub fn maximum_independent_set(&self) -> Vec<usize> {
        let (good, compat) = self.independence_graph();
        let mut best = Vec::new();
        let mut current = Vec::new();
        max_clique(&mut current, &good, &compat, &mut best);
        best
    }

    /// Size of a maximum independent set.
    pub fn width(&self) -> usize {
        self.maximum_independent_set().len()
    }

    /// All independent sets of exactly `d` vertices, lexicographically.
    pub fn independent_sets_of_size(&self, d: usize) -> Result<Vec<VertexSet>> {
        self.require_small("independent set enumeration")?;
        let (good, compat) = self.independence_graph();
        let mut found = Vec::new();
        let mut current = Vec::new();
        k_cliques(d, &mut current, &good, &compat, &mut found);
        Ok(found)
    }

    /// The subgraph induced by `vertices`; vertex `k` of the result is
    /// `vertices[k]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Digraph {
        let mut g = Digraph::new(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.has_arc(u, v) {
                    g.add_arc(a, b);
                }
            }
        }
        g
    }

    /// Strongly connected classes of a preorder and the induced partial order.
    ///
    /// Classes are numbered in order of their smallest member.
    pub fn condensation(&self) -> Result<(Poset, QuotientMap)> {
        if !self.is_preorder() {
            return Err(Error::NotAPreorder);
        }
        let mut class_of = vec![usize::MAX; self.n];
        let mut class_count = 0;
        for u in 0..self.n {
            if class_of[u] != usize::MAX {
                continue;
            }
            let mut members = self.out[u].clone();
            members.intersect_with(&self.inc[u]);
            for v in members.ones() {
                class_of[v] = class_count;
            }
            class_count += 1;
        }
        let mut g = Digraph::new(class_count);
        for (u, v) in self.arcs() {
            g.add_arc(class_of[u], class_of[v]);
        }
        let poset = Poset::new(g)
            .map_err(|e| Error::Invariant(format!("condensation is not a poset: {e}")))?;
        Ok((
            poset,
            QuotientMap {
                source_vertex_count: self.n,
                class_of,
                class_count,
            },
        ))
    }

    /// A vertex bijection `self -> other` preserving arcs in both directions,
    /// the first one found in a fixed search order.
    pub fn isomorphism(&self, other: &Digraph) -> Option<Vec<usize>> {
        if self.n != other.n || self.arc_count() != other.arc_count() {
            return None;
        }
        let inv_a = self.vertex_invariants();
        let inv_b = other.vertex_invariants();
        let mut sorted_a = inv_a.clone();
        let mut sorted_b = inv_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }
        let mut mapping = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.extend_isomorphism(other, &inv_a, &inv_b, 0, &mut mapping, &mut used) {
            Some(mapping)
        } else {
            None
        }
    }

    fn vertex_invariants(&self) -> Vec<(usize, usize, bool, usize, usize)> {
        let c = self.transitive_closure();
        (0..self.n)
            .map(|v| {
                (
                    self.out_degree(v),
                    self.in_degree(v),
                    self.has_loop(v),
                    c.out_degree(v),
                    c.in_degree(v),
                )
            })
            .collect()
    }

    fn extend_isomorphism(
        &self,
        other: &Digraph,
        inv_a: &[(usize, usize, bool, usize, usize)],
        inv_b: &[(usize, usize, bool, usize, usize)],
        v: usize,
        mapping: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == self.n {
            return true;
        }
        for w in 0..other.n {
            if used[w] || inv_a[v] != inv_b[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                let mu = mapping[u];
                self.has_arc(v, u) == other.has_arc(w, mu)
                    && self.has_arc(u, v) == other.has_arc(mu, w)
            });
            if !consistent {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            if self.extend_isomorphism(other, inv_a, inv_b, v + 1, mapping, used) {
                return true;
            }
            used[w] = false;
        }
        mapping[v] = usize::MAX;
        false
    }
}

fn max_clique(
    current: &mut Vec<usize>,
    cand: &[usize],
    compat: &[FixedBitSet],
    best: &mut Vec<usize>,
) {
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    for (idx, &v) in cand.iter().enumerate() {
        if current.len() + cand.len() - idx <= best.len() {
            return;
        }
        let next: Vec<usize> = cand[idx + 1..]
            .iter()
            .copied()
            .filter(|&w| compat[v].contains(w))
            .collect();
        current.push(v);
        max_clique(current, &next, compat, best);
        current.pop();
    }
}

fn k_cliques(
    k: usize,
    current: &mut Vec<usize>,
    cand: &[usize],
    compat: &[FixedBitSet],
    found: &mut Vec<VertexSet>,
) {
    if current.len() == k {
        found.push(current.iter().copied().collect());
        return;
    }
    for (idx, &v) in cand.iter().enumerate() {
        if current.len() + cand.len() - idx < k {
            return;
        }
        let next: Vec<usize> = cand[idx + 1..]
            .iter()
            .copied()
            .filter(|&w| compat[v].contains(w))
            .collect();
        current.push(v);
        k_cliques(k, current, &next, compat, found);
        current.pop();
    }
}

/// The quotient homomorphism of a preorder onto its condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    source_vertex_count: usize,
    class_of: Vec<usize>,
    class_count: usize,
}

impl QuotientMap {
    pub fn source_vertex_count(&self) -> usize {
        self.source_vertex_count
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn members(&self, class: usize) -> VertexSet {
        (0..self.source_vertex_count)
            .filter(|&v| self.class_of[v] == class)
            .collect()
    }

    /// `[T] = { [x] | x in T }`.
    pub fn image(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.class_of[v]).collect()
    }

    /// The union of the classes in `classes`.
    pub fn preimage(&self, classes: VertexSet) -> VertexSet {
        (0..self.source_vertex_count)
            .filter(|&v| classes.contains(self.class_of[v]))
            .collect()
    }
}

/// A finite partial order, stored as its reflexive transitive digraph.
///
/// `a -> b` is an arc exactly when `a >= b`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    graph: Digraph,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.len())
            .field("covers", &self.covers())
            .finish()
    }
}

impl Poset {
    pub fn new(graph: Digraph) -> Result<Self> {
        if let Some(v) = (0..graph.n).find(|&v| !graph.has_loop(v)) {
            return Err(Error::NotAPoset(format!("vertex {v} has no loop")));
        }
        if let Some((u, v)) = graph
            .arcs()
            .find(|&(u, v)| !graph.out[v].is_subset(&graph.out[u]))
        {
            return Err(Error::NotAPoset(format!(
                "arc {u} -> {v} is not followed transitively"
            )));
        }
        if let Some((u, v)) = graph.arcs().find(|&(u, v)| u != v && graph.has_arc(v, u)) {
            return Err(Error::NotAPoset(format!(
                "vertices {u} and {v} lie on a common cycle"
            )));
        }
        Ok(Poset { graph })
    }

    /// The order generated by `pairs`, each `(a, b)` meaning `a <= b`.
    pub fn from_relation<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let g = Digraph::from_arcs(n, pairs.into_iter().map(|(a, b)| (b, a)))?;
        Poset::new(g.reflexive_closure().transitive_closure())
    }

    pub fn chain(n: usize) -> Self {
        Poset::from_relation(n, (1..n).map(|i| (i - 1, i))).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::from_relation(n, std::iter::empty()).expect("an antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.graph.n
    }

    pub fn is_empty(&self) -> bool {
        self.graph.n == 0
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn into_graph(self) -> Digraph {
        self.graph
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.graph.has_arc(b, a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// `{ y | y <= x }`.
    pub fn downset(&self, x: usize) -> &FixedBitSet {
        self.graph.successors(x)
    }

    /// `{ y | y >= x }`.
    pub fn upset(&self, x: usize) -> &FixedBitSet {
        self.graph.predecessors(x)
    }

    /// Cover pairs `(upper, lower)`: `lower < upper` with nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for u in 0..self.len() {
            for v in self.downset(u).ones() {
                if v == u {
                    continue;
                }
                let between = self
                    .downset(u)
                    .ones()
                    .any(|w| w != u && w != v && self.le(v, w));
                if !between {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.covers()
            .into_iter()
            .filter(|&(u, _)| u == x)
            .map(|(_, v)| v)
            .collect()
    }

    /// Maximum antichain size (loops are not counted as comparabilities).
    pub fn width(&self) -> usize {
        self.graph.without_loops().width()
    }

    pub fn is_chain_set(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .all(|&a| vertices.iter().all(|&b| self.comparable(a, b)))
    }

    /// Vertices sorted so that every element precedes the elements above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.downset(v).count_ones(..), v));
        order
    }

    /// The subposet on `vertices`; vertex `k` of the result is `vertices[k]`.
    pub fn induced(&self, vertices: &[usize]) -> Poset {
        Poset {
            graph: self.graph.induced_subgraph(vertices),
        }
    }

    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        self.graph.isomorphism(&other.graph)
    }

    /// Downsets of the principal elements as vertex sets.
    pub fn principal_downset(&self, x: usize) -> VertexSet {
        self.downset(x).ones().collect()
    }
}
