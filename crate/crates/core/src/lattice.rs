//! Finite lattices with explicit meet and join tables.

use std::collections::HashMap;
use std::hash::Hash;

use fixedbitset::FixedBitSet;

use crate::digraph::{sort_canonical, Poset, VertexSet};
use crate::error::{Bound, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    order: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Builds the meet and join tables of `order` by glb/lub search.
    pub fn from_order(order: Poset) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = extremal_bound(&order, a, b, Bound::Meet)?;
                let j = extremal_bound(&order, a, b, Bound::Join)?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        Ok(Lattice {
            order,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The chain `0 < 1 < .. < n`.
    pub fn chain(n: usize) -> Self {
        Lattice::from_order(Poset::chain(n + 1)).expect("a chain is a lattice")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order.le(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, elements: I) -> usize {
        elements
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, elements: I) -> usize {
        elements
            .into_iter()
            .fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Hasse diagram as `(upper, lower)` pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order.covers()
    }

    /// Length of a longest cover chain from bottom to top.
    pub fn height(&self) -> usize {
        let mut h = vec![0usize; self.len()];
        let covers = self.covers();
        for x in self.order.linear_extension() {
            h[x] = covers
                .iter()
                .filter(|&&(u, _)| u == x)
                .map(|&(_, l)| h[l] + 1)
                .max()
                .unwrap_or(0);
        }
        h[self.top]
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// Non-zero elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> IrreduciblePoset {
        let covers = self.covers();
        let label: Vec<usize> = (0..self.len())
            .filter(|&x| covers.iter().filter(|&&(u, _)| u == x).count() == 1)
            .collect();
        IrreduciblePoset {
            carrier: self.order.induced(&label),
            label,
        }
    }

    /// Non-top elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> IrreduciblePoset {
        let covers = self.covers();
        let label: Vec<usize> = (0..self.len())
            .filter(|&x| covers.iter().filter(|&&(_, l)| l == x).count() == 1)
            .collect();
        IrreduciblePoset {
            carrier: self.order.induced(&label),
            label,
        }
    }

    /// A bijection preserving meet and join, the first in canonical search
    /// order. Order isomorphisms between lattices are lattice isomorphisms.
    pub fn isomorphism(&self, other: &Lattice) -> Option<Vec<usize>> {
        self.order.isomorphism(&other.order)
    }

    /// Whether `image` (indexed by elements of `self`) preserves meet and join
    /// into `other`.
    pub fn is_homomorphism(&self, other: &Lattice, image: &[usize]) -> bool {
        let n = self.len();
        image.len() == n
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    image[self.meet(a, b)] == other.meet(image[a], image[b])
                        && image[self.join(a, b)] == other.join(image[a], image[b])
                })
            })
    }
}

fn extremal_bound(order: &Poset, a: usize, b: usize, bound: Bound) -> Result<usize> {
    let cone = |x: usize| -> &FixedBitSet {
        match bound {
            Bound::Meet => order.downset(x),
            Bound::Join => order.upset(x),
        }
    };
    let mut common = cone(a).clone();
    common.intersect_with(cone(b));
    common
        .ones()
        .find(|&g| common.is_subset(cone(g)))
        .ok_or(Error::NotALattice { a, b, bound })
}

pub fn are_isomorphic(l1: &Lattice, l2: &Lattice) -> Option<Vec<usize>> {
    l1.isomorphism(l2)
}

/// The non-zero join-irreducibles (or non-top meet-irreducibles) of a lattice
/// with the induced order; vertex `k` of `carrier` is element `label[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreduciblePoset {
    pub carrier: Poset,
    pub label: Vec<usize>,
}

impl IrreduciblePoset {
    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn vertex_of(&self, element: usize) -> Option<usize> {
        self.label.iter().position(|&e| e == element)
    }
}

/// A lattice whose elements carry values, such as sets or tuples.
#[derive(Debug, Clone)]
pub struct LabeledLattice<T> {
    pub lattice: Lattice,
    pub labels: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> LabeledLattice<T> {
    /// Orders `labels` by `le`. When `meet`/`join` land inside the family the
    /// tables come straight from them, otherwise from glb/lub search.
    fn build(
        labels: Vec<T>,
        le: impl Fn(&T, &T) -> bool,
        meet: impl Fn(&T, &T) -> T,
        join: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let n = labels.len();
        let index: HashMap<T, usize> = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, t)| (t, k))
            .collect();
        if index.len() != n {
            return Err(Error::NotAPoset("repeated element".into()));
        }
        let order = Poset::from_relation(
            n,
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| le(&labels[a], &labels[b])),
        )?;
        let mut meet_table = Vec::with_capacity(n * n);
        let mut join_table = Vec::with_capacity(n * n);
        let mut closed = n > 0;
        'outer: for a in 0..n {
            for b in 0..n {
                match (
                    index.get(&meet(&labels[a], &labels[b])),
                    index.get(&join(&labels[a], &labels[b])),
                ) {
                    (Some(&m), Some(&j)) => {
                        meet_table.push(m);
                        join_table.push(j);
                    }
                    _ => {
                        closed = false;
                        break 'outer;
                    }
                }
            }
        }
        let lattice = if closed {
            let bottom = (0..n).fold(0, |acc, x| meet_table[acc * n + x]);
            let top = (0..n).fold(0, |acc, x| join_table[acc * n + x]);
            Lattice {
                order,
                meet: meet_table,
                join: join_table,
                bottom,
                top,
            }
        } else {
            Lattice::from_order(order)?
        };
        Ok(LabeledLattice {
            lattice,
            labels,
            index,
        })
    }

    pub fn position(&self, label: &T) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, element: usize) -> &T {
        &self.labels[element]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl LabeledLattice<VertexSet> {
    /// A family of sets under inclusion.
    pub fn from_sets(sets: Vec<VertexSet>) -> Result<Self> {
        Self::build(
            sets,
            |a, b| a.is_subset(*b),
            |a, b| a.intersection(*b),
            |a, b| a.union(*b),
        )
    }
}

impl LabeledLattice<Vec<usize>> {
    /// A family of tuples under the coordinatewise order.
    pub fn from_points(points: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(
            points,
            |a, b| a.iter().zip(b).all(|(x, y)| x <= y),
            |a, b| a.iter().zip(b).map(|(x, y)| *x.min(y)).collect(),
            |a, b| a.iter().zip(b).map(|(x, y)| *x.max(y)).collect(),
        )
    }
}

/// Downsets of `p` ordered by inclusion, in canonical order.
pub fn downset_lattice(p: &Poset) -> Result<LabeledLattice<VertexSet>> {
    let mut sets = p.graph().terminal_sets()?;
    sort_canonical(&mut sets);
    LabeledLattice::from_sets(sets)
}

/// The isomorphism `x -> S_x = { a in J_L | a <= x }` of a distributive
/// lattice onto the downsets of its join-irreducibles.
#[derive(Debug, Clone)]
pub struct BirkhoffMap {
    pub irreducibles: IrreduciblePoset,
    pub downsets: LabeledLattice<VertexSet>,
    /// `image[x]` is the element of `downsets` equal to `S_x`.
    pub image: Vec<usize>,
}

impl BirkhoffMap {
    /// `S_x` as a set of vertices of `irreducibles.carrier`.
    pub fn set_of(&self, x: usize) -> VertexSet {
        *self.downsets.label(self.image[x])
    }

    /// The inverse `S -> join of S`.
    pub fn element_of(&self, lattice: &Lattice, set: VertexSet) -> usize {
        lattice.join_all(set.iter().map(|k| self.irreducibles.label[k]))
    }
}

pub fn birkhoff_map(l: &Lattice) -> Result<BirkhoffMap> {
    if !l.is_distributive() {
        return Err(Error::NotDistributive);
    }
    let irreducibles = l.join_irreducibles();
    if irreducibles.len() > VertexSet::CAPACITY {
        return Err(Error::TooLarge {
            what: "join-irreducible poset",
            limit: VertexSet::CAPACITY,
            requested: irreducibles.len(),
        });
    }
    let downsets = downset_lattice(&irreducibles.carrier)?;
    let mut image = Vec::with_capacity(l.len());
    for x in 0..l.len() {
        let s: VertexSet = irreducibles
            .label
            .iter()
            .enumerate()
            .filter(|&(_, &a)| l.le(a, x))
            .map(|(k, _)| k)
            .collect();
        let pos = downsets
            .position(&s)
            .ok_or_else(|| Error::Invariant(format!("S_{x} is not a downset")))?;
        image.push(pos);
    }
    let mut hit = vec![false; downsets.len()];
    for &y in &image {
        hit[y] = true;
    }
    if image.len() != downsets.len() || hit.iter().any(|h| !h) {
        return Err(Error::Invariant("Birkhoff map is not a bijection".into()));
    }
    if !l.is_homomorphism(&downsets.lattice, &image) {
        return Err(Error::Invariant(
            "Birkhoff map does not preserve meet and join".into(),
        ));
    }
    Ok(BirkhoffMap {
        irreducibles,
        downsets,
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> Lattice {
        Lattice::from_order(Poset::from_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
            .unwrap()
    }

    fn m3() -> Lattice {
        Lattice::from_order(
            Poset::from_relation(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn lattice_validation() {
        let c = Lattice::chain(2);
        assert_eq!((c.bottom(), c.top()), (0, 2));
        assert_eq!(b2().join(1, 2), 3);
        // two minimal elements below two incomparable maximal ones
        let bowtie = Poset::from_relation(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(matches!(
            Lattice::from_order(bowtie),
            Err(Error::NotALattice { .. })
        ));
    }

    #[test]
    fn distributivity() {
        assert!(Lattice::chain(4).is_distributive());
        assert!(b2().is_distributive());
        assert!(!m3().is_distributive());
    }

    #[test]
    fn irreducibles_of_small_lattices() {
        let j = Lattice::chain(3).join_irreducibles();
        assert_eq!(j.label, vec![1, 2, 3]);
        let m = b2().meet_irreducibles();
        assert_eq!(m.label, vec![1, 2]);
        let grid = LabeledLattice::from_points(
            (0..3)
                .flat_map(|a| (0..3).map(move |b| vec![a, b]))
                .collect(),
        )
        .unwrap();
        let j = grid.lattice.join_irreducibles();
        let mut labels: Vec<Vec<usize>> = j.label.iter().map(|&e| grid.label(e).clone()).collect();
        labels.sort();
        assert_eq!(labels, vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![2, 0]]);
    }

    #[test]
    fn downsets_of_small_posets() {
        assert_eq!(downset_lattice(&Poset::antichain(3)).unwrap().len(), 8);
        let chain = downset_lattice(&Poset::chain(3)).unwrap();
        assert_eq!(chain.len(), 4);
        assert!(chain.lattice.isomorphism(&Lattice::chain(3)).is_some());
        let v = Poset::from_relation(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(downset_lattice(&v).unwrap().len(), 5);
    }

    #[test]
    fn birkhoff_on_chain_and_square() {
        let c = Lattice::chain(2);
        let map = birkhoff_map(&c).unwrap();
        assert_eq!(map.set_of(2).len(), 2);
        assert!(map.set_of(0).is_empty());
        let b = b2();
        let map = birkhoff_map(&b).unwrap();
        assert_eq!(map.set_of(3).len(), 2);
        assert_eq!(map.element_of(&b, map.set_of(3)), 3);
        assert_eq!(birkhoff_map(&m3()).unwrap_err(), Error::NotDistributive);
    }

    #[test]
    fn heights() {
        assert_eq!(Lattice::chain(5).height(), 5);
        assert_eq!(b2().height(), 2);
        assert!(are_isomorphic(&b2(), &Lattice::chain(3)).is_none());
        assert_eq!(are_isomorphic(&b2(), &b2()), Some(vec![0, 1, 2, 3]));
    }
}
