//! Terminal-set lattices, independent-set posets and the maps between them
//! and sublattices of products of chains.

use crate::digraph::{Digraph, Poset, QuotientMap, VertexSet};
use crate::embeddings::dilworth_decompose;
use crate::error::{Error, Result};
use crate::intervals::{
    construct_a, construct_d, remove, ChainProduct, IntervalFamily, PointedLevel,
};
use crate::lattice::{LabeledLattice, Lattice};

pub fn is_terminal(d: &Digraph, set: VertexSet) -> bool {
    d.is_terminal(set)
}

/// The proper terminal sets of `d` under inclusion, in canonical order.
pub fn terminal_lattice(d: &Digraph) -> Result<LabeledLattice<VertexSet>> {
    let full = VertexSet::full(d.vertex_count().min(VertexSet::CAPACITY));
    let sets: Vec<VertexSet> = d
        .terminal_sets()?
        .into_iter()
        .filter(|s| !s.is_empty() && *s != full)
        .collect();
    if sets.is_empty() {
        return Err(Error::EmptyLattice);
    }
    LabeledLattice::from_sets(sets)
}

fn require_inf_capacity(p: &ChainProduct) -> Result<()> {
    if p.inf_count() > VertexSet::CAPACITY {
        Err(Error::TooLarge {
            what: "vertex sets over C^inf",
            limit: VertexSet::CAPACITY,
            requested: p.inf_count(),
        })
    } else {
        Ok(())
    }
}

/// `T_x = { alpha e_i | alpha <= x_i }` over `C^inf`; always contains `0`.
pub fn map_t(p: &ChainProduct, x: &[usize]) -> Result<VertexSet> {
    p.check_point(x)?;
    require_inf_capacity(p)?;
    let mut t = VertexSet::singleton(p.inf_zero());
    for (k, &level) in x.iter().enumerate() {
        for a in 1..=level {
            t.insert(p.inf_vertex(k + 1, a));
        }
    }
    Ok(t)
}

/// Coordinatewise maximum of the levels in `t`, i.e. the join of `t` in `P`.
pub fn map_t_inverse(p: &ChainProduct, t: VertexSet) -> Result<Vec<usize>> {
    let mut x = p.bottom_point();
    for v in t.iter() {
        if v >= p.inf_count() {
            return Err(Error::InvalidVertex {
                vertex: v,
                count: p.inf_count(),
            });
        }
        match p.inf_decode(v) {
            PointedLevel::Zero => {}
            PointedLevel::Infinity => {
                return Err(Error::OutOfRange("set contains inf".into()));
            }
            PointedLevel::Level { coord, level } => {
                x[coord - 1] = x[coord - 1].max(level);
            }
        }
    }
    Ok(x)
}

/// The size-`d` independent sets of a digraph with the reachability order:
/// `I >= I'` when every member of `I` has a path to some member of `I'`.
#[derive(Debug, Clone)]
pub struct IndependentFamily {
    pub sets: Vec<VertexSet>,
    pub order: Poset,
}

impl IndependentFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn position(&self, set: VertexSet) -> Option<usize> {
        self.sets.iter().position(|&s| s == set)
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::from_order(self.order.clone())
    }
}

pub fn independent_sets_d(a: &Digraph, d: usize) -> Result<IndependentFamily> {
    let sets = a.independent_sets_of_size(d)?;
    let reach: Vec<VertexSet> = (0..a.vertex_count())
        .map(|v| a.closure_of(v).ones().collect())
        .collect();
    let above = |s: VertexSet, t: VertexSet| s.iter().all(|x| !reach[x].intersection(t).is_empty());
    let mut g = Digraph::new(sets.len());
    for (k, &s) in sets.iter().enumerate() {
        for (l, &t) in sets.iter().enumerate() {
            if above(s, t) {
                g.add_arc(k, l);
            }
        }
    }
    if let Some((k, l)) = g.arcs().find(|&(k, l)| k < l && g.has_arc(l, k)) {
        return Err(Error::NotAntisymmetric(k, l));
    }
    let order =
        Poset::new(g).map_err(|e| Error::Invariant(format!("independent-set order: {e}")))?;
    Ok(IndependentFamily { sets, order })
}

/// The tuple `x` read off an independent set `{x_1 e_1, .., x_d e_d}` of `A`.
pub fn independent_set_point(p: &ChainProduct, set: VertexSet) -> Result<Vec<usize>> {
    let mut x = vec![None; p.dim()];
    for v in set.iter() {
        let (i, level) = p.c_decode(v);
        if x[i - 1].replace(level).is_some() {
            return Err(Error::Invariant(format!(
                "independent set {set:?} meets coordinate {i} twice"
            )));
        }
    }
    x.into_iter()
        .enumerate()
        .map(|(k, level)| {
            level.ok_or_else(|| {
                Error::Invariant(format!(
                    "independent set {set:?} misses coordinate {}",
                    k + 1
                ))
            })
        })
        .collect()
}

/// `{x_1 e_1, .., x_d e_d}` over the vertices of `C`.
pub fn point_independent_set(p: &ChainProduct, x: &[usize]) -> Result<VertexSet> {
    p.check_point(x)?;
    if p.c_count() > VertexSet::CAPACITY {
        return Err(Error::TooLarge {
            what: "vertex sets over C",
            limit: VertexSet::CAPACITY,
            requested: p.c_count(),
        });
    }
    Ok(x.iter()
        .enumerate()
        .map(|(k, &level)| p.c_vertex(k + 1, level))
        .collect())
}

/// The isomorphism `{x_1 e_1, ..} -> T_x` from the size-`d` independent sets
/// of `A` onto the proper terminal sets of `D`.
#[derive(Debug, Clone)]
pub struct Duality {
    pub independent: IndependentFamily,
    pub terminal: LabeledLattice<VertexSet>,
    /// `forward[k]` is the terminal set matched with `independent.sets[k]`.
    pub forward: Vec<usize>,
}

pub fn duality_map(fam: &IntervalFamily) -> Result<Duality> {
    remove(fam)?;
    let p = fam.product();
    let independent = independent_sets_d(&construct_a(fam), p.dim())?;
    let terminal = terminal_lattice(&construct_d(fam))?;
    if independent.len() != terminal.len() {
        return Err(Error::Invariant(format!(
            "{} independent sets but {} terminal sets",
            independent.len(),
            terminal.len()
        )));
    }
    let mut forward = Vec::with_capacity(independent.len());
    for &s in &independent.sets {
        let t = map_t(p, &independent_set_point(p, s)?)?;
        let pos = terminal
            .position(&t)
            .ok_or_else(|| Error::Invariant(format!("T_x = {t:?} is not terminal")))?;
        forward.push(pos);
    }
    check_order_isomorphism(&independent.order, terminal.lattice.order(), &forward)?;
    Ok(Duality {
        independent,
        terminal,
        forward,
    })
}

/// Checks that `forward` is a bijection reflecting and preserving order.
pub(crate) fn check_order_isomorphism(
    source: &Poset,
    target: &Poset,
    forward: &[usize],
) -> Result<()> {
    let mut hit = vec![false; target.len()];
    for &y in forward {
        if y >= target.len() || std::mem::replace(&mut hit[y], true) {
            return Err(Error::Invariant("map is not injective".into()));
        }
    }
    if forward.len() != target.len() {
        return Err(Error::Invariant("map is not surjective".into()));
    }
    for a in 0..source.len() {
        for b in 0..source.len() {
            if source.le(a, b) != target.le(forward[a], forward[b]) {
                return Err(Error::Invariant(format!(
                    "map does not preserve the order between {a} and {b}"
                )));
            }
        }
    }
    Ok(())
}

/// The maximum independent sets of a digraph as a distributive lattice.
#[derive(Debug, Clone)]
pub struct MaxIndependentLattice {
    pub sets: Vec<VertexSet>,
    pub lattice: Lattice,
    /// Chain decomposition used for the coordinates, bottom to top.
    pub chains: Vec<Vec<usize>>,
}

/// Vertices on a directed cycle are never independent, and paths between
/// the remaining vertices are recorded by the transitive closure, so the
/// independent sets are the antichains of the strict order induced on the
/// cycle-free vertices. A Dilworth decomposition of that order embeds the
/// maximum antichains into a product of chains.
pub fn max_independent_lattice(a: &Digraph) -> Result<MaxIndependentLattice> {
    let closure = a.transitive_closure();
    let free: Vec<usize> = (0..a.vertex_count())
        .filter(|&v| !closure.has_loop(v))
        .collect();
    if free.is_empty() {
        return Err(Error::NoIndependentSets);
    }
    let order = Poset::new(closure.induced_subgraph(&free).reflexive_closure())
        .map_err(|e| Error::Invariant(format!("cycle-free part is not an order: {e}")))?;
    let local_chains = dilworth_decompose(&order);
    let chains: Vec<Vec<usize>> = local_chains
        .iter()
        .map(|c| c.iter().map(|&k| free[k]).collect())
        .collect();
    let width = chains.len();
    let maximum = a.independent_sets_of_size(width)?;
    if maximum.is_empty() {
        return Err(Error::Invariant(
            "no independent set of Dilworth size".into(),
        ));
    }
    let mut points = Vec::with_capacity(maximum.len());
    for &s in &maximum {
        let x: Option<Vec<usize>> = chains
            .iter()
            .map(|c| {
                let hits: Vec<usize> = (0..c.len()).filter(|&k| s.contains(c[k])).collect();
                (hits.len() == 1).then(|| hits[0])
            })
            .collect();
        points.push(x.ok_or_else(|| {
            Error::Invariant(format!("maximum independent set {s:?} misses a chain"))
        })?);
    }
    let labeled = LabeledLattice::from_points(points.clone())?;
    let lattice = labeled.lattice.clone();
    if !is_closed_under_min_max(&points) || !lattice.is_distributive() {
        return Err(Error::Invariant(
            "maximum independent sets do not form a sublattice".into(),
        ));
    }
    let reach_order = independent_sets_d(a, width)?;
    let forward: Vec<usize> = reach_order
        .sets
        .iter()
        .map(|s| {
            maximum
                .iter()
                .position(|t| t == s)
                .expect("same enumeration")
        })
        .collect();
    check_order_isomorphism(&reach_order.order, lattice.order(), &forward)?;
    Ok(MaxIndependentLattice {
        sets: maximum,
        lattice,
        chains,
    })
}

fn is_closed_under_min_max(points: &[Vec<usize>]) -> bool {
    let set: std::collections::HashSet<&Vec<usize>> = points.iter().collect();
    points.iter().all(|x| {
        points.iter().all(|y| {
            let lo: Vec<usize> = x.iter().zip(y).map(|(a, b)| *a.min(b)).collect();
            let hi: Vec<usize> = x.iter().zip(y).map(|(a, b)| *a.max(b)).collect();
            set.contains(&lo) && set.contains(&hi)
        })
    })
}

/// `T -> [T]` from the proper terminal sets of a preorder onto the proper
/// terminal sets (nonempty proper downsets) of its condensation.
#[derive(Debug, Clone)]
pub struct CondensationMap {
    pub poset: Poset,
    pub quotient: QuotientMap,
    pub source: LabeledLattice<VertexSet>,
    pub target: LabeledLattice<VertexSet>,
    pub forward: Vec<usize>,
}

pub fn condensation_map(d: &Digraph) -> Result<CondensationMap> {
    let (poset, quotient) = d.condensation()?;
    let source = terminal_lattice(d)?;
    let target = terminal_lattice(poset.graph())?;
    let forward = source
        .labels
        .iter()
        .map(|&t| {
            let image = quotient.image(t);
            if quotient.preimage(image) != t {
                return Err(Error::Invariant(format!(
                    "terminal set {t:?} is not a union of classes"
                )));
            }
            target
                .position(&image)
                .ok_or_else(|| Error::Invariant(format!("[T] = {image:?} is not terminal")))
        })
        .collect::<Result<Vec<usize>>>()?;
    check_order_isomorphism(source.lattice.order(), target.lattice.order(), &forward)?;
    Ok(CondensationMap {
        poset,
        quotient,
        source,
        target,
        forward,
    })
}

/// `I -> { [a] | a in I }` from the size-`d` independent sets of `a` onto
/// those of the condensation of its reflexive transitive closure. A class
/// keeps a loop exactly when its vertices lie on a cycle of `a`, since such
/// vertices are never independent.
pub fn independent_quotient_map(
    a: &Digraph,
    d: usize,
) -> Result<(IndependentFamily, IndependentFamily, Vec<usize>)> {
    let closure = a.transitive_closure();
    let (poset, quotient) = closure.reflexive_closure().condensation()?;
    let mut quotient_graph = poset.graph().without_loops();
    for v in (0..a.vertex_count()).filter(|&v| closure.has_arc(v, v)) {
        quotient_graph.add_arc(quotient.class_of(v), quotient.class_of(v));
    }
    let source = independent_sets_d(a, d)?;
    let target = independent_sets_d(&quotient_graph, d)?;
    let forward = source
        .sets
        .iter()
        .map(|&s| {
            let image = quotient.image(s);
            target
                .position(image)
                .ok_or_else(|| Error::Invariant(format!("image of {s:?} is not independent")))
        })
        .collect::<Result<Vec<usize>>>()?;
    check_order_isomorphism(&source.order, &target.order, &forward)?;
    Ok((source, target, forward))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::Interval;

    fn p45() -> ChainProduct {
        ChainProduct::new(vec![4, 5]).unwrap()
    }

    fn grid_cut() -> IntervalFamily {
        IntervalFamily::from_intervals(p45(), [Interval::new(2, 1, 3, 2)]).unwrap()
    }

    fn five_element() -> IntervalFamily {
        IntervalFamily::from_intervals(
            ChainProduct::new(vec![2, 2]).unwrap(),
            [Interval::new(1, 2, 2, 1), Interval::new(2, 1, 2, 1)],
        )
        .unwrap()
    }

    #[test]
    fn terminal_examples() {
        let chain = Digraph::from_arcs(3, [(2, 1), (1, 0)]).unwrap();
        assert!(is_terminal(&chain, VertexSet::from_iter([0, 1])));
        assert!(!is_terminal(&chain, VertexSet::from_iter([1, 2])));
        assert!(is_terminal(&chain, VertexSet::empty()));

        let p = p45();
        let t23 = map_t(&p, &[2, 3]).unwrap();
        assert_eq!(t23.len(), 6);
        assert!(!is_terminal(&construct_d(&grid_cut()), t23));
        assert!(is_terminal(&p.c_infinity(), t23));
    }

    #[test]
    fn terminal_lattice_sizes() {
        assert_eq!(terminal_lattice(&p45().c_infinity()).unwrap().len(), 30);
        assert_eq!(
            terminal_lattice(&construct_d(&grid_cut())).unwrap().len(),
            21
        );
        assert_eq!(
            terminal_lattice(&construct_d(&five_element()))
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            terminal_lattice(&Digraph::complete(3)).unwrap_err(),
            Error::EmptyLattice
        );
    }

    #[test]
    fn map_t_round_trip() {
        let p = p45();
        assert_eq!(map_t(&p, &[0, 0]).unwrap(), VertexSet::singleton(0));
        for x in p.points() {
            assert_eq!(map_t_inverse(&p, map_t(&p, &x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn independent_set_counts() {
        let p = p45();
        let base = independent_sets_d(&p.tournaments(), 2).unwrap();
        assert_eq!(base.len(), 30);
        assert_eq!(
            independent_sets_d(&construct_a(&grid_cut()), 2)
                .unwrap()
                .len(),
            21
        );
        assert!(independent_sets_d(&Digraph::complete(3), 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn duality_examples() {
        assert_eq!(duality_map(&grid_cut()).unwrap().forward.len(), 21);
        assert_eq!(duality_map(&five_element()).unwrap().forward.len(), 5);
        assert_eq!(
            duality_map(&IntervalFamily::new(p45()))
                .unwrap()
                .forward
                .len(),
            30
        );
    }

    #[test]
    fn max_independent_examples() {
        let pair = max_independent_lattice(&Digraph::new(2)).unwrap();
        assert_eq!(pair.lattice.len(), 1);
        let arc = max_independent_lattice(&Digraph::from_arcs(2, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(arc.lattice.len(), 2);
        let top = arc.lattice.top();
        assert_eq!(arc.sets[top], VertexSet::singleton(0));
        let t = max_independent_lattice(&p45().tournaments()).unwrap();
        assert!(t.lattice.isomorphism(&p45().lattice().lattice).is_some());
        assert_eq!(
            max_independent_lattice(&Digraph::complete(2)).unwrap_err(),
            Error::NoIndependentSets
        );
        // a 2-cycle leaves only the third vertex independent
        let g = Digraph::from_arcs(3, [(0, 1), (1, 0)]).unwrap();
        let m = max_independent_lattice(&g).unwrap();
        assert_eq!(m.sets, vec![VertexSet::singleton(2)]);
    }

    #[test]
    fn condensation_of_five_element_family() {
        let d = construct_d(&five_element()).transitive_closure();
        let map = condensation_map(&d).unwrap();
        assert_eq!(map.poset.len(), 5);
        assert_eq!(map.source.len(), 5);
    }
}
