//! Brute-force reference enumerations and seeded random instances.
//!
//! Everything here works straight from the definitions, without the
//! shortcuts used elsewhere in the crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{sort_canonical, Digraph, Poset, VertexSet};
use crate::error::{Error, Result};
use crate::intervals::{ChainProduct, Sublattice};

pub const MAX_LABELED_POSET: usize = 5;
pub const MAX_SUBLATTICE_PRODUCT: usize = 12;
pub const MAX_BRUTE_TERMINAL: usize = 20;

/// Every partial order on `{0, .., n-1}`, each exactly once.
///
/// Each unordered pair is unrelated, `a < b` or `b < a`; assignments that
/// break transitivity are discarded.
pub fn enumerate_labeled_posets(n: usize) -> Result<Vec<Poset>> {
    if n > MAX_LABELED_POSET {
        return Err(Error::ResourceGuard {
            what: "labeled poset enumeration",
            limit: MAX_LABELED_POSET,
            requested: n,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut less = vec![vec![false; n]; n];
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 3 {
                1 => less[a][b] = true,
                2 => less[b][a] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..n)
            .all(|a| (0..n).all(|b| !less[a][b] || (0..n).all(|c| !less[b][c] || less[a][c])));
        if transitive {
            let relation = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a == b || less[a][b]);
            out.push(Poset::from_relation(n, relation)?);
        }
    }
    Ok(out)
}

/// Every nonempty subset of `p` closed under coordinatewise min and max,
/// in increasing order of the subset's bitmask over the lexicographically
/// ordered tuples.
pub fn enumerate_sublattices(p: &ChainProduct) -> Result<Vec<Sublattice>> {
    let n = p.len();
    if n > MAX_SUBLATTICE_PRODUCT {
        return Err(Error::ResourceGuard {
            what: "sublattice enumeration product size",
            limit: MAX_SUBLATTICE_PRODUCT,
            requested: n,
        });
    }
    let points: Vec<Vec<usize>> = p.points().collect();
    let mut lo = vec![0usize; n * n];
    let mut hi = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let m: Vec<usize> = points[a]
                .iter()
                .zip(&points[b])
                .map(|(x, y)| *x.min(y))
                .collect();
            let j: Vec<usize> = points[a]
                .iter()
                .zip(&points[b])
                .map(|(x, y)| *x.max(y))
                .collect();
            lo[a * n + b] = p.index_of(&m);
            hi[a * n + b] = p.index_of(&j);
        }
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let has = |k: usize| mask >> k & 1 == 1;
        let closed = (0..n).filter(|&a| has(a)).all(|a| {
            (0..n)
                .filter(|&b| has(b))
                .all(|b| has(lo[a * n + b]) && has(hi[a * n + b]))
        });
        if closed {
            let elems = (0..n).filter(|&k| has(k)).map(|k| points[k].clone());
            out.push(Sublattice::new(p.clone(), elems)?);
        }
    }
    Ok(out)
}

/// All vertex sets `T` such that every path starting in `T` stays in `T`,
/// found by filtering the powerset; canonical order.
pub fn brute_terminal_sets(d: &Digraph) -> Result<Vec<VertexSet>> {
    let n = d.vertex_count();
    if n > MAX_BRUTE_TERMINAL {
        return Err(Error::ResourceGuard {
            what: "brute-force terminal set enumeration",
            limit: MAX_BRUTE_TERMINAL,
            requested: n,
        });
    }
    let mut reach = vec![VertexSet::empty(); n];
    for (x, r) in reach.iter_mut().enumerate() {
        for y in 0..n {
            if d.reachable(x, y, true)? {
                r.insert(y);
            }
        }
    }
    let mut out: Vec<VertexSet> = (0u64..(1u64 << n))
        .map(VertexSet::from_bits)
        .filter(|t| t.iter().all(|x| reach[x].is_subset(*t)))
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// Independent sets of `a` of size `d` straight from the definition:
/// no non-trivial path between any two members, by path search.
pub fn brute_independent_sets(a: &Digraph, d: usize) -> Result<Vec<VertexSet>> {
    let n = a.vertex_count();
    if n > MAX_BRUTE_TERMINAL {
        return Err(Error::ResourceGuard {
            what: "brute-force independent set enumeration",
            limit: MAX_BRUTE_TERMINAL,
            requested: n,
        });
    }
    let mut path = vec![vec![false; n]; n];
    for (x, row) in path.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = a.reachable(x, y, true)?;
        }
    }
    Ok((0u64..(1u64 << n))
        .map(VertexSet::from_bits)
        .filter(|s| s.len() == d)
        .filter(|s| s.iter().all(|x| s.iter().all(|y| !path[x][y])))
        .collect())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each ordered pair (loops included) becomes an arc with probability `density`.
pub fn random_digraph(n: usize, density: f64, rng: &mut impl Rng) -> Digraph {
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(density) {
                g.add_arc(u, v);
            }
        }
    }
    g
}

/// A random order: relations drawn between randomly labeled vertices along
/// a hidden linear order, then closed.
pub fn random_poset(n: usize, density: f64, rng: &mut impl Rng) -> Poset {
    let mut labels: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        labels.swap(k, rng.random_range(0..=k));
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density) {
                pairs.push((labels[a], labels[b]));
            }
        }
    }
    Poset::from_relation(n, pairs).expect("relations follow a linear order")
}

/// The min/max closure of a few random points of `p`.
pub fn random_sublattice(p: &ChainProduct, rng: &mut impl Rng) -> Sublattice {
    let generators = rng.random_range(1..=4);
    let mut elems: Vec<Vec<usize>> = (0..generators)
        .map(|_| p.sizes().iter().map(|&n| rng.random_range(0..=n)).collect())
        .collect();
    loop {
        let mut next = elems.clone();
        for x in &elems {
            for y in &elems {
                for z in [
                    x.iter().zip(y).map(|(a, b)| *a.min(b)).collect::<Vec<_>>(),
                    x.iter().zip(y).map(|(a, b)| *a.max(b)).collect(),
                ] {
                    if !next.contains(&z) {
                        next.push(z);
                    }
                }
            }
        }
        if next.len() == elems.len() {
            break;
        }
        elems = next;
    }
    Sublattice::new(p.clone(), elems).expect("closure under min and max")
}

/// A reflexive, transitive digraph on at most 7 vertices with a sink
/// (vertex 0) below everything and a source (the last vertex) above
/// everything; the inner part is a random digraph on up to 5 vertices.
pub fn random_pointed_preorder(rng: &mut impl Rng) -> Digraph {
    let inner = rng.random_range(0..=5);
    let density = rng.random_range(0.1..0.6);
    let n = inner + 2;
    let mut g = Digraph::new(n);
    for u in 0..inner {
        for v in 0..inner {
            if u != v && rng.random_bool(density) {
                g.add_arc(u + 1, v + 1);
            }
        }
    }
    for v in 0..n {
        g.add_arc(v, 0);
        g.add_arc(n - 1, v);
    }
    g.reflexive_closure().transitive_closure()
}

/// A named, deterministic family of test instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub description: String,
    pub instances: Vec<(String, Vec<u64>)>,
}

impl Corpus {
    /// The instances behind the acceptance checks.
    pub fn acceptance() -> Corpus {
        let mut instances = Vec::new();
        for n in 0..=MAX_LABELED_POSET as u64 {
            instances.push(("labeled-posets".to_string(), vec![n]));
        }
        for sizes in [vec![1, 1], vec![2, 2], vec![1, 1, 1]] {
            instances.push(("sublattices".to_string(), sizes));
        }
        instances.push(("random-sublattices(3,3)".to_string(), vec![500]));
        instances.push(("random-posets(6)".to_string(), vec![200]));
        instances.push(("random-digraphs(<=7)".to_string(), vec![200]));
        instances.push(("random-pointed-preorders(<=7)".to_string(), vec![100]));
        Corpus {
            description: "exhaustive small instances plus seeded random samples".to_string(),
            instances,
        }
    }
}
