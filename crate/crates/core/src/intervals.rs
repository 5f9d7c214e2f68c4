//! Products of chains, irreducible intervals and the digraphs built from
//! families of removed intervals.
//!
//! Coordinates are 1-based (`i` in `1..=d`) and levels 0-based, matching the
//! `3e2` vertex notation. Tuples are plain `Vec<usize>` indexed from 0, so
//! `x_i` is `x[i - 1]`.
//!
//! Three vertex layouts are used:
//!
//! * `C`: levels `0..=n_i` of every coordinate, coordinate-major.
//! * `C^inf`: id 0 is the global bottom `0`, then levels `1..=n_i` of every
//!   coordinate, and the last id is the global top `inf`. Level `0` of any
//!   coordinate aliases `0` and level `n_i + 1` aliases `inf`.
//! * `C*`: the interior of `C^inf`, ids shifted down by one.

use std::collections::BTreeSet;
use std::fmt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::lattice::LabeledLattice;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainProduct {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

/// A vertex of `C^inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointedLevel {
    Zero,
    Level { coord: usize, level: usize },
    Infinity,
}

impl ChainProduct {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::OutOfRange(
                "a product needs at least one chain".into(),
            ));
        }
        if let Some(k) = sizes.iter().position(|&n| n == 0) {
            return Err(Error::OutOfRange(format!(
                "chain {} has length 0; lengths must be positive",
                k + 1
            )));
        }
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &n in &sizes {
            offsets.push(acc);
            acc += n;
        }
        Ok(ChainProduct { sizes, offsets })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    /// `n_i` for a 1-based coordinate.
    pub fn size(&self, i: usize) -> usize {
        self.sizes[i - 1]
    }

    /// Number of tuples.
    pub fn len(&self) -> usize {
        self.sizes.iter().map(|n| n + 1).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the chain lengths.
    pub fn height(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn check_coord(&self, i: usize) -> Result<()> {
        if (1..=self.dim()).contains(&i) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "coordinate {i} is not in 1..={}",
                self.dim()
            )))
        }
    }

    pub fn check_level(&self, i: usize, level: usize) -> Result<()> {
        self.check_coord(i)?;
        if level <= self.size(i) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "level {level} exceeds {} on coordinate {i}",
                self.size(i)
            )))
        }
    }

    pub fn check_point(&self, x: &[usize]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::OutOfRange(format!(
                "tuple has {} coordinates, product has {}",
                x.len(),
                self.dim()
            )));
        }
        for (k, &level) in x.iter().enumerate() {
            self.check_level(k + 1, level)?;
        }
        Ok(())
    }

    /// Position of `x` in lexicographic order.
    pub fn index_of(&self, x: &[usize]) -> usize {
        x.iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&level, &n)| acc * (n + 1) + level)
    }

    pub fn point(&self, mut index: usize) -> Vec<usize> {
        let mut x = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            let radix = self.sizes[k] + 1;
            x[k] = index % radix;
            index /= radix;
        }
        x
    }

    /// All tuples in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    pub fn bottom_point(&self) -> Vec<usize> {
        vec![0; self.dim()]
    }

    pub fn top_point(&self) -> Vec<usize> {
        self.sizes.clone()
    }

    pub fn lattice(&self) -> LabeledLattice<Vec<usize>> {
        LabeledLattice::from_points(self.points().collect())
            .expect("a product of chains is a lattice")
    }

    // --- C: levels 0..=n_i ---

    pub fn c_count(&self) -> usize {
        self.height() + self.dim()
    }

    pub fn c_vertex(&self, i: usize, level: usize) -> usize {
        debug_assert!(level <= self.size(i));
        self.offsets[i - 1] + (i - 1) + level
    }

    /// `(coord, level)` of a vertex of `C`.
    pub fn c_decode(&self, v: usize) -> (usize, usize) {
        let mut rest = v;
        for (k, &n) in self.sizes.iter().enumerate() {
            if rest <= n {
                return (k + 1, rest);
            }
            rest -= n + 1;
        }
        panic!("vertex {v} is not a vertex of C");
    }

    pub fn c_name(&self, v: usize) -> String {
        let (i, level) = self.c_decode(v);
        format!("{level}e{i}")
    }

    // --- C^inf ---

    pub fn inf_count(&self) -> usize {
        self.height() + 2
    }

    pub fn inf_zero(&self) -> usize {
        0
    }

    pub fn inf_top(&self) -> usize {
        self.height() + 1
    }

    /// Vertex `level e_i` of `C^inf`, with `0 e_i = 0` and `(n_i+1) e_i = inf`.
    pub fn inf_vertex(&self, i: usize, level: usize) -> usize {
        let n = self.size(i);
        debug_assert!(level <= n + 1);
        if level == 0 {
            self.inf_zero()
        } else if level == n + 1 {
            self.inf_top()
        } else {
            1 + self.offsets[i - 1] + level - 1
        }
    }

    pub fn inf_decode(&self, v: usize) -> PointedLevel {
        if v == self.inf_zero() {
            PointedLevel::Zero
        } else if v == self.inf_top() {
            PointedLevel::Infinity
        } else {
            let (coord, level) = self.star_decode(v - 1);
            PointedLevel::Level { coord, level }
        }
    }

    pub fn inf_name(&self, v: usize) -> String {
        match self.inf_decode(v) {
            PointedLevel::Zero => "0".into(),
            PointedLevel::Infinity => "inf".into(),
            PointedLevel::Level { coord, level } => format!("{level}e{coord}"),
        }
    }

    // --- C*: levels 1..=n_i ---

    pub fn star_count(&self) -> usize {
        self.height()
    }

    pub fn star_vertex(&self, i: usize, level: usize) -> usize {
        debug_assert!((1..=self.size(i)).contains(&level));
        self.offsets[i - 1] + level - 1
    }

    pub fn star_decode(&self, v: usize) -> (usize, usize) {
        let k = self.offsets.partition_point(|&o| o <= v) - 1;
        (k + 1, v - self.offsets[k] + 1)
    }

    pub fn star_name(&self, v: usize) -> String {
        let (i, level) = self.star_decode(v);
        format!("{level}e{i}")
    }

    /// The loopless transitive tournaments on the levels `0..=n_i` of each
    /// coordinate: `alpha e_i -> beta e_i` for `alpha > beta`.
    pub fn tournaments(&self) -> Digraph {
        let mut g = Digraph::new(self.c_count());
        for i in 1..=self.dim() {
            for a in 0..=self.size(i) {
                for b in 0..a {
                    g.add_arc(self.c_vertex(i, a), self.c_vertex(i, b));
                }
            }
        }
        g
    }

    /// The pointed union of chains as a reflexive, transitive digraph: each
    /// chain of levels `1..=n_i`, everything above `0`, `inf` above everything.
    pub fn c_infinity(&self) -> Digraph {
        let mut g = Digraph::new(self.inf_count());
        let (zero, top) = (self.inf_zero(), self.inf_top());
        for v in 0..self.inf_count() {
            g.add_arc(v, v);
            g.add_arc(v, zero);
            g.add_arc(top, v);
        }
        for i in 1..=self.dim() {
            for a in 1..=self.size(i) {
                for b in 1..a {
                    g.add_arc(self.inf_vertex(i, a), self.inf_vertex(i, b));
                }
            }
        }
        g
    }

    /// `C*` as a disjoint union of reflexive chains.
    pub fn c_star(&self) -> Digraph {
        let mut g = Digraph::new(self.star_count());
        for i in 1..=self.dim() {
            for a in 1..=self.size(i) {
                for b in 1..=a {
                    g.add_arc(self.star_vertex(i, a), self.star_vertex(i, b));
                }
            }
        }
        g
    }

    /// Every interval of the product, in lexicographic `(i, j, alpha, beta)`
    /// order.
    pub fn all_intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        let d = self.dim();
        (1..=d).flat_map(move |i| {
            (1..=d).flat_map(move |j| {
                (0..=self.size(i)).flat_map(move |alpha| {
                    (0..=self.size(j)).map(move |beta| Interval { i, j, alpha, beta })
                })
            })
        })
    }
}

impl fmt::Display for ChainProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The set `{ x | alpha <= x_i and x_j <= beta }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub i: usize,
    pub j: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl Interval {
    pub fn new(i: usize, j: usize, alpha: usize, beta: usize) -> Self {
        Interval { i, j, alpha, beta }
    }

    pub fn check(&self, p: &ChainProduct) -> Result<()> {
        p.check_level(self.i, self.alpha)?;
        p.check_level(self.j, self.beta)
    }

    /// The empty intervals every family contains.
    pub fn is_mandatory_empty(&self) -> bool {
        self.i == self.j && self.beta < self.alpha
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        self.alpha <= x[self.i - 1] && x[self.j - 1] <= self.beta
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i, self.j, self.alpha, self.beta)
    }
}

pub fn interval_members(p: &ChainProduct, iv: &Interval) -> Result<Vec<Vec<usize>>> {
    iv.check(p)?;
    Ok(p.points().filter(|x| iv.contains(x)).collect())
}

/// A set of intervals of one product. The empty intervals `(i,i,alpha,beta)`
/// with `beta < alpha` are always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFamily {
    product: ChainProduct,
    intervals: BTreeSet<Interval>,
}

impl IntervalFamily {
    /// The family of mandatory empty intervals only.
    pub fn new(product: ChainProduct) -> Self {
        let intervals = product
            .all_intervals()
            .filter(Interval::is_mandatory_empty)
            .collect();
        IntervalFamily { product, intervals }
    }

    pub fn from_intervals<I>(product: ChainProduct, intervals: I) -> Result<Self>
    where
        I: IntoIterator<Item = Interval>,
    {
        let mut fam = IntervalFamily::new(product);
        for iv in intervals {
            fam.insert(iv)?;
        }
        Ok(fam)
    }

    pub fn insert(&mut self, iv: Interval) -> Result<()> {
        iv.check(&self.product)?;
        self.intervals.insert(iv);
        Ok(())
    }

    pub fn product(&self) -> &ChainProduct {
        &self.product
    }

    pub fn intervals(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter()
    }

    /// The intervals beyond the mandatory empty ones.
    pub fn non_mandatory(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(|iv| !iv.is_mandatory_empty())
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.intervals.contains(iv)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Whether `x` lies in some member interval.
    pub fn covers_point(&self, x: &[usize]) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// `removed[k]` tells whether the `k`-th tuple lies in the union.
    pub fn removed_mask(&self) -> Vec<bool> {
        self.product
            .points()
            .map(|x| self.covers_point(&x))
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        close_family(self) == *self
    }
}

/// A nonempty set of tuples closed under coordinatewise min and max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    product: ChainProduct,
    elements: BTreeSet<Vec<usize>>,
}

impl Sublattice {
    pub fn new<I>(product: ChainProduct, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let elements: BTreeSet<Vec<usize>> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::NotASublattice("no elements".into()));
        }
        for x in &elements {
            product
                .check_point(x)
                .map_err(|e| Error::NotASublattice(e.to_string()))?;
        }
        for x in &elements {
            for y in &elements {
                let lo: Vec<usize> = x.iter().zip(y).map(|(a, b)| *a.min(b)).collect();
                let hi: Vec<usize> = x.iter().zip(y).map(|(a, b)| *a.max(b)).collect();
                for z in [lo, hi] {
                    if !elements.contains(&z) {
                        return Err(Error::NotASublattice(format!(
                            "{x:?} and {y:?} generate {z:?}, which is missing"
                        )));
                    }
                }
            }
        }
        Ok(Sublattice { product, elements })
    }

    pub fn full(product: ChainProduct) -> Self {
        let elements = product.points().collect();
        Sublattice { product, elements }
    }

    pub fn product(&self) -> &ChainProduct {
        &self.product
    }

    pub fn elements(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.elements.iter()
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        self.elements.contains(x)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in lexicographic order, as a lattice.
    pub fn lattice(&self) -> LabeledLattice<Vec<usize>> {
        LabeledLattice::from_points(self.elements.iter().cloned().collect())
            .expect("a sublattice is a lattice")
    }
}

/// `P` minus the union of the family.
pub fn remove(fam: &IntervalFamily) -> Result<Sublattice> {
    let p = fam.product();
    let kept: Vec<Vec<usize>> = p.points().filter(|x| !fam.covers_point(x)).collect();
    if kept.is_empty() {
        return Err(Error::EmptySublattice);
    }
    Sublattice::new(p.clone(), kept)
        .map_err(|e| Error::Invariant(format!("interval removal broke closure: {e}")))
}

/// All intervals of `p` that avoid every tuple of `kept`.
///
/// For fixed `(i, j, alpha)` the interval avoids `kept` exactly when `beta` is
/// below every `x_j` with `x in kept` and `x_i >= alpha`.
fn intervals_avoiding(p: &ChainProduct, kept: &[Vec<usize>]) -> BTreeSet<Interval> {
    let mut out = BTreeSet::new();
    for i in 1..=p.dim() {
        for j in 1..=p.dim() {
            for alpha in 0..=p.size(i) {
                let floor = kept
                    .iter()
                    .filter(|x| x[i - 1] >= alpha)
                    .map(|x| x[j - 1])
                    .min()
                    .unwrap_or(p.size(j) + 1);
                for beta in 0..floor.min(p.size(j) + 1) {
                    out.insert(Interval { i, j, alpha, beta });
                }
            }
        }
    }
    out
}

/// The closed family of every interval disjoint from `l`.
pub fn rival_extract(l: &Sublattice) -> IntervalFamily {
    let kept: Vec<Vec<usize>> = l.elements.iter().cloned().collect();
    IntervalFamily {
        product: l.product.clone(),
        intervals: intervals_avoiding(&l.product, &kept),
    }
}

/// `{ iv | members(iv) within the union of fam }`.
pub fn close_family(fam: &IntervalFamily) -> IntervalFamily {
    let p = fam.product();
    let kept: Vec<Vec<usize>> = p.points().filter(|x| !fam.covers_point(x)).collect();
    IntervalFamily {
        product: p.clone(),
        intervals: intervals_avoiding(p, &kept),
    }
}

/// `A`: the tournaments `T` plus `alpha e_i -> beta e_j` per interval.
pub fn construct_a(fam: &IntervalFamily) -> Digraph {
    let p = fam.product();
    let mut g = p.tournaments();
    for iv in fam.intervals() {
        g.add_arc(p.c_vertex(iv.i, iv.alpha), p.c_vertex(iv.j, iv.beta));
    }
    g
}

/// `D`: `C^inf` plus `alpha e_i -> (beta+1) e_j` per interval.
pub fn construct_d(fam: &IntervalFamily) -> Digraph {
    let p = fam.product();
    let mut g = p.c_infinity();
    for iv in fam.intervals() {
        g.add_arc(
            p.inf_vertex(iv.i, iv.alpha),
            p.inf_vertex(iv.j, iv.beta + 1),
        );
    }
    g
}

/// Shifts every arc target of `a` (a digraph on `C`) up one level and adds
/// `C^inf`, so that `K(T) = C^inf` and `K(A) = D` for every family.
pub fn koh_k(p: &ChainProduct, a: &Digraph) -> Result<Digraph> {
    if a.vertex_count() != p.c_count() {
        return Err(Error::OutOfRange(format!(
            "digraph has {} vertices, C has {}",
            a.vertex_count(),
            p.c_count()
        )));
    }
    let mut g = p.c_infinity();
    for (u, v) in a.arcs() {
        let (i, alpha) = p.c_decode(u);
        let (j, beta) = p.c_decode(v);
        g.add_arc(p.inf_vertex(i, alpha), p.inf_vertex(j, beta + 1));
    }
    Ok(g)
}

/// Shifts every arc target of `d` (a digraph on `C^inf`) down one level.
///
/// A source `0` stands for every `0 e_k` and a target `inf` for every
/// `n_k e_k`; arcs out of `inf` or into `0` have no preimage and are dropped.
pub fn koh_k_inverse(p: &ChainProduct, d: &Digraph) -> Result<Digraph> {
    if d.vertex_count() != p.inf_count() {
        return Err(Error::OutOfRange(format!(
            "digraph has {} vertices, C^inf has {}",
            d.vertex_count(),
            p.inf_count()
        )));
    }
    let every = |level: &dyn Fn(usize) -> usize| -> Vec<usize> {
        (1..=p.dim()).map(|k| p.c_vertex(k, level(k))).collect()
    };
    let mut g = Digraph::new(p.c_count());
    for (u, v) in d.arcs() {
        let sources = match p.inf_decode(u) {
            PointedLevel::Zero => every(&|_| 0),
            PointedLevel::Infinity => continue,
            PointedLevel::Level { coord, level } => vec![p.c_vertex(coord, level)],
        };
        let targets = match p.inf_decode(v) {
            PointedLevel::Zero => continue,
            PointedLevel::Infinity => every(&|k| p.size(k)),
            PointedLevel::Level { coord, level } => vec![p.c_vertex(coord, level - 1)],
        };
        for &s in &sources {
            for &t in &targets {
                g.add_arc(s, t);
            }
        }
    }
    Ok(g)
}

/// Reads one interval per arc of `a`, which must contain the tournaments.
pub fn intervals_from_a(p: &ChainProduct, a: &Digraph) -> Result<IntervalFamily> {
    if a.vertex_count() != p.c_count() {
        return Err(Error::OutOfRange(format!(
            "digraph has {} vertices, C has {}",
            a.vertex_count(),
            p.c_count()
        )));
    }
    let t = p.tournaments();
    if let Some((u, v)) = t.arcs().find(|&(u, v)| !a.has_arc(u, v)) {
        return Err(Error::MissingBaseArcs(format!(
            "tournament arc {} -> {} is absent",
            p.c_name(u),
            p.c_name(v)
        )));
    }
    let mut fam = IntervalFamily::new(p.clone());
    for (u, v) in a.arcs() {
        let (i, alpha) = p.c_decode(u);
        let (j, beta) = p.c_decode(v);
        fam.insert(Interval { i, j, alpha, beta })?;
    }
    Ok(fam)
}

/// Outcome of a path query in `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathQuery {
    pub covered: bool,
    /// When not covered: an element `x` of the sublattice with
    /// `x_i >= alpha` and `x_j <= beta`.
    pub witness: Option<Vec<usize>>,
}

/// Decides whether interval `(i, j, alpha, beta)` lies inside the union of
/// `fam` by searching for an `alpha e_i -> (beta+1) e_j` path in `D`.
///
/// Otherwise the witness takes, on each coordinate, the highest level
/// reachable from `alpha e_i`.
pub fn path_covered(fam: &IntervalFamily, query: Interval) -> Result<PathQuery> {
    let p = fam.product();
    query.check(p)?;
    let d = construct_d(fam);
    let source = p.inf_vertex(query.i, query.alpha);
    let target = p.inf_vertex(query.j, query.beta + 1);
    if d.reachable(source, target, false)? {
        return Ok(PathQuery {
            covered: true,
            witness: None,
        });
    }
    let reach = d.closure_of(source);
    let witness: Vec<usize> = (1..=p.dim())
        .map(|k| {
            (1..=p.size(k))
                .rev()
                .find(|&level| reach.contains(p.inf_vertex(k, level)))
                .unwrap_or(0)
        })
        .collect();
    if fam.covers_point(&witness) || !query.contains(&witness) {
        return Err(Error::Invariant(format!(
            "path witness {witness:?} for {query} is not a member of the sublattice inside the interval"
        )));
    }
    Ok(PathQuery {
        covered: false,
        witness: Some(witness),
    })
}
