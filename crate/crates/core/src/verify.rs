//! Property sweeps over exhaustive and seeded random instances, used by the
//! command-line `verify` verb.

use crate::digraph::{sort_canonical, VertexSet};
use crate::embeddings::{
    check_decomposition, classify, dilworth_decompose, enumerate_correspondence,
};
use crate::error::Result;
use crate::intervals::{construct_d, remove, rival_extract, ChainProduct};
use crate::lattice::downset_lattice;
use crate::oracle;
use crate::representations::{
    check_order_isomorphism, condensation_map, duality_map, independent_sets_d, map_t,
    max_independent_lattice, terminal_lattice,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Small,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    fn new(name: &'static str) -> Self {
        PropertyReport {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, outcome: std::result::Result<(), String>) {
        self.checked += 1;
        if let Err(e) = outcome {
            self.failures.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }
}

/// Every product of chains with positive lengths summing to at most `total`,
/// in lexicographic order of the size lists.
pub fn products_up_to(total: usize) -> Vec<ChainProduct> {
    fn go(left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        for n in 1..=left {
            current.push(n);
            go(left - n, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(total, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter()
        .map(|s| ChainProduct::new(s).expect("positive lengths"))
        .collect()
}

fn check(cond: bool, message: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

/// Runs the suite. `max` bounds instance sizes: poset vertex counts, chain
/// lengths and the total length of target products.
pub fn run_suite(suite: Suite, max: usize) -> Result<VerifyReport> {
    let small = suite == Suite::Small;
    let mut properties = Vec::new();

    let poset_max = max.min(if small { 4 } else { oracle::MAX_LABELED_POSET });
    let posets: Vec<_> = (0..=poset_max)
        .map(oracle::enumerate_labeled_posets)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut birkhoff = PropertyReport::new("birkhoff-round-trip");
    for p in &posets {
        birkhoff.record((|| {
            let d = downset_lattice(p).map_err(|e| e.to_string())?;
            check(d.lattice.is_distributive(), || {
                format!("D(P) of {p:?} is not distributive")
            })?;
            let j = d.lattice.join_irreducibles();
            check(j.carrier.isomorphism(p).is_some(), || {
                format!("join-irreducibles of D(P) differ from {p:?}")
            })
        })());
    }
    properties.push(birkhoff);

    let mut dilworth = PropertyReport::new("dilworth-width");
    for p in &posets {
        dilworth.record((|| {
            let chains = dilworth_decompose(p);
            check_decomposition(p, &chains).map_err(|e| e.to_string())?;
            check(chains.len() == p.width(), || {
                format!("{} chains for width {} in {p:?}", chains.len(), p.width())
            })
        })());
    }
    properties.push(dilworth);

    let product_limit = if small {
        9
    } else {
        oracle::MAX_SUBLATTICE_PRODUCT
    };
    let products: Vec<ChainProduct> = products_up_to(max.min(6))
        .into_iter()
        .filter(|p| p.dim() <= 3 && p.sizes().iter().all(|&n| n <= max) && p.len() <= product_limit)
        .collect();
    let mut rival = PropertyReport::new("rival-terminal-isomorphism");
    let mut classification = PropertyReport::new("classification-criteria");
    let mut duality = PropertyReport::new("independent-terminal-duality");
    for p in &products {
        for l in oracle::enumerate_sublattices(p)? {
            rival.record((|| {
                let fam = rival_extract(&l);
                check(remove(&fam).map_err(|e| e.to_string())? == l, || {
                    format!("removal does not give back {l:?}")
                })?;
                check(fam.is_closed(), || "extracted family is not closed".into())?;
                let d = construct_d(&fam);
                check(d.is_transitive(), || {
                    "D of a closed family is not transitive".into()
                })?;
                let terminal = terminal_lattice(&d).map_err(|e| e.to_string())?;
                let lat = l.lattice();
                let forward = lat
                    .labels
                    .iter()
                    .map(|x| {
                        let t = map_t(p, x).map_err(|e| e.to_string())?;
                        terminal
                            .position(&t)
                            .ok_or_else(|| format!("T_x of {x:?} is not terminal"))
                    })
                    .collect::<std::result::Result<Vec<_>, String>>()?;
                check_order_isomorphism(lat.lattice.order(), terminal.lattice.order(), &forward)
                    .map_err(|e| e.to_string())
            })());
            classification.record(classify(&l).map(|_| ()).map_err(|e| e.to_string()));
            duality.record(
                duality_map(&rival_extract(&l))
                    .map(|_| ())
                    .map_err(|e| e.to_string()),
            );
        }
    }
    properties.extend([rival, classification, duality]);

    let mut correspondence = PropertyReport::new("embedding-cover-correspondence");
    let corr_poset_max = max.min(if small { 2 } else { 4 });
    let targets = products_up_to(max.min(5));
    for p in posets.iter().filter(|p| p.len() <= corr_poset_max) {
        for target in &targets {
            correspondence.record(
                enumerate_correspondence(p, target)
                    .map(|_| ())
                    .map_err(|e| format!("{p:?} into {target}: {e}")),
            );
        }
    }
    properties.push(correspondence);

    let samples = if small { 20 } else { 200 };
    let mut rng = oracle::rng(0x5eed);
    let mut max_indep = PropertyReport::new("maximum-independent-lattice");
    let vertex_max = (max + 4).min(7);
    for _ in 0..samples {
        let n = rand::Rng::random_range(&mut rng, 1..=vertex_max);
        let a = oracle::random_digraph(n, 0.25, &mut rng);
        max_indep.record((|| {
            let width = a.width();
            match max_independent_lattice(&a) {
                Err(crate::Error::NoIndependentSets) => {
                    check(width == 0, || "width mismatch".into())
                }
                Err(e) => Err(e.to_string()),
                Ok(m) => {
                    check(m.lattice.is_distributive(), || "not distributive".into())?;
                    let mut brute =
                        oracle::brute_independent_sets(&a, width).map_err(|e| e.to_string())?;
                    let mut fast = independent_sets_d(&a, width)
                        .map_err(|e| e.to_string())?
                        .sets;
                    let mut from_lattice = m.sets.clone();
                    for sets in [&mut brute, &mut fast, &mut from_lattice] {
                        sort_canonical(sets);
                    }
                    check(brute == fast && brute == from_lattice, || {
                        format!("maximum independent sets of {a:?} disagree with brute force")
                    })
                }
            }
        })());
    }
    properties.push(max_indep);

    let mut quotient = PropertyReport::new("condensation-terminal-isomorphism");
    for _ in 0..samples / 2 {
        let d = oracle::random_pointed_preorder(&mut rng);
        quotient.record((|| {
            let map = condensation_map(&d).map_err(|e| e.to_string())?;
            let brute: Vec<VertexSet> = oracle::brute_terminal_sets(&d)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|s| !s.is_empty() && s.len() < d.vertex_count())
                .collect();
            check(brute == map.source.labels, || {
                format!("terminal sets of {d:?} disagree with brute force")
            })
        })());
    }
    properties.push(quotient);

    Ok(VerifyReport { properties })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_listing() {
        let sizes: Vec<Vec<usize>> = products_up_to(3)
            .iter()
            .map(|p| p.sizes().to_vec())
            .collect();
        assert_eq!(
            sizes,
            vec![
                vec![1],
                vec![1, 1],
                vec![1, 1, 1],
                vec![1, 2],
                vec![2],
                vec![2, 1],
                vec![3]
            ]
        );
        assert_eq!(products_up_to(5).len(), 31);
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(Suite::Small, 2).unwrap();
        for p in &report.properties {
            assert!(p.passed(), "{}: {:?}", p.name, p.failures);
            assert!(p.checked > 0, "{} checked nothing", p.name);
        }
    }
}
