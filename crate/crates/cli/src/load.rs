use std::fs;
use std::path::Path;

use distlat::embeddings::LooseChainCover;
use distlat::text::{parse_cover, parse_digraph, parse_intervals, parse_lattice, parse_sublattice};
use distlat::{ChainProduct, Digraph, IntervalFamily, Lattice, Poset, Sublattice};

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path) -> impl Fn(distlat::Error) -> Failure + '_ {
    move |e| Failure::from(e).located(path)
}

pub fn digraph(path: &Path) -> Result<Digraph, Failure> {
    parse_digraph(&read(path)?).map_err(located(path))
}

/// A poset file is a digraph file whose arcs `u v` read `u >= v`; loops and
/// implied arcs may be left out.
pub fn poset(path: &Path) -> Result<Poset, Failure> {
    let d = digraph(path)?;
    Poset::new(d.transitive_closure().reflexive_closure()).map_err(located(path))
}

pub fn lattice(path: &Path) -> Result<Lattice, Failure> {
    parse_lattice(&read(path)?).map_err(located(path))
}

pub fn intervals(path: &Path, product: Option<ChainProduct>) -> Result<IntervalFamily, Failure> {
    parse_intervals(&read(path)?, product).map_err(located(path))
}

pub fn sublattice(path: &Path, product: Option<ChainProduct>) -> Result<Sublattice, Failure> {
    parse_sublattice(&read(path)?, product).map_err(located(path))
}

/// The poset named in a cover file is resolved next to the cover file.
pub fn cover(path: &Path) -> Result<LooseChainCover, Failure> {
    let spec = parse_cover(&read(path)?).map_err(located(path))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let p = poset(&base.join(&spec.poset_file))?;
    LooseChainCover::new(p, spec.chains).map_err(located(path))
}
