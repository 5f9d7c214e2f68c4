//! Finite distributive lattices and their representations: downsets of
//! posets, terminal sets of digraphs, independent sets, sublattices of
//! products of chains and embeddings into such products.

pub mod digraph;
pub mod embeddings;
pub mod error;
pub mod intervals;
pub mod lattice;
pub mod oracle;
pub mod representations;
pub mod text;
pub mod verify;

pub use digraph::{Digraph, Poset, QuotientMap, VertexSet};
pub use embeddings::{Classification, Embedding, LooseChainCover, PointedVertex};
pub use error::{Bound, Error, Result};
pub use intervals::{ChainProduct, Interval, IntervalFamily, Sublattice};
pub use lattice::{IrreduciblePoset, LabeledLattice, Lattice};
