//! Finite lattices built by Day doubling: extremality, left modularity,
//! shellability, Galois graphs and exact order dimension.

pub mod bitset;
pub mod coloring;
pub mod dimension;
pub mod doubling;
pub mod error;
pub mod families;
pub mod galois;
pub mod graph;
pub mod iso;
pub mod labelling;
pub mod lattice;
pub mod poset;
pub mod report;
pub mod shelling;
pub mod tafs;
pub mod verify;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use lattice::{are_isomorphic, build_lattice, direct_product, dual, ChainPhi, Lattice};
pub use poset::Poset;
