//! Laplacian spectra, spanning-tree counts and dashings of hypercube
//! quotients by doubly even binary codes.

pub mod cli;
pub mod codes;
pub mod counting;
pub mod dashing;
pub mod error;
mod gf2;
pub mod graph;
pub mod spectrum;
pub mod thermo;

pub use codes::{parse_code, Codeword, GeneratorMatrix};
pub use counting::{baobab_bounds, tree_count_from_spectrum, BaobabBounds, BigCount};
pub use error::{Error, Result};
pub use graph::QuotientGraph;
pub use spectrum::{spectrum_closed_form, SpectrumTable};
