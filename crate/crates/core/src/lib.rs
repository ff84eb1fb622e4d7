//! Exact Farey, Gauss and Mönkemeyer maps on projective simplexes.

pub mod error;
pub mod exactnum;

pub use error::{Error, Result};
pub mod lattice;
pub mod projective;
pub mod cf1d;
pub mod gaussnd;
pub mod analysis;
