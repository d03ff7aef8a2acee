//! Exact spectral-sequence and permutahedron toolkit over prime fields.

pub mod cli;
pub mod couple;
pub mod dk;
pub mod fp;
pub mod homalg;
pub mod io;
pub mod iso;
pub mod perm;
pub mod random;
pub mod simplex_cat;
pub mod simplicial;
pub mod snf;
pub mod spiral;
pub mod sparse;
pub mod sset;
pub mod tot;
pub mod verify;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("exactness failure: {0}")]
    NotExact(String),
    #[error("class dies at page {0}")]
    DiesAt(usize),
}
