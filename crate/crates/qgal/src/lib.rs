//! Finite-algebra engine for covering theory of quandles, racks and groups.
//!
//! The crate is organised around a small universal-algebra kernel
//! ([`algebra`]), cubical diagrams of homomorphisms ([`diagram`]), the
//! calculus of higher extensions ([`extension`]), discrete fibrations
//! ([`fibration`]), the Galois-structure instances and covering predicates
//! ([`galois`]), the symmetric characterisation of coverings
//! ([`symmetric`]) and exhaustive small-order catalogs ([`catalog`]).
//!
//! Everything is exact and desk-scale: carriers are dense `0..n` index
//! ranges, operations are table lookups, and all predicates are decided by
//! finite search.

pub mod algebra;
pub mod catalog;
pub mod diagram;
pub mod extension;
pub mod fibration;
pub mod galois;
pub mod report;
pub mod sweeps;
pub mod symmetric;

/// Errors surfaced by the engine.
///
/// `Property` is reserved for situations that would falsify a theorem the
/// engine relies on (e.g. two viewing directions of a cube disagreeing on
/// whether it is an extension). It is never swallowed.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("property violation: {0}")]
    Property(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
