//! Repetition-aware text indexes.
//!
//! The crate combines three compressed views of a terminated text:
//!
//! - [`rlbwt`]: the Burrows-Wheeler transform stored as its runs, with
//!   rank, select and backward search;
//! - [`lz77`]: the greedy self-referential Lempel-Ziv parse;
//! - [`cdawg`]: the compact directed acyclic word graph, built as the
//!   minimization of the suffix tree and annotated with BWT intervals.
//!
//! On top of them sit two pattern-locating indexes ([`lzindex`], which
//! finds primary occurrences with a grid over phrase boundaries and the rest
//! by copy propagation, and [`cdawgindex`], which reports by blind search in
//! the CDAWG) and a suffix-tree representation ([`cdawgst`]) that supports
//! navigation, matching statistics and bidirectional extension.
//!
//! [`oracles`] holds the brute-force references every structure is checked
//! against.

pub mod cdawg;
pub mod cdawgindex;
pub mod cdawgst;
pub mod corpus;
pub mod error;
pub mod interval;
pub mod intervalmap;
pub mod lz77;
pub mod lzindex;
pub mod measures;
pub mod oracles;
pub mod rangerep;
pub mod rlbwt;
pub mod selftest;
pub mod serial;
pub mod textio;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use interval::Interval;
pub use textio::{Symbol, Text, TERMINATOR};
