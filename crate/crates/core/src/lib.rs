//! Distinct squares in circular words.
//!
//! * [`word`]: words, rotations, periods, primitivity, canonical rotations.
//! * [`squares`]: exact distinct-square counting, rightmost occurrences and
//!   FS-double squares.
//! * [`family`]: the `f_k` lower-bound family and its census.
//! * [`bounds`] and [`verify`]: lemma checkers and sweeps.
//! * [`search`] and [`campaign`]: exhaustive necklace search and resumable
//!   CSV campaigns.
//!
//! Positions are 0-based throughout.

pub mod bounds;
pub mod campaign;
pub mod corpus;
pub mod error;
pub mod family;
pub mod rational;
pub mod search;
pub mod squares;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use word::{make_word, CircularWord, Word};
