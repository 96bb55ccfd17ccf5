//! Munn-tree arithmetic for free inverse, free ample and free left ample
//! monoids, with leaf factorization and bounded congruence searches.

pub mod cli;
pub mod congruence;
pub mod counterexample;
pub mod element;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod factorization;
pub mod finitary;
pub mod format;
pub mod retract;
pub mod tree;
pub mod words;

pub use element::{Flavor, MonoidElement};
pub use error::{MunnError, Result};
pub use tree::PrefixClosedSet;
pub use words::{Alphabet, SignedLetter, SignedWord};
