//! Constant-depth sorting networks built from k-ary comparators.
//!
//! The crate builds optimal-arity networks of depth 3 and 4, verifies
//! networks through the zero-one principle, and produces checkable lower
//! bounds on the arity of a network's last layer from growing branches of
//! Boolean inputs. The two cube games that drive the depth-3 and depth-4
//! lower bounds are implemented in [`cubes`] and [`cubes2`].

pub mod access;
pub mod cli;
pub mod constructions;
pub mod cubes;
pub mod cubes2;
pub mod error;
pub mod format;
pub mod network;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use network::{Comparator, Layer, Network, Stats, Trace};
