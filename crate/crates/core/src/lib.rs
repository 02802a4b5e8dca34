//! Exact reduction-theory computations for Harder–Narasimhan stratifications
//! of moduli of `G`-bundles, carried out entirely on the coweight side.

pub mod cli;
pub mod coneorder;
pub mod error;
pub mod langlands;
pub mod linalg;
pub mod posettop;
pub mod rational;
pub mod rootdata;
pub mod sampling;
pub mod strata;
pub mod vanishing;

pub use error::{Error, Result};
pub use rational::Rational;
pub use rootdata::{Coweight, GroupData, GroupSpec, NodeSet, Root};
