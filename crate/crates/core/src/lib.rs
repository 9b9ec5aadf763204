//! Exact slope calculus on the Farey graph for tight contact structures on
//! solid tori and thickened tori, plus a rule engine for knot widths.

pub mod classify;
pub mod cli;
pub mod error;
pub mod farey;
pub mod knot;
pub mod rational;
pub mod slope;
pub mod splitting;

pub use error::{Error, Result};
pub use rational::Rational;
pub use slope::{Slope, Unimodular};
