//! Graph homomorphism and minimum-cost homomorphism via valued CSPs.
//!
//! The crate reduces homomorphism problems to valued constraint satisfaction
//! instances, solves those with an exact Sherali-Adams relaxation and a
//! self-reduction loop, and builds and checks the persistent majority
//! triples that make the relaxation exact.

pub mod budget;
pub mod error;
pub mod graph;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod sa;
pub mod solvers;
pub mod vcsp;
mod text;

pub use budget::Budgets;
pub use error::{Error, ParseError, Result};
pub use rational::{ExtRational, Rational};
