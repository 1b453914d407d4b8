//! Mediator-free cheap-talk equilibrium toolkit.
//!
//! Simulates a protocol in which five or more players realize a correlated
//! equilibrium (complete information) or a communication equilibrium
//! (incomplete information) whose distribution may assign irrational
//! probabilities, without any trusted mediator. Three players decompose
//! and encrypt the target distribution; two relayers derive joint
//! randomness and deliver one-time encrypted recommendations.
//!
//! The crate is organized around the pipeline stages:
//!
//! - [`num`]: exact rationals, fixed-point reals, expression parsing
//! - [`game`]: normal-form and Bayesian games plus equilibrium verifiers
//! - [`decomp`]: convex decomposition of a target into rational distributions
//! - [`partition`]: labeled interval partitions of the unit interval
//! - [`indexing`]: finite index sets realizing rational probabilities
//! - [`codebook`]: one-time encrypted strategy and type labels
//! - [`protocol`]: the message-passing engine and round outcomes
//! - [`audit`]: statistical and structural checks over runs

pub mod audit;
pub mod codebook;
pub mod decomp;
pub mod game;
pub mod indexing;
pub mod num;
pub mod partition;
pub mod protocol;
pub mod report;
pub mod rng;
