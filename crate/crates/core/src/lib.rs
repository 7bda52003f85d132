//! Exact construction of degenerate Bell, Stirling, geometric, Bernoulli and
//! Eulerian families, with every relation among them available as an
//! executable exact check.

pub mod algebra;
pub mod cli;
pub mod families;
pub mod identities;
