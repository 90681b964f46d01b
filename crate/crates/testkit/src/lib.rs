//! Reference computations the sampler's tests check against. Nothing here
//! depends on `sggmix`, so a bug there cannot leak into its own oracle.

pub mod partitions;
pub mod quad;
pub mod stats;
