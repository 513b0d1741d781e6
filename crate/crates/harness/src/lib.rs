//! Experiments: tactical fixtures, failure-rate curves, iteration-speed
//! benchmarks and round-robin matches.

pub mod bench;
pub mod fixtures;
pub mod oracle;
pub mod tactics;
pub mod tournament;
