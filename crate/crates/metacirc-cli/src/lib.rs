//! Bundled reference data for the `metacirc` binary: named graph specs,
//! transcribed edge fixtures, weight-distribution tables, and the derived
//! quantum parameter rows. Lives in a library target so integration tests
//! can check the binary against the same data it ships with.

pub mod fixtures;
