//! Fixture generation, seeded search campaigns and serialization.

pub mod serial;
pub mod fixtures;
pub mod search;
pub mod suite;
