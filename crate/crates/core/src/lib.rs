//! Posets of layers of integral hyperplane and toric arrangements.

pub mod arrangement;
pub mod audit;
pub mod budget;
pub mod classify;
pub mod corpus;
pub mod fixtures;
pub mod geometry;
pub mod intlat;
pub mod poset;
pub mod rootsys;
