//! Dynamics of free-group automorphisms on `F_k` and its boundary.

pub mod automorphisms;
pub mod cli;
pub mod dynamics;
pub mod graphmaps;
pub mod trees;
pub mod words;
