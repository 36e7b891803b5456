//! The rooted-tree and graph bialgebras.

pub mod trees;
pub mod graphs;
