//! Certifying diagrammatic reducibility, DR(2) and local indicability of
//! finite 2-complexes and labeled oriented trees.

pub mod caps;
pub mod complex;
pub mod curvature;
pub mod cycles;
pub mod diagram;
pub mod dr;
pub mod dsu;
pub mod io;
pub mod lot;
pub mod pieces;
pub mod rational;
pub mod verdict;

pub use complex::{build_complex, RawComplex, TwoComplex};
pub use rational::Q;
