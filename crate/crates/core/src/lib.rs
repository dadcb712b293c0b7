//! Exact combinatorics of linear systems.
//!
//! A linear system is a set of points with lines that pairwise share at most
//! one point. This crate builds such systems (projective planes over finite
//! fields, triangular systems, pendant extensions), computes their
//! transversal, domination and 2-packing numbers exactly, and checks the
//! structural claims tying systems of rank `q + 2` with domination number
//! `q + 1` to subsystems of PG(2,q).

pub mod bitset;
pub mod caps;
pub mod constructions;
pub mod error;
pub mod field;
pub mod geometry;
pub mod io;
pub mod iso;
pub mod report;
pub mod solvers;
pub mod system;

pub use caps::Caps;
pub use error::{Error, Result};
pub use system::{fano, DegreeProfile, LinearSystem};
