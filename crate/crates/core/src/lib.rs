//! Random geometric graphs in bounded, possibly obstructed domains.
//!
//! The crate pairs closed-form predictions (full-connection probability,
//! continuum betweenness, expected geodesic counts) with a reproducible Monte
//! Carlo harness that measures the same quantities on sampled graphs.

pub mod analytic;
pub mod centrality;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod montecarlo;
pub mod percolation;
pub mod pointprocess;
pub mod quadrature;
pub mod rng;
pub mod union_find;

pub use error::{Error, Result};
pub use geometry::{Domain, Obstacle, Point, Shape};
pub use pointprocess::PointSet;
pub use rng::RandomState;
