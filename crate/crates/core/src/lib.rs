//! Finite patches of polygonal tilings, explicit 1-2-3 edge labellings, and
//! mechanical certification of the local arguments behind them.
//!
//! The library builds patches of the chair, half-hex, domino-variant,
//! Ammann-Beenker (rhomb-triangle and rhomb-square), Penrose rhomb,
//! non-pinwheel and pinwheel tilings as well as the periodic square, triangle
//! and hexagon tilings; applies the catalogue of explicit edge labellings with
//! weights in {1,2,3}; verifies the vertex-colouring property on closed
//! vertices; and re-derives the collar / supertile / vertex-configuration
//! arguments as machine checks. A constructive pipeline produces fully
//! periodic labellings for arbitrary periodic graphs via a finite factor
//! graph and a backtracking 1-2-3 solver.

pub mod certify;
pub mod configs;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod patch;
pub mod patchio;
pub mod periodic;
pub mod render;
pub mod rules;
pub mod solver;
pub mod tilings;

pub use error::{Error, Result};
