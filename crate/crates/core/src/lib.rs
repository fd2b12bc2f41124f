//! Exponent bounds for uniform rational approximation and a parametric
//! geometry of numbers simulator.

pub mod bounds;
pub mod numerics;
pub mod pgn;
