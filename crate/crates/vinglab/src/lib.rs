//! vinglab: an exact census and verification engine for straight-edge
//! graphs over labeled planar point sets.
//!
//! The library enumerates plane graphs, triangulations, and k-quasi-plane
//! graphs over a point set in general position, computes per-vertex "ving"
//! statistics across a census, replays cross-graph charge flows, and
//! recomputes the closed-form constants behind the counting bounds. All
//! combinatorial quantities are exact (integers or rationals); floating
//! point appears only in the interval-tracked evaluation of the analytic
//! base function and in root finding.

pub mod bounds;
pub mod census;
pub mod charging;
pub mod geom;
pub mod harness;
pub mod ratio;
pub mod vings;
