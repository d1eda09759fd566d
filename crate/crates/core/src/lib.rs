//! Digital images, their subdivisions, and canonical covering maps of subdivisions.
//!
//! A digital image is a finite subset of `Z^n` where two points are adjacent when they
//! differ by at most one in every coordinate. Subdividing by `k` replaces each point by a
//! `k x ... x k` block, and the standard projection collapses each block back to its point.
//! Given a map `f: X -> Y`, a cover is a continuous map between subdivisions that commutes
//! with the standard projections. This crate builds canonical covers for maps whose
//! domain is one- or two-dimensional and checks them.

pub mod cli;
pub mod cover1d;
pub mod cover2d;
pub mod digital;
pub mod error;
pub mod homotopy;
pub mod oracle;
pub mod subdivision;

pub use digital::{adjacent, compose, DigitalImage, DigitalMap, LatticePoint};
pub use error::{Error, Result};
