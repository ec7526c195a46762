//! Intrinsic linking of simplicial complexes.
//!
//! Builds the standard intrinsically linked complexes, samples exact generic
//! linear embeddings, computes Z2 linking numbers two independent ways and
//! runs Delta-Y exchanges with sphere-pair transport.

pub mod complex;
pub mod constructions;
pub mod deltay;
pub mod error;
pub mod geometry;
pub mod linking;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
