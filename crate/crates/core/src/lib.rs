//! Exact computation of the mirror Landau-Ginzburg Hodge data of a smooth
//! projective toric manifold from its fan.

pub mod cli;
pub mod error;
pub mod fan;
pub mod gaussmanin;
pub mod hodge;
pub mod lattice;
pub mod model;
pub mod monoidring;
pub mod moricone;
pub mod primitive;
pub mod scalars;

pub use error::{Error, Result};
