//! Entanglement harvesting by a pair of Gaussian-switched Unruh-DeWitt
//! detectors coupled to a massless scalar field, in Minkowski space and in
//! its flat quotients by a translation or a translation-plus-reflection.

pub mod error;
pub mod special_functions;

pub use error::{HarvestError, Result};
pub use num_complex::Complex64;
pub mod geometry;
pub mod detector_matrix;
pub mod wightman_oracle;
pub mod entanglement;
pub mod cli;
