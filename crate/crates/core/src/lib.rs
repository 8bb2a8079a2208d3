//! Exact symbolic computations on flag Pfaffian systems.

pub mod algebra;
pub mod error;
pub mod exterior;
pub mod groupoid;
pub mod isotropy;
pub mod jet;
pub mod models;
pub mod pfaffian;
pub mod sample;
pub mod symmetry;

pub use error::{Error, Result};
