//! Generating functions, singularity analysis and brute-force checks for
//! series-parallel graphs with marked triangles, 4-cycles and girth bounds.

pub mod asymptotics;
pub mod error;
pub mod oracle;
pub mod ring;
pub mod series;
pub mod systems;
pub mod verify;

pub use error::{Error, Result};
