pub mod error;
pub mod extf64;
pub mod hermite;
pub mod numerics;
pub mod pade;
pub mod rows;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
