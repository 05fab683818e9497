//! Exact computer algebra for trigonal curves.

pub mod algebra;
pub mod bundle;
pub mod chow;
pub mod cover;
pub mod cubic;
pub mod error;
pub mod verify;

pub use error::{Error, Result};
