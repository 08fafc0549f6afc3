pub mod definable;
pub mod error;
pub mod fol;
pub mod group;
pub mod interp;
pub mod nonstd;
pub mod rings;
pub mod suites;

pub use error::{Error, Result};
