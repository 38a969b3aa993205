//! Exact computations in the double Burnside category of finite p-groups.

pub mod bisets;
pub mod burnside;
pub mod error;
pub mod genetics;
pub mod groups;
pub mod io;
pub mod rational;
pub mod units;
pub mod zlin;

pub use error::{Error, Result};
