//! Frobenius functors, Verlinde fusion and nilpotent-operator functors over
//! prime fields.

pub mod cli;
pub mod error;
pub mod exactla;
pub mod frobenius;
pub mod nilmod;
pub mod repcat;
pub mod series;
pub mod verlinde;

pub use error::{Error, Result};
