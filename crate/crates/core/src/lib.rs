//! Exact computations with group actions, spans, Burnside and Mackey functors, and bisets.

pub mod biset;
pub mod burnside;
pub mod cell;
pub mod config;
pub mod derivator;
pub mod error;
pub mod factorization;
pub mod group;
pub mod groupoid;
pub mod gset;
pub mod io;
pub mod linalg;
pub mod mackey;
pub mod report;
pub mod sample;
pub mod span;

pub use error::{Error, Result};
