//! Symbolic calculator for complex-multiplication Breuil-Kisin-Fargues
//! modules over p-adic fields.

pub mod bkf;
pub mod cli;
pub mod cmtype;
pub mod corpus;
pub mod drlattice;
pub mod error;
pub mod localfield;
pub mod padic;
pub mod torus;

pub use error::{Error, Result};
