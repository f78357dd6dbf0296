//! Qutrit SIC-POVMs and compatibility among quantum states.
//!
//! The crate builds the Hesse SIC and its Weyl-Heisenberg structure, the
//! complete set of mutually unbiased bases obtained from the lines of the
//! 3x3 grid, pure-state conditions in the SIC representation, the discrete
//! Wigner function, post-Peierls compatibility tests with a numerical
//! witness search, and an exact chromatic-number certificate for the
//! orthogonality graph of the 21 SIC and MUB states.

pub mod cli;
pub mod compat;
pub mod contextuality;
pub mod error;
pub mod io;
pub mod mub;
pub mod purity;
pub mod qmath;
pub mod sicgen;
pub mod wigner;

pub use error::{Error, Result};
