//! Maximal Newton points of affine Schubert cells.
//!
//! The crate computes `ν_x` for `x = t^{vλ} w` in an affine Weyl group from
//! a shortest path in the quantum Bruhat graph, and checks the answer
//! against a brute-force maximum over the Bruhat interval below `x`.

pub mod affine;
pub mod cli;
pub mod error;
pub mod maxnewton;
pub mod qbg;
pub mod root_data;
pub mod weyl;

pub use error::{Error, Result};
