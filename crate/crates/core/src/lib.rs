//! Unitary-equivariant and permutation-invariant quantum channels from `m`
//! to `n` qudits: classification of the extremal points, construction of their
//! Choi matrices, a streamed path-based executor with resource accounting, and
//! independent brute-force oracles.

pub mod applications;
pub mod channels;
pub mod combinatorics;
pub mod error;
pub mod gt_paths;
pub mod io;
pub mod rep_kernel;
pub mod streaming;
pub mod verify;

pub use combinatorics::{LrQuery, Staircase};
pub use error::{Error, Result};
