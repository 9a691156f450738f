//! Evaluation of the generalized Euler-constant function
//! `γ_{a,b}(z) = Σ_{n≥0} (1/(an+b) − log((an+b+1)/(an+b))) zⁿ`
//! and its first derivative through digit-coefficient series, with
//! independent quadrature and closed-form oracles.

pub mod catalog;
pub mod digits;
pub mod error;
pub mod kernels;
pub mod numerics;
pub mod oracles;
pub mod sequences;
pub mod series_engines;
pub mod verify;

pub use error::{Error, Result};
