//! Exact computation in the abelian-by-cyclic groups `G(λ) = Z_p[λ^±1] ⋊ Z`, the metabelian
//! groups `M(𝔞)`, and their convergence in the space of marked groups.

pub mod algnum;
pub mod cli;
pub mod laurent;
pub mod limits;
pub mod marking;
pub mod metabelian;
pub mod error;
mod text;

pub use error::{Error, Result};
