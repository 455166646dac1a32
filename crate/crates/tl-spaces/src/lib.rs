//! Exact-arithmetic calculus for the Temperley-Lieb monoid at loop weight 1.
pub mod comb;
pub mod decomp;
pub mod diagram;
pub mod error;
pub mod link_state;
pub mod matrix;
pub mod rep;
pub mod simplicial;
pub mod space;
pub mod stability;

pub use error::{Result, TlError};
