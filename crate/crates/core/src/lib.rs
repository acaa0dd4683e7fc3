//! Isoperimetric profile comparisons for `S² × ℝ²` and a computer-checked
//! lower bound for its Yamabe constant.

pub mod certificate;
pub mod comparison;
pub mod constants;
pub mod cylinder;
pub mod error;
pub mod figures;
pub mod profile;
pub mod quadrature;
pub mod radial;
pub mod roots;
pub mod series;
pub mod small_volume;
pub mod special;
pub mod sphere;
pub mod yamabe;

pub use error::{Error, Result};
