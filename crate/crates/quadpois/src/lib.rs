//! Exact-arithmetic computer algebra for quadratic Poisson structures built
//! from classical r-matrices on gl(n), truncated deformation quantization,
//! and machine-checked case certificates.

pub mod exterior;
pub mod liealg;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod series;
