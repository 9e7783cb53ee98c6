//! Exact arithmetic over rational functions of the base coordinates.

mod matrix;
mod poly;
mod ratfn;

pub use matrix::ScalarMatrix;
pub use poly::{Monomial, Poly};
pub use ratfn::ScalarFn;
