//! Curvature and mass computations for asymptotically hyperbolic graphs.
//!
//! A graph is the hypersurface `{s = f(x)}` of `H^n x R` carrying the metric
//! `b + V^2 ds^2` with `V = cosh r`, which is a model of `H^{n+1}`. The crate
//! evaluates the induced metric, second fundamental form and scalar curvature
//! of such graphs, the mass functional at infinity, boundary integrals over
//! star-shaped domains of `H^n`, and the anti-de Sitter Schwarzschild family
//! that realizes the equality cases.
//!
//! Everything here is pure computation on `f64`. The crate is `no_std` and
//! only needs `alloc` for quadrature node tables.

#![no_std]
// `!(x > 0.0)` is also true for NaN, which these checks rely on.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod fmath;

pub mod ads;
pub mod boundary;
pub mod calculus;
pub mod graph;
pub mod hyperbolic;
pub mod linalg;
pub mod mass;
pub mod matrix;

pub use error::{Error, Result};
pub use hyperbolic::{Dimension, PolarPoint};
