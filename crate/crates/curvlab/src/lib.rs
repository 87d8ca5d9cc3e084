//! Algebraic curvature operators on so(n): decompositions, the sharp product,
//! model spaces, symmetry operators, Hessian spectra, the potential flow and
//! explicit constant checks.

// guards written as !(x > 0.0) also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificate;
pub mod curvature;
pub mod error;
pub mod flow;
pub mod io;
pub mod lie;
pub mod models;
pub mod sample;
pub mod shi;
pub mod spectral;
pub mod suite;
pub mod symmetry;

pub use error::{Error, Result};
