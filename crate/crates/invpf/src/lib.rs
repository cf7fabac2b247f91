//! Exact Picard-Fuchs operators for one-parameter deformations
//! `f = g + s·x₁⋯xₙ` of invertible Calabi-Yau polynomials `g`.
//!
//! The closed form lives in [`pf_formula`]; [`griffiths_dwork`] recomputes
//! the operator from scratch by pole reduction over Q(s) and serves as an
//! independent check.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod griffiths_dwork;
pub mod invertible;
pub mod milnor;
pub mod pf_formula;
pub mod poly;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
