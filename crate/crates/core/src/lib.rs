// `!(x <= tol)` is used on purpose so that NaN lands on the failing side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod campaign;
pub mod commands;
pub mod cubic;
pub mod error;
pub mod extended;
pub mod figure;
pub mod geometry;
pub mod moebius;
pub mod variety;

pub use cubic::Cubic;
pub use error::{Error, Result};
pub use extended::ExtendedComplex;
pub use moebius::Moebius;
pub use variety::{BiSolutionFan, SolutionTriple};
