//! Exact computations with finite-dimensional Poisson algebras over ℚ:
//! FGV cohomology, abelian extensions and Wells maps, deformation maps in
//! proto-twilled Poisson algebras, and their deformation theory.

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod extension;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod operators;
pub mod prototwilled;
pub mod report;

pub use algebra::{Bilinear, PoissonAlgebra, Representation};
pub use error::{Error, Result};
pub use matrix::{Matrix, Scalar};
pub use report::{ValidationReport, Violation};
