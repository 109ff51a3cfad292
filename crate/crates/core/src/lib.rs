//! Exact computations with non-symmetric bilinear forms over Q(i): translation
//! operators and their orbits in dimension 4, quadratic congruences and their
//! translations, and rational sections of families of quadrics.

pub mod bilinear;
pub mod catalog;
pub mod congruence;
pub mod error;
pub mod expr;
pub mod field;
pub mod gallery;
pub mod invariant;
pub mod map;
pub mod matrix;
pub mod model;
pub mod orbit;
pub mod poly;
pub mod random;
pub mod sections;
pub mod selftest;
pub mod unipoly;

pub use error::{Error, Result};
pub use field::{gq, GaussianRational, Surd};
pub use matrix::{Matrix, SquareMatrix};
pub use poly::{proportional, HomPoly};
pub use unipoly::UniPoly;
