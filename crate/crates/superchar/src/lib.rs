//! Exact supercharacter theory for unipotent upper-triangular groups U_n(F_q)
//! and the interpolating pattern groups U_(m).

pub mod chars;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod graph;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod poset;
pub mod reps;
pub mod restrict;

pub use cyclotomic::CycNumber;
pub use error::{Error, Result};
pub use field::{Field, FieldParams, FieldScalar};
pub use matrix::{DualFunctional, Matrix, UnipotentElement};
pub use poset::PatternPoset;
