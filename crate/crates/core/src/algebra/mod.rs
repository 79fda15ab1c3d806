//! Exact graded abelian group arithmetic over the integers.

mod group;
mod homology;
mod laurent;
mod matrix;

pub use group::{combine, grading, parse_grading, GradedGroup, Grading, Summand};
pub use homology::{chain_homology, check_differential, euler_poly};
pub use laurent::LaurentPoly;
pub use matrix::{smith_normal_form, BigMatrix, IntegerMatrix, SmithForm};
