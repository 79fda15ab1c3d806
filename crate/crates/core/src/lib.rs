//! Exact knot Floer homology of twisted Whitehead doubles.
//!
//! Companion knots enter as finite filtered complexes ([`FilteredKnotComplex`]),
//! are reduced to their filtration homologies ([`CompanionData`]), and every
//! quantity about their doubles is computed from those over the integers.

pub mod algebra;
pub mod complex;
pub mod doubling;
pub mod error;
pub mod format;
pub mod knot_db;
pub mod meridian;
pub mod skein;
pub mod surgery;
pub mod verify;

pub use algebra::{GradedGroup, Grading, IntegerMatrix, LaurentPoly};
pub use complex::{CompanionData, FilteredKnotComplex, Generator};
pub use doubling::{Clasp, GenusOneHFK};
pub use error::{Error, Result};
pub use knot_db::KnotRecord;
