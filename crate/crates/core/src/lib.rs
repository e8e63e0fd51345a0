//! Composition operators on the weighted Bergman spaces `A²_β` of the unit
//! disk: truncated power series, linear fractional self-maps, operator
//! matrices in the orthonormal monomial basis, and numerical diagnostics for
//! complex symmetry.

pub mod cli;
pub mod csym;
pub mod dynamics;
pub mod error;
pub mod lft;
pub mod operators;
pub mod output;
pub mod series;
pub mod space;

pub use num_complex::Complex64;

pub use csym::{ConjugationMatrix, GramTable};
pub use error::{Error, Result};
pub use lft::{Lft, LftClass, LftKind};
pub use operators::OperatorMatrix;
pub use series::TruncatedSeries;
pub use space::SpaceParams;
