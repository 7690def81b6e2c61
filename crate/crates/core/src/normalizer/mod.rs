//! Maps from a sphere into a wedge, reduced by elementary row operations.

mod oracle;
mod relation;
mod symbol;
mod vector;

use alloc::string::String;
use core::fmt;

pub use oracle::{
    check_against_oracle, enumerate_vectors, legal_moves, oracle_normal_form, orbit, orbit_key,
    transfer_maps, Discrepancy, MAX_STATES, MAX_TARGETS,
};
pub use relation::{compose_relation, compose_with, MapClass};
pub use symbol::GeneratorSymbol;
pub use vector::{MapVector, RowOp, SelfEquivalence};

use crate::catalog::CatalogError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizerError {
    NotComposable,
    IllegalOp,
    NotNormalForm,
    TooLarge,
    LengthMismatch,
    UnresolvedRemainder,
    UnknownGenerator(String),
    Unsupported(String),
    Table(CatalogError),
}

impl From<CatalogError> for NormalizerError {
    fn from(e: CatalogError) -> Self {
        Self::Table(e)
    }
}

impl fmt::Display for NormalizerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotComposable => f.write_str("maps are not composable"),
            Self::IllegalOp => f.write_str("row operation is not legal for these targets"),
            Self::NotNormalForm => f.write_str("vector has more than one nonzero entry"),
            Self::TooLarge => f.write_str("orbit search exceeds its bounds"),
            Self::LengthMismatch => f.write_str("coefficient count does not match the basis"),
            Self::UnresolvedRemainder => {
                f.write_str("vector carries an undischarged Whitehead remainder")
            }
            Self::UnknownGenerator(g) => write!(f, "unknown generator `{g}`"),
            Self::Unsupported(what) => write!(f, "outside the relation table: {what}"),
            Self::Table(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for NormalizerError {}
