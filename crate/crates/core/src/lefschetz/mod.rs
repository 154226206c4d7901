//! `sl2` representation content, Jordan censuses of graded nilpotent
//! operators, and the two routes to the genus-`g` invariant.

mod bispin;
mod census;
mod nilpotent;
mod spin;

pub use bispin::{bispin_tensor, census_from_bispin, hst_decompose, hst_ng, hst_ng_range, BispinContent};
pub use census::{alt_ng, JordanCensus};
pub use nilpotent::{jordan_census, spin_from_lefschetz, GradedNilpotent};
pub use spin::{i_g, i_g_table, spin_decompose, tensor, GradedDims, SpinMultiset};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("not an sl2 representation: {0}")]
    NotRepresentation(String),
    #[error("virtual input: every multiplicity must be nonnegative")]
    VirtualInput,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}
