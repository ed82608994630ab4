//! Mixed Hodge structure linear algebra in coordinates.
//!
//! Filtrations are spanning sets in a fixed ambient `C^n`; the real structure is a basis
//! of real generators, one list per weight. Extension classes of `𝟙` by `𝟙(n)` are
//! Carlson numbers `s_F(1) − s_W(1)`, read in units of `(2πi)^n`.

use thiserror::Error;

pub mod carlson;
pub mod criteria;
pub mod linalg;
pub mod scholl;
pub mod structure;
pub mod synthetic;

pub use carlson::{carlson_class, carlson_class_with_section, tate_extension, TateExtClass};
pub use criteria::{
    conjugacy, nonvanishing_check, pm_extension_from_sections, prop78_from_sections, triviality_pm,
    NonvanishingResult, PmExtension, PmTriviality, Prop78Data, Verdict,
};
pub use linalg::Subspace;
pub use scholl::{
    carlson_along, extension_along, filtration_sections, pairing_value, scholl_pairing,
    split_weight_minus1, w_splits, FiltrationSections, PairingLabels, WeightSplit,
};
pub use structure::{MhsFixture, MixedHSC};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MhsError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("section error: {0}")]
    Section(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("numerical precision: {0}")]
    Precision(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}
