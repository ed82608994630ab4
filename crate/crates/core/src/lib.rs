//! Computational toolkit for Hecke characters of imaginary quadratic fields and the
//! boundary cohomology of Picard modular surfaces.
//!
//! Modules, bottom up: [`field`] and [`characters`] for exact arithmetic,
//! [`lfun`] for L-function numerics, [`weyl`] and [`hodge`] for root-system and
//! Hodge-type bookkeeping, [`mhs`] for mixed Hodge structure linear algebra and
//! [`eis`] for the Eisenstein pole analysis.

pub mod characters;
pub mod cyclotomic;
pub mod field;
pub mod hodge;
pub mod lfun;
pub mod eis;
pub mod mhs;
pub mod numtheory;
pub mod weyl;
