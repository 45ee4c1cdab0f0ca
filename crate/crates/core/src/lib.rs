//! Kostant games on Dynkin diagrams, strings of coroots, and the factored
//! Hilbert polynomial of generalized flag varieties `G/P`.
//!
//! The pipeline runs from Cartan data ([`root_system`]) through the
//! (modified) Kostant game ([`kostant_game`]), minimal coset
//! representatives ([`weyl_words`]) and good strings of coroots
//! ([`coroot_strings`]) to the Hilbert polynomial and its vanishing box
//! ([`hilbert`]). [`pointed_box`] holds the falling-factorial degree bound,
//! generic over the scalar field.

pub mod coroot_strings;
pub mod error;
pub mod hilbert;
pub mod kostant_game;
pub mod pointed_box;
pub mod report;
pub mod root_system;
pub mod scalar;
pub mod weyl_words;

pub use error::{Error, Result};
pub use root_system::{
    CartanData, CorootVec, Family, LieType, ParabolicSubset, RootData, RootSystem, RootVec,
};

/// Exact scalar used throughout.
pub type Rational = num_rational::BigRational;
pub type ExactBoxCoeffs = pointed_box::BoxCoeffs<Rational>;
pub type FloatBoxCoeffs = pointed_box::BoxCoeffs<f64>;
