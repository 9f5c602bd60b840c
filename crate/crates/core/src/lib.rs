//! Homological algebra over finite-dimensional algebras over prime fields:
//! finitely presented modules, free resolutions, Ext, Auslander-Bridger
//! transposes, Gorenstein projective certification, Gorenstein transposes and
//! certificate-carrying constructions of the exact sequences relating them.

pub mod algebra;
pub mod fpmod;
pub mod gorenstein;
pub mod homology;
pub mod error;
pub mod linalg;
pub mod oracle;

pub use error::{Error, Result};
