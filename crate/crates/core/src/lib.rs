//! Exact reconstruction and machine verification of the two-qubit
//! "kaleidoscopes": the fifteen Pauli observables and their ten magic
//! squares, the sixty eigenstates and 105 orthogonal tetrads, the dual
//! Reye configurations, and all 1120 parity proofs of the
//! Bell-Kochen-Specker theorem they contain.
//!
//! Everything is computed in exact integer arithmetic and cross-checked
//! against the reference tables in [`golden`].

pub mod apparitions;
mod context;
pub mod designs;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod golden;
pub mod hexagon;
pub mod matrix;
pub mod pauli;
pub mod records;
pub mod states;
pub mod transforms;
pub mod verify;

pub use context::Kaleidoscope;
pub use error::{Error, Result};

/// State number `1..=60` in the eigenstate table.
pub type Label = u8;
