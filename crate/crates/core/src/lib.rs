//! Finite idempotent semirings, their spectra, modules and schemes.
//!
//! Every carrier is a dense index range `0..n`. Structures are validated on
//! construction and immutable afterwards.

// table code indexes several arrays with the same element
#![allow(clippy::needless_range_loop)]

pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod guards;
pub mod localization;
pub mod modules;
pub mod order;
pub mod report;
pub mod schemes;
pub mod semiring;
pub mod spectrum;
pub mod structure;
pub mod text;
pub mod topology;
pub mod verify;

pub use error::{Elem, Error, Law, Result, Verdict, Violation};
pub use exec::Execution;
pub use guards::Guards;
pub use order::FinCim;
pub use semiring::{FinSemiring, SemiringHom};
pub use topology::FinTop;
