//! Construction and verification of GHZ paradoxes for many qudits.
//!
//! The crate is layered bottom-up:
//!
//! - [`weyl`]: exact phase-tracked arithmetic on generalized Pauli monomials.
//! - [`paradox`]: operator tables and the paradox verdict.
//! - [`family`]: parametrized families of paradoxes and the built-in catalog.
//! - [`genuine`]: genuinely multipartite / genuinely d-dimensional checks.
//! - [`oracle`]: dense complex matrices as an independent numerical ground truth.
//! - [`lhv`]: value-assignment systems over `Z_d` and their infeasibility proofs.
//! - [`search`]: enumeration, canonical forms and the parity/party-count scan.
//! - [`document`]: the JSON table format and the plain-text table layout.

pub mod document;
pub mod error;
pub mod family;
pub mod genuine;
pub mod lhv;
pub mod oracle;
pub mod paradox;
pub mod search;
pub mod weyl;

pub use error::{Error, Result};
pub use paradox::{verify, Base, EntryWord, ParadoxTable, Verdict};
pub use weyl::{Dimension, Monomial, PhaseExp, TensorMonomial};
