//! Desk-scale laboratory for uncloneable encryption.
//!
//! The crate simulates quantum encryption of classical messages exactly
//! (dense density matrices, CPTP maps, POVMs) and pairs the schemes with the
//! machinery needed to measure them:
//!
//! - [`quantum`] — states, channels, measurements, and real-orthogonal basis
//!   families (Wiesner/BB84 and Haar-random generalizations).
//! - [`conjugate`] — the one-time conjugate encryption scheme: encode `m ⊕ r`
//!   in the basis selected by `θ`, decrypt by measuring in that basis.
//! - [`harness`] — the three-phase cloning experiment (split, reveal, guess),
//!   evaluated exactly by enumeration or by Monte Carlo, plus
//!   monogamy-of-entanglement game values and a seesaw optimizer.
//! - [`attacks`] — the equatorial (phase-covariant) cloner and the strategies
//!   built from it.
//! - [`ske`] — PRF-based symmetric encryption with the fake-key property and
//!   an exhaustive total-variation-distance oracle for it.
//! - [`fe`] — single-key public-key functional encryption from a toy LWE
//!   scheme and garbled circuits, plus a trusted reference backend.
//! - [`private_ue`] / [`public_ue`] — reusable uncloneable encryption built
//!   by composition, with the hybrid experiments and reduction wrappers run
//!   as executable, enumerable experiments.
//!
//! Everything is sized for exact evaluation at a desk: at most ~6 qubits,
//! tiny PRF tables, and enumeration budgets checked before running.

pub mod attacks;
pub mod bits;
pub mod conjugate;
pub mod fe;
pub mod harness;
pub mod private_ue;
pub mod public_ue;
pub mod quantum;
pub mod ske;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("decode failure: {0}")]
    Decode(String),

    #[error("garbled-row decryption failure: {0}")]
    GarbledRow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
