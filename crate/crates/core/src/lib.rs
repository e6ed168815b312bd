//! # pathinfo-core
//!
//! Coherence versus which-path information in an N-path interferometer.
//!
//! A particle enters an interferometer in the superposition `Σ √p_i |i⟩` and, while
//! inside, imprints a detector state `|η_i⟩` for each path `i`. This crate builds the
//! two reduced density matrices of that joint pure state and computes:
//!
//! - the l₁ coherence `C_l1` and its normalized form `X = C_l1 / N`,
//! - the relative-entropy coherence `S(ρ_diag) − S(ρ)`,
//! - an upper bound on the minimum-error success probability built from pairwise
//!   Helstrom matrices `Λ_ij = p_i ρ_i − p_j ρ_j`,
//! - mutual information between detector label and measurement outcome, the Holevo
//!   quantity, and a search-based lower bound on the accessible information,
//!
//! and checks the two duality relations
//!
//! ```text
//! (P_s − 1/N)² + X² ≤ (1 − 1/N)²
//! C_rel + H(M:D)   ≤ H({p})
//! ```
//!
//! The crate is `no_std` (with `alloc`); the `std` feature is on by default and only
//! affects error-trait plumbing. File formats and the command-line front-end live in
//! the companion `pathinfo-cli` crate.
//!
//! ```
//! use pathinfo_core::{duality, model};
//! use num_complex::Complex64 as C;
//!
//! let config = model::build_config(
//!     &[0.5, 0.5],
//!     &[vec![C::new(1.0, 0.0), C::new(0.0, 0.0)], vec![C::new(0.6, 0.0), C::new(0.8, 0.0)]],
//! )
//! .unwrap();
//! let report = duality::l1_duality_report(&config).unwrap();
//! assert!((report.ps_bound - 0.9).abs() < 1e-12);
//! assert!((report.x - 0.3).abs() < 1e-12);
//! assert!(report.gap_l1.abs() < 1e-12);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod coherence;
pub mod discrimination;
pub mod duality;
mod error;
pub mod information;
pub mod linalg;
mod math;
pub mod model;
pub mod sampling;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default tolerance for Hermiticity, positivity and the duality gaps.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
