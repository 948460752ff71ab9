//! Exact enumeration of rooted one-face maps.
//!
//! `A(n, g)` counts rooted one-face maps with `n` edges on the orientable
//! surface of genus `g`. This crate computes it through several closed forms
//! and two recurrences, checks all of them against exhaustive enumeration of
//! permutation encodings, and certifies the sign-reversing involutions and
//! shift-operator identities that connect the formulas.
//!
//! Everything is exact: integers are [`BigInt`], rationals are [`BigRational`].

pub mod closed_forms;
pub mod combinatorics;
mod error;
pub mod involution_lab;
pub mod maps_oracle;
pub mod recurrences;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
