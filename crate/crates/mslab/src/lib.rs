//! mslab: an exact-arithmetic laboratory for the Manickam-Singhi
//! problem.
//!
//! A weight function assigns n real values with nonnegative total sum to
//! the indices 1..n; phi(f,d) counts the d-subsets whose values sum
//! nonnegatively, and gamma(n,d,r) is the minimum of phi over functions
//! with exactly r nonnegative values. This crate computes phi by
//! exhaustive enumeration over exact rationals, builds the extremal
//! functions and pairings of almost-complementaries that settle gamma in
//! two regimes, verifies the accompanying lower-bound certificates, and
//! searches for minimizers at desk scale.
//!
//! Modules follow the subject matter:
//!
//! - [`rational`]: exact scalar arithmetic; every sign decision is exact.
//! - [`combinatorics`]: binomials, lexicographic q-string enumeration,
//!   complement families on 2q+1 elements.
//! - [`weights`]: weight functions, the phi counter, bar notation, and
//!   the plain-text file format.
//! - [`bounds`]: the parameter b(r), the f_alpha construction, its
//!   closed-form count, and the catalogue of settled gamma values.
//! - [`pac`]: greedy and matching-based pairings of
//!   almost-complementaries, with verification.
//! - [`certificates`]: the row-configuration and partition-system
//!   lower-bound witnesses.
//! - [`search`]: alpha sweeps and random-restart descent that bracket
//!   gamma and psi from above.
//! - [`cache`]: JSON-lines result cache.
//! - [`verify`]: the fixed reproduction suite behind `verify-paper`.

pub mod bounds;
pub mod cache;
pub mod certificates;
pub mod combinatorics;
pub mod error;
pub mod pac;
pub mod rational;
pub mod search;
pub mod verify;
pub mod weights;

pub use combinatorics::QString;
pub use error::{Error, Result};
pub use rational::Rational;
pub use weights::WeightFunction;
