//! Computational companion for the Waring-Goldbach problem with
//! Piatetski-Shapiro primes.
//!
//! The crate evaluates the objects that appear in a circle-method treatment of
//! `N = p_1^k + ... + p_s^k` with every `p_i` drawn from the Piatetski-Shapiro
//! primes `{ floor(m^c) prime : m >= 1 }`, `1 < c < 2`:
//!
//! - [`ps_core`]: certified `floor(m^c)`, membership, enumeration.
//! - [`primes`]: sieves, deterministic Miller-Rabin, factorization.
//! - [`local_arith`]: `K(k)`, complete sums `S(a,q)`, `S_m(q)`, truncated
//!   singular series and the usual multiplicative functions.
//! - [`expsums`]: Weyl sums, the PS and weighted prime sums, Vaaler's
//!   trigonometric approximation of the sawtooth, Vaughan's identity and the
//!   bound-expression harness.
//! - [`circle_method`]: major arcs, the oscillatory integrals `I`, `J`, `v`,
//!   the main term and the exponent bookkeeping (`2t`, `nu`, admissible `c`).
//! - [`repcount`]: exact representation counts and Diophantine moment counts.

pub mod circle_method;
pub mod error;
pub mod expsums;
pub mod local_arith;
pub mod partition;
pub mod primes;
pub mod ps_core;
pub mod rational;
pub mod repcount;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use ps_core::{CertifiedFloor, PsParams};
