//! Exact arithmetic for generalized q-Apéry polynomials and executable
//! checks of their divisibility properties.
//!
//! The crate is organized bottom-up:
//!
//! - [`arith`]: Laurent polynomials in `q` over big integers, polynomials in
//!   `x` over them, and exact division by monic divisors.
//! - [`qcomb`]: q-integers, Gaussian binomials (negative upper index
//!   included), cyclotomic polynomials, and the q-Lucas congruence.
//! - [`apery`]: the Apéry, Delannoy and q-Apéry families, the reduced
//!   `B`-polynomials, and the `η(2z)⁴η(4z)⁴` coefficients.
//! - [`verify`]: one report-producing check per congruence or identity.

pub mod apery;
pub mod arith;
pub mod error;
pub mod qcomb;
pub mod verify;

pub use arith::{IntPoly, IntXPoly, LaurentPoly, XPoly};
pub use error::{Error, Result};
pub use verify::{Sign, Status, TheoremId, VerificationReport, Verifier};
