//! Exact computation of zeta functions attached to smooth projective curves
//! over finite fields.
//!
//! Everything is carried out in the variable `t = q^{-s}` with arbitrary
//! precision rational coefficients, so equalities of rational functions are
//! decided exactly, never within a floating point tolerance.  Floating point
//! enters only where it genuinely must: numeric root finding for Riemann
//! hypothesis probes and gap reports of truncated series oracles.
//!
//! The layers, bottom up:
//!
//! * [`exact`]: dense polynomials, Laurent polynomials and canonical rational
//!   functions over `BigRational`, together with the small toolkit the zeta
//!   assemblies need (reciprocal substitution `t -> 1/(qt)`, geometric series,
//!   Newton power sums, functional equation pairing, numeric roots, products
//!   over roots of unity).
//! * [`curve`]: curve data given by a Weil numerator, brute-force point
//!   counting on plane and hyperelliptic models, recovery of the numerator
//!   from counts, and the abelian zeta function with its effective divisor
//!   counts and Picard sums.
//! * [`mass`]: total masses of rank-r bundles, an independent split-bundle
//!   oracle on the projective line, and semistable masses obtained by
//!   inverting the Harder-Narasimhan stratification.
//! * [`restricted`]: the symmetrized zeta function of a fixed-determinant
//!   family, assembled from a finite window of weighted counts plus a closed
//!   boundary bracket, with exact functional equation and residue checks.
//! * [`rank`]: the rank-r zeta function built from a coefficient window and
//!   two semistable mass tails, its numerator, power sums, roots-of-unity
//!   products and a numeric Riemann hypothesis probe.
//! * [`nonstable`]: the rank-2 zeta function of non-stable bundles, assembled
//!   from extension blocks and Picard sums, with an exact split-bundle oracle
//!   on the projective line and a truncated series oracle elsewhere.
//! * [`io`]: serde-facing JSON types; all rationals are serialized as
//!   `[numerator, denominator]` decimal strings so output is deterministic
//!   and lossless.

pub mod curve;
mod error;
pub mod exact;
pub mod io;
pub mod mass;
pub mod nonstable;
pub mod rank;
pub mod restricted;

pub use error::{Error, Result};
