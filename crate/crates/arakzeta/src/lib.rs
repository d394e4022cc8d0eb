//! Two-variable zeta functions of arithmetic curves.
//!
//! The crate computes, at desk scale:
//!
//! * exact two-variable zeta functions `Z_X(T, u)` of curves over finite
//!   fields, their numerators `P_X(T, u)` and all algebraic identities
//!   between the `(s, t)` / `(s, w)` normalizations ([`ffzeta`]);
//! * the analogous zeta functions of number fields, evaluated numerically by
//!   theta integrals over the degree-zero Arakelov class space, together with
//!   their meromorphic continuation, functional equation and the special
//!   value at `w = 1` against an independent completed Dedekind zeta
//!   ([`fielddata`], [`arakelov`], [`classspace`], [`zetanf`]);
//! * the lattice invariants `a`, `b`, `nu` of Arakelov divisors and the
//!   Gamma-quotient asymptotics of the oscillatory integral `C(s)`
//!   ([`arakelov`], [`oscint`]);
//! * zeta-regularized products with branch-fixed arguments, Hurwitz-zeta
//!   continuation, and the regularization checks for the Gamma factors and
//!   the function-field zeta ([`regprod`]).
//!
//! The `arakzeta` binary exposes everything on the command line; see
//! [`cli::run`].

pub mod arith;
pub mod error;
pub mod ffzeta;
pub mod gamma;
pub mod oscint;
pub mod quadrature;
pub mod regprod;
pub mod zetanf;

pub mod arakelov;
pub mod checks;
pub mod classspace;
pub mod fielddata;

pub use error::{Error, Result};
pub mod cli;
