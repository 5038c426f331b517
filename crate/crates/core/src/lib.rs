//! Exact bounds and certificates for Seshadri constants `ε(L, x)`.
//!
//! Varieties and curves are never represented geometrically, only by their
//! intersection numbers and multiplicities. All verdicts come from
//! arbitrary-precision integer arithmetic.
//!
//! - [`arith`]: rationals, radicals `q^(1/d)` and their exact order.
//! - [`intersection`]: strict-transform products on the blow-up of a point,
//!   witness upper bounds, the nefness bound `(L^n)^(1/n)`.
//! - [`surface`]: lower-bound certificates on Picard-rank-one surfaces.
//! - [`abelian`]: upper bounds on principally polarized abelian varieties.
//! - [`cli`]: JSON certificate documents behind the `seshadri` binary.

pub mod abelian;
pub mod arith;
pub mod cli;
pub mod intersection;
pub mod poly;
pub mod surface;

pub use arith::{canonicalize, isqrt, rad_cmp, rad_pow, Radical, Rational};
pub use surface::SeshadriBounds;
