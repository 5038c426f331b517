//! Numerical intersection calculus on the blow-up `φ: Bl_x(X) → X` of a
//! single point with exceptional divisor `E`.
//!
//! Only the universal identities of a point blow-up are used: mixed terms
//! `(φ*A)^i · E^j` vanish for `0 < j < n`, and `E^n = (-1)^(n-1)`. Expanding
//! `(φ*L - δE)^p · (φ*Y - mE)` with those rules leaves `L^p·Y - δ^p·m`, which
//! is the only shape of product the rest of the crate needs.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{canonicalize, rad_cmp, rad_pow, ArithError, Radical, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("degree must be positive, got {0}")]
    NonPositiveDegree(Rational),
    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionBelowTwo(u32),
    #[error("witness of dimension {dim} does not fit in a model of dimension {model_dim}")]
    WitnessDimension { dim: u32, model_dim: u32 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Numerical data of a polarized variety `(X, L)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizedModel {
    pub dimension: u32,
    /// `L^n`.
    #[serde(with = "crate::arith::decimal")]
    pub top_self_intersection: BigUint,
    pub picard_rank: u32,
}

impl PolarizedModel {
    pub fn new(
        dimension: u32,
        top_self_intersection: impl Into<BigUint>,
        picard_rank: u32,
    ) -> Result<Self, IntersectionError> {
        let top_self_intersection = top_self_intersection.into();
        if dimension == 0 {
            return Err(IntersectionError::ZeroDimension);
        }
        if top_self_intersection.is_zero() {
            return Err(IntersectionError::NonPositiveDegree(Rational::zero()));
        }
        Ok(PolarizedModel {
            dimension,
            top_self_intersection,
            picard_rank,
        })
    }
}

/// A `dim`-dimensional subvariety `Y` through the point, recorded by
/// `degree = L^dim · Y` and `mult = m_x(Y)`.
///
/// Curves are the `dim = 1` case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorWitness {
    pub dim: u32,
    pub degree: Rational,
    #[serde(with = "crate::arith::decimal")]
    pub mult: BigUint,
}

impl DivisorWitness {
    pub fn new(
        dim: u32,
        degree: Rational,
        mult: impl Into<BigUint>,
    ) -> Result<Self, IntersectionError> {
        let mult = mult.into();
        if dim == 0 {
            return Err(IntersectionError::ZeroDimension);
        }
        if !degree.is_positive() {
            return Err(IntersectionError::NonPositiveDegree(degree));
        }
        if mult.is_zero() {
            return Err(IntersectionError::ZeroMultiplicity);
        }
        Ok(DivisorWitness { dim, degree, mult })
    }

    pub fn curve(degree: Rational, mult: impl Into<BigUint>) -> Result<Self, IntersectionError> {
        DivisorWitness::new(1, degree, mult)
    }

    /// Checks `1 <= dim <= n - 1` for the model the witness lives on.
    pub fn check_fits(&self, model: &PolarizedModel) -> Result<(), IntersectionError> {
        if self.dim == 0 || self.dim >= model.dimension {
            return Err(IntersectionError::WitnessDimension {
                dim: self.dim,
                model_dim: model.dimension,
            });
        }
        Ok(())
    }
}

/// Sign of a strict-transform product together with the value of δ at which
/// it vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSign<T> {
    pub sign: Ordering,
    pub threshold: T,
}

/// `(φ*C₁ - m₁E)·(φ*C₂ - m₂E) = C₁·C₂ - m₁m₂` on a blown-up surface.
pub fn surface_pair(c1_dot_c2: &Rational, m1: u64, m2: u64) -> Rational {
    c1_dot_c2 - &Rational::integer(BigInt::from(m1) * BigInt::from(m2))
}

/// `(φ*L - δE)·(φ*C - mE) = L·C - δm`, reported as its sign and the
/// threshold `L·C / m`.
pub fn seshadri_form_surface(
    l_dot_c: &Rational,
    m: u64,
    delta: &Radical,
) -> Result<FormSign<Rational>, IntersectionError> {
    if m == 0 {
        return Err(IntersectionError::ZeroMultiplicity);
    }
    if !l_dot_c.is_positive() {
        return Err(IntersectionError::NonPositiveDegree(l_dot_c.clone()));
    }
    let threshold = l_dot_c / &Rational::from(m);
    let sign = rad_cmp(&Radical::from(threshold.clone()), delta);
    Ok(FormSign { sign, threshold })
}

/// `(φ*L - εE)^(g-1)·(φ*D - mE) = L^(g-1)·D - ε^(g-1)m` on the blow-up of a
/// `g`-fold, with threshold `(L^(g-1)·D / m)^(1/(g-1))`.
pub fn seshadri_form_top(
    g: u32,
    ltop_dot_d: &Rational,
    m: &BigUint,
    eps: &Radical,
) -> Result<FormSign<Radical>, IntersectionError> {
    if g < 2 {
        return Err(IntersectionError::DimensionBelowTwo(g));
    }
    if m.is_zero() {
        return Err(IntersectionError::ZeroMultiplicity);
    }
    if !ltop_dot_d.is_positive() {
        return Err(IntersectionError::NonPositiveDegree(ltop_dot_d.clone()));
    }
    let m = Rational::from(m.clone());
    let subtracted = rad_pow(eps, g - 1).scale(&m)?;
    let sign = rad_cmp(&Radical::from(ltop_dot_d.clone()), &subtracted);
    let threshold = canonicalize(ltop_dot_d / &m, g - 1)?;
    Ok(FormSign { sign, threshold })
}

/// `(L^n)^(1/n)`: nefness of `φ*L - δE` forces `(φ*L - δE)^n = L^n - δ^n >= 0`.
pub fn kleiman_upper(model: &PolarizedModel) -> Radical {
    canonicalize(
        Rational::from(model.top_self_intersection.clone()),
        model.dimension,
    )
    .expect("positive radicand, positive index")
}

/// `(L^p·Y / m_x(Y))^(1/p)`, the upper bound on ε forced by `Y`.
pub fn witness_upper(w: &DivisorWitness) -> Result<Radical, IntersectionError> {
    if w.mult.is_zero() {
        return Err(IntersectionError::ZeroMultiplicity);
    }
    if w.dim == 0 {
        return Err(IntersectionError::ZeroDimension);
    }
    if !w.degree.is_positive() {
        return Err(IntersectionError::NonPositiveDegree(w.degree.clone()));
    }
    let ratio = &w.degree / &Rational::from(w.mult.clone());
    Ok(canonicalize(ratio, w.dim)?)
}

/// Solves `(φ*L - δE)^d · Y = L^d·Y - δ^d m = 0` for `δ >= 0`.
///
/// The solution is a `d`-th root of a rational; this is checked on the
/// result.
pub fn rationality_solve(
    d: u32,
    ld_dot_y: &Rational,
    m: &Rational,
) -> Result<Radical, IntersectionError> {
    if d == 0 {
        return Err(IntersectionError::ZeroDimension);
    }
    if !m.is_positive() {
        return Err(IntersectionError::NonPositiveDegree(m.clone()));
    }
    if !ld_dot_y.is_positive() {
        return Err(IntersectionError::NonPositiveDegree(ld_dot_y.clone()));
    }
    let delta = canonicalize(ld_dot_y / m, d)?;
    assert!(
        rad_pow(&delta, d).is_rational(),
        "{delta} raised to {d} is not rational"
    );
    Ok(delta)
}
