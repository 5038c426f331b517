//! Lower bounds for Seshadri constants on surfaces of Picard rank one.
//!
//! On such a surface every curve is numerically `C ≡ dL`, so a curve through
//! a very general point with `L·C < α·m_x(C)` gives integers `d, m` with
//!
//! ```text
//! m(m-1) <= C² = d²L² < αdm <= m(m-1)
//! ```
//!
//! once `α² <= L²` and `α` is an integer. [`certify_rank_one`] records that
//! chain symbolically in `(d, m)` and [`verify_certificate`] replays it.
//! [`violation_scan`] is the finite brute-force counterpart.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{isqrt, rad_cmp, Radical, Rational};
use crate::intersection::{kleiman_upper, PolarizedModel};
use crate::poly::{Inequality, Poly, Relation};

/// Variable names for certificate polynomials: `x = d`, `y = m`.
pub const CURVE_VARS: [&str; 2] = ["d", "m"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("certificates need Picard rank 1, got {0}")]
    PicardRankUnsupported(u32),
    #[error("alpha = {alpha} is too large: alpha^2 > L^2 = {l_self}")]
    AlphaTooLarge { alpha: u64, l_self: u64 },
    #[error("alpha must be at least 1")]
    AlphaZero,
    #[error("L^2 must be at least 1")]
    ZeroSelfIntersection,
    #[error("malformed certificate at step {step}: {reason}")]
    MalformedCertificate { step: usize, reason: String },
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    CrossedBounds {
        lower: Box<Radical>,
        upper: Box<Radical>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    /// `L²`.
    pub l_self: u64,
    pub picard_rank: u32,
}

impl SurfaceModel {
    pub fn new(l_self: u64, picard_rank: u32) -> Result<Self, SurfaceError> {
        if l_self == 0 {
            return Err(SurfaceError::ZeroSelfIntersection);
        }
        Ok(SurfaceModel {
            l_self,
            picard_rank,
        })
    }

    pub fn rank_one(l_self: u64) -> Result<Self, SurfaceError> {
        SurfaceModel::new(l_self, 1)
    }

    fn require_rank_one(&self) -> Result<(), SurfaceError> {
        if self.picard_rank != 1 {
            return Err(SurfaceError::PicardRankUnsupported(self.picard_rank));
        }
        Ok(())
    }

    pub fn polarized(&self) -> PolarizedModel {
        PolarizedModel::new(2, self.l_self, self.picard_rank)
            .expect("L^2 >= 1 checked on construction")
    }
}

/// `m(m-1)`: the least self-intersection of a curve that moves in a family
/// with multiplicity `m` at a moving point.
pub fn el_bound(m: u64) -> BigUint {
    BigUint::from(m) * BigUint::from(m.saturating_sub(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepTag {
    /// Numeric hypothesis on the polarization.
    Given,
    /// The curve assumed to violate the bound.
    Hypothesis,
    ElBound,
    Violation,
    Integrality,
    /// One link of the closing cycle.
    Contradiction,
}

impl StepTag {
    pub fn label(self) -> &'static str {
        match self {
            StepTag::ElBound => "(*)",
            StepTag::Violation => "(**)",
            StepTag::Integrality => "(***)",
            StepTag::Given => "given",
            StepTag::Hypothesis => "hypothesis",
            StepTag::Contradiction => "contradiction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub name: String,
    pub tag: StepTag,
    pub inequality: Inequality,
    /// Index of the step this one is derived from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub premise: Option<usize>,
    /// Positive factor the premise is multiplied by (contradiction links).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<Poly>,
}

/// Symbolic proof that no curve `C ≡ dL` through a very general point has
/// `L·C < α·m_x(C)`, hence `ε(L, x) >= α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneCertificate {
    pub l_self: u64,
    pub alpha: u64,
    pub steps: Vec<CertificateStep>,
    pub conclusion: String,
}

fn step(name: &str, tag: StepTag, inequality: Inequality) -> CertificateStep {
    CertificateStep {
        name: name.to_string(),
        tag,
        inequality,
        premise: None,
        factor: None,
    }
}

fn derived(name: &str, tag: StepTag, inequality: Inequality, premise: usize) -> CertificateStep {
    CertificateStep {
        premise: Some(premise),
        ..step(name, tag, inequality)
    }
}

fn hypothesis_inequality(l_self: &BigInt, alpha: &BigInt) -> Inequality {
    // L·C = d·L² < α·m
    Inequality::new(
        Poly::monomial(l_self.clone(), 1, 0),
        Relation::Lt,
        Poly::monomial(alpha.clone(), 0, 1),
    )
}

fn el_inequality(l_self: &BigInt) -> Inequality {
    // m(m-1) <= C² = d²·L²
    let m = Poly::y();
    Inequality::new(
        &(&m * &m) - &m,
        Relation::Le,
        Poly::monomial(l_self.clone(), 2, 0),
    )
}

/// Builds the certificate for `ε(L, x) >= alpha` at a very general point.
pub fn certify_rank_one(
    model: &SurfaceModel,
    alpha: u64,
) -> Result<RankOneCertificate, SurfaceError> {
    model.require_rank_one()?;
    if alpha == 0 {
        return Err(SurfaceError::AlphaZero);
    }
    let l2 = BigInt::from(model.l_self);
    let a = BigInt::from(alpha);
    if &a * &a > l2 {
        return Err(SurfaceError::AlphaTooLarge {
            alpha,
            l_self: model.l_self,
        });
    }

    let alpha_d = Poly::monomial(a.clone(), 1, 0);
    let m = Poly::y();
    let hypothesis = hypothesis_inequality(&l2, &a);
    let el = el_inequality(&l2);
    let violation = Inequality::new(alpha_d.clone(), Relation::Lt, m.clone());
    let integrality = Inequality::new(alpha_d, Relation::Le, &m - &Poly::constant(1));

    let mut steps = vec![
        step(
            "alpha^2 <= L^2",
            StepTag::Given,
            Inequality::new(
                Poly::constant(&a * &a),
                Relation::Le,
                Poly::constant(l2.clone()),
            ),
        ),
        step(
            "L.C < alpha*m_x(C) for C = dL",
            StepTag::Hypothesis,
            hypothesis.clone(),
        ),
        step(
            "C^2 >= m(m-1) for a moving curve",
            StepTag::ElBound,
            el.clone(),
        ),
        derived("alpha*d < m", StepTag::Violation, violation, 1),
        derived(
            "alpha*d <= m - 1",
            StepTag::Integrality,
            integrality.clone(),
            3,
        ),
    ];
    let links = [
        (2, Poly::constant(1), el),
        (1, Poly::x(), hypothesis),
        (4, Poly::y(), integrality),
    ];
    for (premise, factor, ineq) in links {
        steps.push(CertificateStep {
            name: "cycle".to_string(),
            tag: StepTag::Contradiction,
            inequality: ineq.times(&factor),
            premise: Some(premise),
            factor: Some(factor),
        });
    }

    Ok(RankOneCertificate {
        l_self: model.l_self,
        alpha,
        steps,
        conclusion: format!("epsilon(L, x) >= {alpha} at a very general point x"),
    })
}

/// Why a certificate did not replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayFailure {
    /// The step list itself is unusable (bad premise index, missing factor).
    Malformed { step: usize, reason: String },
    /// The steps are well formed but one of them does not follow.
    Invalid { step: Option<usize>, reason: String },
}

fn invalid(step: usize, reason: impl Into<String>) -> ReplayFailure {
    ReplayFailure::Invalid {
        step: Some(step),
        reason: reason.into(),
    }
}

fn malformed(step: usize, reason: impl Into<String>) -> ReplayFailure {
    ReplayFailure::Malformed {
        step,
        reason: reason.into(),
    }
}

const INSTANTIATION_SEED: u64 = 0x5e5_4ad1;
const INSTANTIATION_SAMPLES: usize = 512;

/// Replays every step of the certificate, then spot-checks each derived step
/// at random positive integer points.
pub fn replay(cert: &RankOneCertificate) -> Result<(), ReplayFailure> {
    let l2 = BigInt::from(cert.l_self);
    let alpha = BigInt::from(cert.alpha);
    if cert.alpha == 0 {
        return Err(ReplayFailure::Invalid {
            step: None,
            reason: "alpha must be positive".into(),
        });
    }

    let mut hypotheses = 0;
    let mut chain = Vec::new();
    for (i, s) in cert.steps.iter().enumerate() {
        let premise = match s.premise {
            Some(p) if p >= i => {
                return Err(malformed(i, format!("premise {p} is not an earlier step")))
            }
            Some(p) => {
                let prem = &cert.steps[p];
                if prem.tag == StepTag::Contradiction {
                    return Err(malformed(i, "premise is itself a cycle link"));
                }
                Some(prem)
            }
            None => None,
        };
        let needs_premise = matches!(
            s.tag,
            StepTag::Violation | StepTag::Integrality | StepTag::Contradiction
        );
        if needs_premise && premise.is_none() {
            return Err(malformed(i, "derived step without a premise"));
        }

        match s.tag {
            StepTag::Given => {
                let expected = Inequality::new(
                    Poly::constant(&alpha * &alpha),
                    Relation::Le,
                    Poly::constant(l2.clone()),
                );
                if s.inequality != expected {
                    return Err(invalid(i, "given step is not alpha^2 <= L^2"));
                }
                let (lhs, rhs) = (
                    s.inequality.lhs.as_constant(),
                    s.inequality.rhs.as_constant(),
                );
                match (lhs, rhs) {
                    (Some(l), Some(r)) if s.inequality.relation.holds(&l, &r) => {}
                    _ => return Err(invalid(i, "given inequality is false")),
                }
            }
            StepTag::Hypothesis => {
                if s.inequality != hypothesis_inequality(&l2, &alpha) {
                    return Err(invalid(i, "hypothesis is not d*L^2 < alpha*m"));
                }
                hypotheses += 1;
            }
            StepTag::ElBound => {
                if s.inequality != el_inequality(&l2) {
                    return Err(invalid(i, "not of the form m^2 - m <= L^2*d^2"));
                }
            }
            StepTag::Violation => {
                let prem = premise.expect("checked above");
                if prem.tag != StepTag::Hypothesis {
                    return Err(invalid(i, "violation must follow from the hypothesis"));
                }
                if !s.inequality.relation.is_strict() || !prem.inequality.relation.is_strict() {
                    return Err(invalid(i, "violation step must be strict"));
                }
                // alpha*(gap) - (premise gap) >= 0 coefficientwise, so
                // gap >= premise_gap / alpha > 0.
                let slack = &s.inequality.gap().scale(&alpha) - &prem.inequality.gap();
                if !slack.coefficients_nonnegative() {
                    return Err(invalid(
                        i,
                        "does not follow from the hypothesis and alpha^2 <= L^2",
                    ));
                }
            }
            StepTag::Integrality => {
                let prem = premise.expect("checked above");
                if !prem.inequality.relation.is_strict() || s.inequality.relation != Relation::Le {
                    return Err(invalid(i, "integrality turns a strict inequality into <="));
                }
                if s.inequality.gap() != &prem.inequality.gap() - &Poly::constant(1) {
                    return Err(invalid(
                        i,
                        "integer rounding must lower the gap by exactly 1",
                    ));
                }
            }
            StepTag::Contradiction => {
                let prem = premise.expect("checked above");
                let factor = s
                    .factor
                    .as_ref()
                    .ok_or_else(|| malformed(i, "cycle link without a factor"))?;
                if !factor.is_positive_monomial() {
                    return Err(invalid(i, "factor must be a positive monomial"));
                }
                if s.inequality != prem.inequality.times(factor) {
                    return Err(invalid(i, "link is not its premise times the factor"));
                }
                chain.push(i);
            }
        }
    }

    if hypotheses != 1 {
        return Err(ReplayFailure::Invalid {
            step: None,
            reason: format!("expected exactly one hypothesis, found {hypotheses}"),
        });
    }
    close_cycle(cert, &chain)?;
    instantiate(cert)
}

fn close_cycle(cert: &RankOneCertificate, chain: &[usize]) -> Result<(), ReplayFailure> {
    let (first, last) = match (chain.first(), chain.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => {
            return Err(ReplayFailure::Invalid {
                step: None,
                reason: "no contradiction cycle".into(),
            })
        }
    };
    for pair in chain.windows(2) {
        let (a, b) = (
            &cert.steps[pair[0]].inequality,
            &cert.steps[pair[1]].inequality,
        );
        if a.rhs != b.lhs {
            return Err(invalid(
                pair[1],
                "cycle link does not start where the previous one ends",
            ));
        }
    }
    if cert.steps[last].inequality.rhs != cert.steps[first].inequality.lhs {
        return Err(invalid(last, "cycle does not close"));
    }
    if !chain
        .iter()
        .any(|&i| cert.steps[i].inequality.relation.is_strict())
    {
        return Err(invalid(last, "cycle has no strict link"));
    }
    Ok(())
}

fn instantiate(cert: &RankOneCertificate) -> Result<(), ReplayFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(INSTANTIATION_SEED);
    for _ in 0..INSTANTIATION_SAMPLES {
        let d = BigInt::from(rng.gen_range(1u64..=10_000));
        let m = BigInt::from(rng.gen_range(1u64..=10_000));
        for (i, s) in cert.steps.iter().enumerate() {
            let Some(p) = s.premise else { continue };
            let prem = &cert.steps[p].inequality;
            if prem.holds_at(&d, &m) && !s.inequality.holds_at(&d, &m) {
                return Err(invalid(i, format!("fails at d = {d}, m = {m}")));
            }
        }
    }
    Ok(())
}

/// `Ok(true)` iff the certificate replays. Structural problems are errors.
pub fn verify_certificate(cert: &RankOneCertificate) -> Result<bool, SurfaceError> {
    match replay(cert) {
        Ok(()) => Ok(true),
        Err(ReplayFailure::Invalid { .. }) => Ok(false),
        Err(ReplayFailure::Malformed { step, reason }) => {
            Err(SurfaceError::MalformedCertificate { step, reason })
        }
    }
}

/// All `(d, m)` with `1 <= d <= d_max`, `1 <= m <= m_max`,
/// `d²L² >= m(m-1)` and `d·L² < α·m`, in ascending order.
///
/// For each `d` the admissible `m` form an interval, so only that interval
/// is walked.
pub fn violation_scan(
    model: &SurfaceModel,
    alpha: u64,
    d_max: u64,
    m_max: u64,
) -> Result<Vec<(u64, u64)>, SurfaceError> {
    model.require_rank_one()?;
    if alpha == 0 {
        return Err(SurfaceError::AlphaZero);
    }
    let l2 = BigUint::from(model.l_self);
    let a = BigUint::from(alpha);
    let mut out = Vec::new();
    for d in 1..=d_max {
        let d_big = BigUint::from(d);
        // d·L² < α·m  <=>  m >= floor(d·L²/α) + 1
        let lo = &d_big * &l2 / &a + BigUint::one();
        // m(m-1) <= N  <=>  (2m-1)² <= 4N+1
        let n = &d_big * &d_big * &l2;
        let hi = (isqrt(&(n * 4u32 + 1u32)) + 1u32) / 2u32;
        let hi = hi.min(BigUint::from(m_max));
        if lo > hi {
            continue;
        }
        let (lo, hi) = (
            lo.to_u64().expect("lo <= m_max"),
            hi.to_u64().expect("<= m_max"),
        );
        out.extend((lo..=hi).map(|m| (d, m)));
    }
    Ok(out)
}

/// Where a bound came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Provenance {
    pub fn new(source: impl Into<String>) -> Self {
        Provenance {
            source: source.into(),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: Radical,
    pub provenance: Provenance,
}

/// A certified interval `[lower, upper]` containing `ε(L, x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BoundsRepr")]
pub struct SeshadriBounds {
    lower: Bound,
    upper: Bound,
    exact: bool,
}

#[derive(Deserialize)]
struct BoundsRepr {
    lower: Bound,
    upper: Bound,
    exact: bool,
}

impl TryFrom<BoundsRepr> for SeshadriBounds {
    type Error = String;

    fn try_from(r: BoundsRepr) -> Result<Self, Self::Error> {
        let b = SeshadriBounds::new(r.lower, r.upper).map_err(|e| e.to_string())?;
        if b.exact != r.exact {
            return Err(format!(
                "exact flag is {} but the endpoints say {}",
                r.exact, b.exact
            ));
        }
        Ok(b)
    }
}

impl SeshadriBounds {
    pub fn new(lower: Bound, upper: Bound) -> Result<Self, SurfaceError> {
        let exact = match rad_cmp(&lower.value, &upper.value) {
            Ordering::Less => false,
            Ordering::Equal => true,
            Ordering::Greater => {
                return Err(SurfaceError::CrossedBounds {
                    lower: Box::new(lower.value),
                    upper: Box::new(upper.value),
                })
            }
        };
        Ok(SeshadriBounds {
            lower,
            upper,
            exact,
        })
    }

    pub fn lower(&self) -> &Bound {
        &self.lower
    }

    pub fn upper(&self) -> &Bound {
        &self.upper
    }

    pub fn exact(&self) -> bool {
        self.exact
    }
}

/// Certificate for `ε >= alpha` together with the interval it supports:
/// `alpha` below and `sqrt(L²)` above.
pub fn certified_bounds(
    model: &SurfaceModel,
    alpha: u64,
) -> Result<(RankOneCertificate, SeshadriBounds), SurfaceError> {
    let cert = certify_rank_one(model, alpha)?;
    let lower = Bound {
        value: Radical::from(Rational::from(alpha)),
        provenance: Provenance::new(format!("rank-one lower bound certificate, alpha = {alpha}"))
            .with_note("very general point"),
    };
    let upper = Bound {
        value: kleiman_upper(&model.polarized()),
        provenance: Provenance::new("nefness of the pulled-back polarization: (L^2)^(1/2)"),
    };
    Ok((cert, SeshadriBounds::new(lower, upper)?))
}

/// Two-sided bounds at a very general point with the largest certifiable
/// integer `floor(sqrt(L²))` as the lower end.
pub fn very_general_bounds(model: &SurfaceModel) -> Result<SeshadriBounds, SurfaceError> {
    model.require_rank_one()?;
    Ok(certified_bounds(model, default_alpha(model.l_self))?.1)
}

/// `α = floor(sqrt(L²))`, the default integer passed to [`certify_rank_one`].
pub fn default_alpha(l_self: u64) -> u64 {
    isqrt(&BigUint::from(l_self)).to_u64().expect("fits")
}
