//! Closed-form upper bounds for `ε(Θ)` on principally polarized abelian
//! varieties, the exact value `4/3` on abelian surfaces, and the floor-bound
//! scan for multiples `νΘ`.
//!
//! Every bound here is produced by a subvariety witness `(dim, L^dim·Y, m_x(Y))`
//! routed through [`witness_upper`], and compared against the maximal value
//! `(g!)^(1/g)` with [`rad_cmp`].

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{canonicalize, isqrt, rad_cmp, ArithError, Radical, Rational};
use crate::intersection::{
    kleiman_upper, surface_pair, witness_upper, DivisorWitness, IntersectionError, PolarizedModel,
};
use crate::poly::{Inequality, Poly, Relation};
use crate::surface::{Bound, SeshadriBounds, SurfaceError};

/// Variable names for the surface infeasibility certificate: `C̃ ≡ aC`,
/// `m_x(C̃) = b`.
pub const CLASS_VARS: [&str; 2] = ["a", "b"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("dimension g must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("scale factor must be at least 1")]
    ZeroScale,
    #[error("empty range {from}..={to}")]
    EmptyRange { from: u64, to: u64 },
    #[error(transparent)]
    Intersection(#[from] IntersectionError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

fn check_dimension(g: u32) -> Result<(), AbelianError> {
    if g < 2 {
        return Err(AbelianError::DimensionTooSmall(g));
    }
    Ok(())
}

pub fn factorial(g: u32) -> BigUint {
    (1..=g).map(BigUint::from).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianModel {
    pub g: u32,
    pub principal: bool,
    pub picard_rank: u32,
}

impl AbelianModel {
    pub fn principal(g: u32) -> Result<Self, AbelianError> {
        check_dimension(g)?;
        Ok(AbelianModel {
            g,
            principal: true,
            picard_rank: 1,
        })
    }

    /// `(X, Θ)` with `Θ^g = g!`.
    pub fn polarized(&self) -> PolarizedModel {
        PolarizedModel::new(self.g, factorial(self.g), self.picard_rank).expect("g >= 2")
    }

    /// `(g!)^(1/g)`, the largest possible Seshadri constant.
    pub fn maximal(&self) -> Radical {
        kleiman_upper(&self.polarized())
    }
}

/// `2^(g-1)(2^g - 1)`.
pub fn odd_theta_count(g: u32) -> Result<BigUint, AbelianError> {
    check_dimension(g)?;
    let two = BigUint::from(2u32);
    Ok(Pow::pow(&two, g - 1) * (Pow::pow(&two, g) - BigUint::one()))
}

mod ordering_serde {
    use std::cmp::Ordering;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(o: &Ordering, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match o {
            Ordering::Less => "less",
            Ordering::Equal => "equal",
            Ordering::Greater => "greater",
        })
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ordering, D::Error> {
        match String::deserialize(d)?.as_str() {
            "less" => Ok(Ordering::Less),
            "equal" => Ok(Ordering::Equal),
            "greater" => Ok(Ordering::Greater),
            other => Err(serde::de::Error::custom(format!(
                "unknown ordering {other:?}"
            ))),
        }
    }
}

/// An upper bound for `ε(Θ)` and the witness that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub g: u32,
    pub value: Radical,
    pub witness: DivisorWitness,
    /// `(g!)^(1/g)`.
    pub maximal: Radical,
    /// `value` compared with `maximal`.
    #[serde(with = "ordering_serde")]
    pub strictness: Ordering,
    /// Geometric hypotheses the bound is stated under. Not checked.
    pub hypotheses: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl BoundReport {
    fn from_witness(
        g: u32,
        witness: DivisorWitness,
        hypotheses: Vec<String>,
    ) -> Result<Self, AbelianError> {
        let model = AbelianModel::principal(g)?;
        witness.check_fits(&model.polarized())?;
        let value = witness_upper(&witness)?;
        let maximal = model.maximal();
        let strictness = rad_cmp(&value, &maximal);
        let mut flags = Vec::new();
        if rad_cmp(&value, &Radical::from(Rational::one())) == Ordering::Less {
            flags.push("bound is below 1 although the polarization is ample".to_string());
        }
        Ok(BoundReport {
            g,
            value,
            witness,
            maximal,
            strictness,
            hypotheses,
            flags,
        })
    }

    /// Recomputes value, maximal value and strictness from the stored witness.
    pub fn recheck(&self) -> bool {
        let Ok(model) = AbelianModel::principal(self.g) else {
            return false;
        };
        let Ok(value) = witness_upper(&self.witness) else {
            return false;
        };
        let maximal = model.maximal();
        value == self.value
            && maximal == self.maximal
            && rad_cmp(&value, &maximal) == self.strictness
    }
}

/// `ε(Θ) <= 2g/(g+1)` on a hyperelliptic Jacobian, from the image of the
/// curve under multiplication by two: degree `Θ·C' = 4g`, multiplicity
/// `2g + 2` at the common image of the Weierstrass points.
pub fn hyperelliptic_upper(g: u32) -> Result<BoundReport, AbelianError> {
    check_dimension(g)?;
    let witness = DivisorWitness::curve(
        Rational::from(4 * u64::from(g)),
        BigUint::from(2 * u64::from(g) + 2),
    )?;
    BoundReport::from_witness(
        g,
        witness,
        vec![
            "Jacobian of a hyperelliptic curve of genus g".to_string(),
            "rank NS(X) = 1".to_string(),
        ],
    )
}

/// Coefficient `k` in `Θ' ≡ kΘ` for the image `Θ' = 2_X(Θ)`.
pub const DEFAULT_IMAGE_COEFFICIENT: u64 = 4;

/// `ε(Θ) <= (4·g! / (2^(g-1)(2^g - 1)))^(1/(g-1))` on a general ppav, from
/// `Θ' = 2_X(Θ)` passing through the image of the odd theta characteristics.
pub fn ppav_general_upper(g: u32) -> Result<BoundReport, AbelianError> {
    ppav_general_upper_with_coefficient(g, &Rational::from(DEFAULT_IMAGE_COEFFICIENT))
}

/// [`ppav_general_upper`] with `Θ' ≡ kΘ` for a caller-chosen `k`.
pub fn ppav_general_upper_with_coefficient(
    g: u32,
    coefficient: &Rational,
) -> Result<BoundReport, AbelianError> {
    check_dimension(g)?;
    let degree = coefficient * &Rational::from(factorial(g));
    let witness = DivisorWitness::new(g - 1, degree, odd_theta_count(g)?)?;
    let mut hypotheses = vec!["general principally polarized abelian variety".to_string()];
    if *coefficient != Rational::from(DEFAULT_IMAGE_COEFFICIENT) {
        hypotheses.push(format!("non-default image coefficient k = {coefficient}"));
    }
    BoundReport::from_witness(g, witness, hypotheses)
}

/// One constraint of a linear infeasibility certificate: `lhs rel rhs`
/// weighted by a nonnegative multiplier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedConstraint {
    pub name: String,
    pub label: String,
    pub inequality: Inequality,
    #[serde(with = "crate::arith::decimal")]
    pub multiplier: BigInt,
}

/// Proof that no integers `a, b` satisfy every constraint: the weighted sum
/// of the gaps is a constant that contradicts the relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    pub constraints: Vec<WeightedConstraint>,
    /// `Σ multiplier·(rhs - lhs)`.
    pub combination: Poly,
}

impl InfeasibilityCertificate {
    /// Sums the weighted gaps and checks the result is a constant that the
    /// combined relation rules out.
    pub fn verify(&self) -> bool {
        if self
            .constraints
            .iter()
            .any(|c| c.multiplier < BigInt::zero())
        {
            return false;
        }
        let combination = self.constraints.iter().fold(Poly::zero(), |acc, c| {
            &acc + &c.inequality.gap().scale(&c.multiplier)
        });
        if combination != self.combination {
            return false;
        }
        let Some(c) = combination.as_constant() else {
            return false;
        };
        let strict = self
            .constraints
            .iter()
            .any(|k| k.inequality.relation.is_strict() && k.multiplier > BigInt::zero());
        // The weighted sum is > 0 (strict) or >= 0; a constant violating that
        // is the contradiction.
        if strict {
            c <= BigInt::zero()
        } else {
            c < BigInt::zero()
        }
    }
}

/// `ε(Θ) = 4/3` on an irreducible principally polarized abelian surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpasExact {
    pub value: Rational,
    /// Upper half: the `g = 2` hyperelliptic witness.
    pub upper: BoundReport,
    /// Lower half: no curve `C̃ ≡ aC` with `m_x(C̃) = b` has `a/b < 2/3`.
    pub lower: InfeasibilityCertificate,
}

impl PpasExact {
    pub fn verify(&self) -> bool {
        self.upper.recheck()
            && self.upper.strictness == Ordering::Less
            && self.upper.value.as_rational() == Some(&self.value)
            && self.lower.verify()
            && self.lower == ppas_infeasibility(&self.upper.witness)
    }
}

/// Builds the infeasibility certificate from the surface witness `C'`
/// (`Θ·C' = 8`, `m_x(C') = 6`).
///
/// With `C` the Abel-Jacobi curve (`Θ·C = 2`, `C' ≡ 4C`, `C² = 2`):
/// - `ε < 4/3` via `C̃ ≡ aC` means `2a/b < 4/3`, i.e. `3a < 2b`;
/// - `C'` and `C̃` share no component, so
///   `(φ*C' - 6E)·(φ*C̃ - bE) = C'·C̃ - 6b = 8a - 6b >= 0`;
/// - `a >= 1`.
///
/// `3(2b - 3a) + (8a - 6b) + (a - 1) = -1`, which cannot be positive.
fn ppas_infeasibility(witness: &DivisorWitness) -> InfeasibilityCertificate {
    let cprime_degree = witness.degree.numer().clone();
    let cprime_mult = BigInt::from(witness.mult.clone());
    let constraints = vec![
        WeightedConstraint {
            name: "curve below 4/3".into(),
            label: "(*)".into(),
            inequality: Inequality::new(
                Poly::monomial(3, 1, 0),
                Relation::Lt,
                Poly::monomial(2, 0, 1),
            ),
            multiplier: BigInt::from(3),
        },
        WeightedConstraint {
            name: "strict transforms of C' and the curve meet nonnegatively".into(),
            label: "(**)".into(),
            inequality: Inequality::new(
                Poly::zero(),
                Relation::Le,
                &Poly::monomial(cprime_degree, 1, 0) - &Poly::monomial(cprime_mult, 0, 1),
            ),
            multiplier: BigInt::one(),
        },
        WeightedConstraint {
            name: "positive class".into(),
            label: "a >= 1".into(),
            inequality: Inequality::new(Poly::constant(1), Relation::Le, Poly::x()),
            multiplier: BigInt::one(),
        },
    ];
    let combination = constraints.iter().fold(Poly::zero(), |acc, c| {
        &acc + &c.inequality.gap().scale(&c.multiplier)
    });
    InfeasibilityCertificate {
        constraints,
        combination,
    }
}

pub fn ppas_exact() -> Result<PpasExact, AbelianError> {
    let upper = hyperelliptic_upper(2)?;
    let value = upper
        .value
        .as_rational()
        .cloned()
        .expect("g = 2 witness gives a rational bound");
    let lower = ppas_infeasibility(&upper.witness);
    Ok(PpasExact {
        value,
        upper,
        lower,
    })
}

/// All `(a, b)` in `1..=n` with `9a < 6b` and `(φ*C' - 6E)·(φ*C̃ - bE) >= 0`.
/// Empty for every `n` if the exact value is right.
pub fn ppas_infeasibility_scan(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 1..=n {
        let cprime_dot_ctilde = Rational::from(8 * a);
        for b in 1..=n {
            if 9 * a < 6 * b && !surface_pair(&cprime_dot_ctilde, 6, b).is_negative() {
                out.push((a, b));
            }
        }
    }
    out
}

/// `ε(νL, x) = ν·ε(L, x)`, applied to both endpoints.
pub fn scale_bounds(b: &SeshadriBounds, nu: u64) -> Result<SeshadriBounds, AbelianError> {
    if nu == 0 {
        return Err(AbelianError::ZeroScale);
    }
    let factor = Rational::from(nu);
    let scale = |bound: &Bound| -> Result<Bound, AbelianError> {
        let mut provenance = bound.provenance.clone();
        provenance.notes.push(format!("scaled by {nu}"));
        Ok(Bound {
            value: bound.value.scale(&factor)?,
            provenance,
        })
    };
    Ok(SeshadriBounds::new(scale(b.lower())?, scale(b.upper())?)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorRow {
    pub nu: u64,
    /// `ν·4/3`, the upper bound for `ε(νΘ)`.
    pub lhs: Rational,
    /// `floor(sqrt((νΘ)²)) = isqrt(2ν²)`.
    #[serde(with = "crate::arith::decimal")]
    pub floor_rhs: BigUint,
    /// `lhs < floor_rhs`: the bound `ε(L) >= floor(sqrt(L²))` fails for `L = νΘ`.
    pub is_counterexample: bool,
}

/// Per-`ν` verdicts for `ν·ε(Θ) < floor(ν·sqrt(2))` on an abelian surface.
pub fn floor_scan(nu_min: u64, nu_max: u64) -> Result<Vec<FloorRow>, AbelianError> {
    if nu_min == 0 || nu_min > nu_max {
        return Err(AbelianError::EmptyRange {
            from: nu_min,
            to: nu_max,
        });
    }
    let ppas = ppas_exact()?;
    let theta_sq = BigUint::from(2u32);
    (nu_min..=nu_max)
        .map(|nu| {
            let lhs = &ppas.value * &Rational::from(nu);
            let nu_big = BigUint::from(nu);
            let floor_rhs = isqrt(&(&nu_big * &nu_big * &theta_sq));
            let is_counterexample =
                lhs.cmp_integer(&BigInt::from(floor_rhs.clone())) == Ordering::Less;
            Ok(FloorRow {
                nu,
                lhs,
                floor_rhs,
                is_counterexample,
            })
        })
        .collect()
}

/// `(q, g-1)` with `q = 4·g!/(2^(g-1)(2^g-1))`, computed directly from the
/// closed form rather than through a witness.
pub fn ppav_closed_form(g: u32) -> Result<Radical, AbelianError> {
    check_dimension(g)?;
    let q = Rational::new(
        BigInt::from(factorial(g)) * 4,
        BigInt::from(odd_theta_count(g)?),
    )?;
    Ok(canonicalize(q, g - 1)?)
}
