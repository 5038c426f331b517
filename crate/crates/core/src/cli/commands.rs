use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{CertificateDocument, CliError, StepRow, SCHEMA_VERSION};
use crate::abelian::{
    floor_scan, hyperelliptic_upper, ppas_exact, ppas_infeasibility_scan, ppav_general_upper,
    BoundReport, FloorRow, PpasExact, CLASS_VARS,
};
use crate::arith::{Radical, Rational};
use crate::intersection::kleiman_upper;
use crate::surface::{
    certified_bounds, default_alpha, verify_certificate, violation_scan, RankOneCertificate,
    SeshadriBounds, SurfaceModel, CURVE_VARS,
};

pub const DEFAULT_SCAN_CAP: u128 = 1_000_000;

/// Exhaustive range for the `a, b` scan behind the surface value.
const PPAS_SCAN_LIMIT: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AbelianKind {
    Hyperelliptic,
    General,
    PpasExact,
}

impl AbelianKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AbelianKind::Hyperelliptic => "hyperelliptic",
            AbelianKind::General => "general",
            AbelianKind::PpasExact => "ppas-exact",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Hyperelliptic, Self::General, Self::PpasExact]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceResult {
    pub certificate: RankOneCertificate,
    pub bounds: SeshadriBounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpasResult {
    pub exact: PpasExact,
    /// `a, b` range of the exhaustive scan.
    pub scan_limit: u64,
    pub scan_hits: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorScanResult {
    pub rows: Vec<FloorRow>,
    pub counterexamples: Vec<u64>,
    /// `ν >= 8` in range where `ν·4/3 < floor(ν·sqrt(2))` does not hold.
    pub exceptions_from_8: Vec<u64>,
    /// True iff every `ν >= 8` in range is a counterexample.
    pub all_counterexamples_from_8: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationScanResult {
    pub l_self: u64,
    pub alpha: u64,
    pub d_max: u64,
    pub m_max: u64,
    pub pairs: Vec<(u64, u64)>,
    /// `α² <= L²`, so the rank-one certificate predicts no pairs.
    pub expected_empty: bool,
    /// `pass`, `fail`, or `not_applicable` when `α² > L²`.
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReproRow {
    Surface {
        label: String,
        l_self: u64,
        bounds: SeshadriBounds,
        verified: bool,
    },
    Ppas {
        label: String,
        value: Rational,
        maximal: Radical,
        strict: bool,
        verified: bool,
    },
    Bound {
        label: String,
        family: String,
        report: BoundReport,
        verified: bool,
    },
    Floor {
        label: String,
        row: FloorRow,
        verified: bool,
    },
}

impl ReproRow {
    pub fn verified(&self) -> bool {
        match self {
            ReproRow::Surface { verified, .. }
            | ReproRow::Ppas { verified, .. }
            | ReproRow::Bound { verified, .. }
            | ReproRow::Floor { verified, .. } => *verified,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            ReproRow::Surface { label, .. }
            | ReproRow::Ppas { label, .. }
            | ReproRow::Bound { label, .. }
            | ReproRow::Floor { label, .. } => label,
        }
    }
}

fn surface_steps(cert: &RankOneCertificate) -> Vec<StepRow> {
    cert.steps
        .iter()
        .map(|s| StepRow {
            name: s.name.clone(),
            lhs: s.inequality.lhs.display_with(CURVE_VARS).to_string(),
            relation: s.inequality.relation.to_string(),
            rhs: s.inequality.rhs.display_with(CURVE_VARS).to_string(),
            label: s.tag.label().to_string(),
        })
        .collect()
}

fn cross_power_row(
    name: &str,
    value: &Radical,
    maximal: &Radical,
    strictness: Ordering,
) -> StepRow {
    let l = value.index().lcm(&maximal.index());
    let relation = match strictness {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    };
    StepRow {
        name: name.to_string(),
        lhs: format!(
            "({value})^{l} = {}",
            value.radicand().pow(l / value.index())
        ),
        relation: relation.to_string(),
        rhs: format!(
            "({maximal})^{l} = {}",
            maximal.radicand().pow(l / maximal.index())
        ),
        label: "strictness".to_string(),
    }
}

fn report_steps(r: &BoundReport) -> Vec<StepRow> {
    let w = &r.witness;
    vec![
        StepRow {
            name: "witness".to_string(),
            lhs: format!("epsilon^{} * {}", w.dim, w.mult),
            relation: "<=".to_string(),
            rhs: w.degree.to_string(),
            label: "upper".to_string(),
        },
        cross_power_row("value vs maximal", &r.value, &r.maximal, r.strictness),
    ]
}

fn ppas_steps(p: &PpasExact) -> Vec<StepRow> {
    let mut steps = report_steps(&p.upper);
    steps.extend(p.lower.constraints.iter().map(|c| StepRow {
        name: format!("{} (x{})", c.name, c.multiplier),
        lhs: c.inequality.lhs.display_with(CLASS_VARS).to_string(),
        relation: c.inequality.relation.to_string(),
        rhs: c.inequality.rhs.display_with(CLASS_VARS).to_string(),
        label: c.label.clone(),
    }));
    steps.push(StepRow {
        name: "weighted sum of gaps".to_string(),
        lhs: "0".to_string(),
        relation: "<".to_string(),
        rhs: p.lower.combination.display_with(CLASS_VARS).to_string(),
        label: "contradiction".to_string(),
    });
    steps
}

fn surface_result(l2: u64, alpha: Option<u64>) -> Result<(SurfaceResult, bool), CliError> {
    let model = SurfaceModel::rank_one(l2)?;
    let alpha = alpha.unwrap_or_else(|| default_alpha(l2));
    let (certificate, bounds) = certified_bounds(&model, alpha)?;
    let verified = verify_certificate(&certificate)? && check_surface_bounds(l2, alpha, &bounds);
    Ok((
        SurfaceResult {
            certificate,
            bounds,
        },
        verified,
    ))
}

fn check_surface_bounds(l2: u64, alpha: u64, b: &SeshadriBounds) -> bool {
    let Ok(model) = SurfaceModel::rank_one(l2) else {
        return false;
    };
    b.lower().value == Radical::from(Rational::from(alpha))
        && b.upper().value == kleiman_upper(&model.polarized())
}

/// `surface --l2 <L²> [--alpha <α>]`.
pub fn cmd_surface(l2: u64, alpha: Option<u64>) -> Result<CertificateDocument, CliError> {
    let (result, verified) = surface_result(l2, alpha)?;
    let steps = surface_steps(&result.certificate);
    let inputs = [
        ("l2", l2.to_string()),
        ("alpha", result.certificate.alpha.to_string()),
    ];
    CertificateDocument::new("surface", &inputs, &result, Some(steps), verified)
}

/// `abelian --g <g> --kind <kind>`.
pub fn cmd_abelian(g: u32, kind: AbelianKind) -> Result<CertificateDocument, CliError> {
    if g < 2 {
        return Err(CliError::Usage(format!("--g must be at least 2, got {g}")));
    }
    let inputs = [("g", g.to_string()), ("kind", kind.as_str().to_string())];
    match kind {
        AbelianKind::Hyperelliptic | AbelianKind::General => {
            let report = if kind == AbelianKind::Hyperelliptic {
                hyperelliptic_upper(g)?
            } else {
                ppav_general_upper(g)?
            };
            let verified = report.recheck() && report.strictness == Ordering::Less;
            let steps = report_steps(&report);
            CertificateDocument::new("abelian", &inputs, &report, Some(steps), verified)
        }
        AbelianKind::PpasExact => {
            if g != 2 {
                return Err(CliError::Usage(format!(
                    "--kind ppas-exact requires --g 2, got {g}"
                )));
            }
            let exact = ppas_exact()?;
            let scan_hits = ppas_infeasibility_scan(PPAS_SCAN_LIMIT);
            let verified = exact.verify() && scan_hits.is_empty();
            let steps = ppas_steps(&exact);
            let result = PpasResult {
                exact,
                scan_limit: PPAS_SCAN_LIMIT,
                scan_hits,
            };
            CertificateDocument::new("abelian", &inputs, &result, Some(steps), verified)
        }
    }
}

fn check_cap(requested: u128, cap: u128) -> Result<(), CliError> {
    if requested > cap {
        return Err(CliError::CapExceeded { requested, cap });
    }
    Ok(())
}

/// Checks a floor row without going through [`floor_scan`]: the integer
/// square root by its defining inequalities, the flag by `3·floor < 4ν`.
fn floor_row_ok(r: &FloorRow) -> bool {
    let nu = BigUint::from(r.nu);
    let two_nu_sq = &nu * &nu * 2u32;
    let s = &r.floor_rhs;
    let next = s + 1u32;
    let root_ok = s * s <= two_nu_sq && two_nu_sq < &next * &next;
    let lhs_ok = r.lhs == Rational::integer(BigInt::from(r.nu) * 4) / Rational::from(3u64);
    let flag_ok = r.is_counterexample == (BigUint::from(4u32) * &nu < s * 3u32);
    root_ok && lhs_ok && flag_ok
}

/// `scan floor --from <ν₀> --to <ν₁>`.
pub fn cmd_scan_floor(from: u64, to: u64, cap: u128) -> Result<CertificateDocument, CliError> {
    if from == 0 || from > to {
        return Err(CliError::Usage(format!(
            "invalid range --from {from} --to {to}"
        )));
    }
    check_cap(u128::from(to - from) + 1, cap)?;
    let rows = floor_scan(from, to)?;
    let counterexamples = rows
        .iter()
        .filter(|r| r.is_counterexample)
        .map(|r| r.nu)
        .collect();
    let exceptions_from_8: Vec<u64> = rows
        .iter()
        .filter(|r| r.nu >= 8 && !r.is_counterexample)
        .map(|r| r.nu)
        .collect();
    let verified = rows.iter().all(floor_row_ok);
    let result = FloorScanResult {
        all_counterexamples_from_8: exceptions_from_8.is_empty(),
        rows,
        counterexamples,
        exceptions_from_8,
    };
    let inputs = [
        ("from", from.to_string()),
        ("to", to.to_string()),
        ("cap", cap.to_string()),
    ];
    CertificateDocument::new("scan floor", &inputs, &result, None, verified)
}

fn violation_pair_ok(l2: u64, alpha: u64, (d, m): (u64, u64)) -> bool {
    let (l2, alpha, d, m) = (
        BigUint::from(l2),
        BigUint::from(alpha),
        BigUint::from(d),
        BigUint::from(m),
    );
    let admissible = &d * &d * &l2 >= &m * (&m - 1u32);
    let violates = &d * &l2 < &alpha * &m;
    admissible && violates
}

/// `scan violation --l2 <L²> --alpha <α> --dmax <d> --mmax <m>`.
pub fn cmd_scan_violation(
    l2: u64,
    alpha: u64,
    d_max: u64,
    m_max: u64,
    cap: u128,
) -> Result<CertificateDocument, CliError> {
    if d_max == 0 || m_max == 0 || alpha == 0 {
        return Err(CliError::Usage(
            "--alpha, --dmax and --mmax must be positive".into(),
        ));
    }
    check_cap(u128::from(d_max) * u128::from(m_max), cap)?;
    let model = SurfaceModel::rank_one(l2)?;
    let pairs = violation_scan(&model, alpha, d_max, m_max)?;
    let expected_empty = u128::from(alpha) * u128::from(alpha) <= u128::from(l2);
    let verdict = match (expected_empty, pairs.is_empty()) {
        (true, true) => "pass",
        (true, false) => "fail",
        (false, _) => "not_applicable",
    };
    let mut verified = pairs.iter().all(|&p| violation_pair_ok(l2, alpha, p));
    if expected_empty {
        let cert = crate::surface::certify_rank_one(&model, alpha)?;
        verified &= pairs.is_empty() && verify_certificate(&cert)?;
    }
    let result = ViolationScanResult {
        l_self: l2,
        alpha,
        d_max,
        m_max,
        pairs,
        expected_empty,
        verdict: verdict.to_string(),
    };
    let inputs = [
        ("l2", l2.to_string()),
        ("alpha", alpha.to_string()),
        ("dmax", d_max.to_string()),
        ("mmax", m_max.to_string()),
        ("cap", cap.to_string()),
    ];
    CertificateDocument::new("scan violation", &inputs, &result, None, verified)
}

fn repro_rows() -> Result<Vec<ReproRow>, CliError> {
    let mut rows = Vec::new();

    let surfaces = (1..=3u64)
        .map(|d| (format!("type (1,{}), d={d}", 2 * d * d), 4 * d * d))
        .chain((2..=3u64).map(|d| (format!("hypersurface of degree {}, d={d}", d * d), d * d)));
    for (label, l2) in surfaces {
        let (result, verified) = surface_result(l2, None)?;
        rows.push(ReproRow::Surface {
            label,
            l_self: l2,
            verified: verified && result.bounds.exact(),
            bounds: result.bounds,
        });
    }

    let exact = ppas_exact()?;
    let strict = exact.upper.strictness == Ordering::Less;
    rows.push(ReproRow::Ppas {
        label: "ppas".to_string(),
        value: exact.value.clone(),
        maximal: exact.upper.maximal.clone(),
        strict,
        verified: exact.verify() && strict && ppas_infeasibility_scan(PPAS_SCAN_LIMIT).is_empty(),
    });

    for (family, f) in [
        ("hyperelliptic", hyperelliptic_upper as fn(u32) -> _),
        ("general", ppav_general_upper),
    ] {
        for g in 2..=6 {
            let report = f(g)?;
            rows.push(ReproRow::Bound {
                label: format!("{family} g={g}"),
                family: family.to_string(),
                verified: report.recheck() && report.strictness == Ordering::Less,
                report,
            });
        }
    }

    for row in floor_scan(8, 16)? {
        rows.push(ReproRow::Floor {
            label: format!("floor ν={}", row.nu),
            verified: floor_row_ok(&row),
            row,
        });
    }
    Ok(rows)
}

/// `reproduce-paper`: the fixed table of headline values.
pub fn cmd_reproduce_paper() -> Result<CertificateDocument, CliError> {
    let rows = repro_rows()?;
    let verified = rows.iter().all(ReproRow::verified);
    CertificateDocument::new("reproduce-paper", &[], &rows, None, verified)
}

fn regenerate(doc: &CertificateDocument) -> Result<CertificateDocument, CliError> {
    let cap = || -> Result<u128, CliError> {
        doc.input("cap")?
            .parse()
            .map_err(|_| CliError::VerificationFailed("input \"cap\" is not an integer".into()))
    };
    match doc.command.as_str() {
        "surface" => cmd_surface(doc.input_u64("l2")?, Some(doc.input_u64("alpha")?)),
        "abelian" => {
            let kind = AbelianKind::parse(doc.input("kind")?)
                .ok_or_else(|| CliError::VerificationFailed("unknown abelian kind".into()))?;
            let g = u32::try_from(doc.input_u64("g")?)
                .map_err(|_| CliError::VerificationFailed("g out of range".into()))?;
            cmd_abelian(g, kind)
        }
        "scan floor" => cmd_scan_floor(doc.input_u64("from")?, doc.input_u64("to")?, cap()?),
        "scan violation" => cmd_scan_violation(
            doc.input_u64("l2")?,
            doc.input_u64("alpha")?,
            doc.input_u64("dmax")?,
            doc.input_u64("mmax")?,
            cap()?,
        ),
        "reproduce-paper" => cmd_reproduce_paper(),
        other => Err(CliError::VerificationFailed(format!(
            "unknown command {other:?}"
        ))),
    }
}

fn fail(reason: impl Into<String>) -> CliError {
    CliError::VerificationFailed(reason.into())
}

/// Checks the embedded data of `doc` with the verifiers, then recomputes the
/// document from its inputs and requires an exact match.
pub fn verify_document(doc: &CertificateDocument) -> Result<(), CliError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(fail(format!(
            "unsupported schema version {:?}",
            doc.schema_version
        )));
    }
    if !doc.verified {
        return Err(fail("document is marked unverified"));
    }
    let typed_err = |e: serde_json::Error| fail(format!("result does not parse: {e}"));

    match doc.command.as_str() {
        "surface" => {
            let r: SurfaceResult = serde_json::from_value(doc.result.clone()).map_err(typed_err)?;
            let l2 = doc.input_u64("l2")?;
            let ok = r.certificate.l_self == l2
                && verify_certificate(&r.certificate).map_err(|e| fail(e.to_string()))?
                && check_surface_bounds(l2, r.certificate.alpha, &r.bounds);
            if !ok {
                return Err(fail("surface certificate does not replay"));
            }
        }
        "abelian" => {
            if doc.input("kind")? == AbelianKind::PpasExact.as_str() {
                let r: PpasResult =
                    serde_json::from_value(doc.result.clone()).map_err(typed_err)?;
                if !(r.exact.verify() && r.scan_hits.is_empty()) {
                    return Err(fail("surface value certificate does not verify"));
                }
            } else {
                let r: BoundReport =
                    serde_json::from_value(doc.result.clone()).map_err(typed_err)?;
                if !(r.recheck() && r.strictness == Ordering::Less) {
                    return Err(fail("bound report does not recheck"));
                }
            }
        }
        "scan floor" => {
            let r: FloorScanResult =
                serde_json::from_value(doc.result.clone()).map_err(typed_err)?;
            if !r.rows.iter().all(floor_row_ok) {
                return Err(fail("floor row does not recheck"));
            }
        }
        "scan violation" => {
            let r: ViolationScanResult =
                serde_json::from_value(doc.result.clone()).map_err(typed_err)?;
            if !r
                .pairs
                .iter()
                .all(|&p| violation_pair_ok(r.l_self, r.alpha, p))
            {
                return Err(fail("reported pair does not violate"));
            }
        }
        "reproduce-paper" => {
            let rows: Vec<ReproRow> =
                serde_json::from_value(doc.result.clone()).map_err(typed_err)?;
            if let Some(row) = rows.iter().find(|r| !r.verified()) {
                return Err(fail(format!("row {:?} is unverified", row.label())));
            }
        }
        _ => {}
    }

    let fresh = regenerate(doc)?;
    if fresh != *doc {
        return Err(fail(
            "document differs from a fresh computation on the same inputs",
        ));
    }
    Ok(())
}
