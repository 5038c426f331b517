use std::fmt::Write;

use super::commands::{FloorScanResult, PpasResult, ReproRow, SurfaceResult, ViolationScanResult};
use super::CertificateDocument;
use crate::abelian::BoundReport;
use crate::arith::Radical;
use crate::surface::SeshadriBounds;

fn radical(r: &Radical) -> String {
    if r.is_rational() {
        r.to_string()
    } else {
        format!("{r} ~ {}", r.approx_string())
    }
}

fn relation(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    }
}

fn bounds(b: &SeshadriBounds) -> String {
    let tail = if b.exact() { "  (exact)" } else { "" };
    format!(
        "[{}, {}]{tail}",
        radical(&b.lower().value),
        radical(&b.upper().value)
    )
}

fn report(out: &mut String, r: &BoundReport) {
    let _ = writeln!(out, "  bound      {}", radical(&r.value));
    let _ = writeln!(out, "  maximal    {}", radical(&r.maximal));
    let _ = writeln!(out, "  strictness bound {} maximal", relation(r.strictness));
    let _ = writeln!(
        out,
        "  witness    dim {}, degree {}, mult {}",
        r.witness.dim, r.witness.degree, r.witness.mult
    );
    for f in &r.flags {
        let _ = writeln!(out, "  flag       {f}");
    }
}

/// Plain-text view of a document. JSON stays the authoritative output.
pub fn render_pretty(doc: &CertificateDocument) -> String {
    let mut out = String::new();
    let inputs: Vec<String> = doc.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "{} {}", doc.command, inputs.join(" "));

    let result = doc.result.clone();
    match doc.command.as_str() {
        "surface" => {
            if let Ok(r) = serde_json::from_value::<SurfaceResult>(result) {
                let _ = writeln!(out, "  {}", r.certificate.conclusion);
                let _ = writeln!(out, "  epsilon in {}", bounds(&r.bounds));
            }
        }
        "abelian" => {
            if let Ok(r) = serde_json::from_value::<PpasResult>(result.clone()) {
                let _ = writeln!(out, "  exact value {}", r.exact.value);
                report(&mut out, &r.exact.upper);
                let _ = writeln!(
                    out,
                    "  (a, b) scan up to {}: {} hits",
                    r.scan_limit,
                    r.scan_hits.len()
                );
            } else if let Ok(r) = serde_json::from_value::<BoundReport>(result) {
                report(&mut out, &r);
            }
        }
        "scan floor" => {
            if let Ok(r) = serde_json::from_value::<FloorScanResult>(result) {
                let _ = writeln!(
                    out,
                    "  {:>6}  {:>12}  {:>8}  counterexample",
                    "nu", "4nu/3", "floor"
                );
                for row in &r.rows {
                    let _ = writeln!(
                        out,
                        "  {:>6}  {:>12}  {:>8}  {}",
                        row.nu,
                        row.lhs.to_string(),
                        row.floor_rhs.to_string(),
                        row.is_counterexample
                    );
                }
                if !r.exceptions_from_8.is_empty() {
                    let _ = writeln!(
                        out,
                        "  not counterexamples for nu >= 8: {:?}",
                        r.exceptions_from_8
                    );
                }
            }
        }
        "scan violation" => {
            if let Ok(r) = serde_json::from_value::<ViolationScanResult>(result) {
                let _ = writeln!(
                    out,
                    "  {} violating pairs, verdict {}",
                    r.pairs.len(),
                    r.verdict
                );
                for (d, m) in r.pairs.iter().take(20) {
                    let _ = writeln!(out, "  d = {d}, m = {m}");
                }
            }
        }
        "reproduce-paper" => {
            if let Ok(rows) = serde_json::from_value::<Vec<ReproRow>>(result) {
                for row in &rows {
                    let detail = match row {
                        ReproRow::Surface { bounds: b, .. } => bounds(b),
                        ReproRow::Ppas {
                            value,
                            maximal,
                            strict,
                            ..
                        } => {
                            format!(
                                "{value} {} {}",
                                if *strict { "<" } else { "not <" },
                                radical(maximal)
                            )
                        }
                        ReproRow::Bound { report, .. } => format!(
                            "{} {} {}",
                            radical(&report.value),
                            relation(report.strictness),
                            radical(&report.maximal)
                        ),
                        ReproRow::Floor { row, .. } => format!(
                            "{} vs {}, counterexample {}",
                            row.lhs, row.floor_rhs, row.is_counterexample
                        ),
                    };
                    let mark = if row.verified() { "ok" } else { "FAILED" };
                    let _ = writeln!(out, "  {:<32} {detail}  [{mark}]", row.label());
                }
            }
        }
        _ => {}
    }

    if let Some(steps) = &doc.steps {
        let _ = writeln!(out, "  steps:");
        for s in steps {
            let _ = writeln!(
                out,
                "    {:<14} {} {} {}",
                s.label, s.lhs, s.relation, s.rhs
            );
        }
    }
    let _ = writeln!(out, "verified: {}", doc.verified);
    out
}
