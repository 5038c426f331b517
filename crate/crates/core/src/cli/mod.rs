//! Certificate documents: the JSON the `seshadri` binary emits and checks.
//!
//! Each `cmd_*` function computes a result, verifies it in-process and wraps
//! it in a [`CertificateDocument`]. [`verify_document`] re-checks a document
//! read back from disk.

mod commands;
mod pretty;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::AbelianError;
use crate::intersection::IntersectionError;
use crate::surface::SurfaceError;

pub use commands::{
    cmd_abelian, cmd_reproduce_paper, cmd_scan_floor, cmd_scan_violation, cmd_surface,
    verify_document, AbelianKind, FloorScanResult, ReproRow, SurfaceResult, ViolationScanResult,
    DEFAULT_SCAN_CAP,
};
pub use pretty::render_pretty;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Intersection(#[from] IntersectionError),
    #[error("scan of {requested} cases exceeds the cap of {cap}; raise it with --cap")]
    CapExceeded { requested: u128, cap: u128 },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage and domain errors, 3 when a verifier rejects a result.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Surface(SurfaceError::AlphaTooLarge { .. }) => "alpha_too_large",
            CliError::Surface(SurfaceError::PicardRankUnsupported(_)) => "picard_rank_unsupported",
            CliError::Surface(_) => "surface",
            CliError::Abelian(_) => "abelian",
            CliError::Intersection(_) => "intersection",
            CliError::CapExceeded { .. } => "cap_exceeded",
            CliError::VerificationFailed(_) => "verification_failed",
            CliError::Json(_) => "json",
            CliError::Io(_) => "io",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
    }
}

/// One human-readable line of an inequality chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRow {
    pub name: String,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepRow>>,
    pub verified: bool,
}

impl CertificateDocument {
    fn new(
        command: &str,
        inputs: &[(&str, String)],
        result: impl Serialize,
        steps: Option<Vec<StepRow>>,
        verified: bool,
    ) -> Result<Self, CliError> {
        Ok(CertificateDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: inputs
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            result: serde_json::to_value(result)?,
            steps,
            verified,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Error unless the in-process verifier accepted the result.
    pub fn require_verified(self) -> Result<Self, CliError> {
        if self.verified {
            Ok(self)
        } else {
            Err(CliError::VerificationFailed(format!(
                "in-process verification of `{}` did not pass",
                self.command
            )))
        }
    }

    pub(crate) fn input(&self, key: &str) -> Result<&str, CliError> {
        self.inputs
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::VerificationFailed(format!("missing input {key:?}")))
    }

    pub(crate) fn input_u64(&self, key: &str) -> Result<u64, CliError> {
        self.input(key)?
            .parse()
            .map_err(|_| CliError::VerificationFailed(format!("input {key:?} is not an integer")))
    }
}
