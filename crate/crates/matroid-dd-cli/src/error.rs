//! Error type shared by the commands, with the process exit code policy.
//!
//! Every failure is either an input problem (malformed description file,
//! unknown element name, non-matroid family) or a resource refusal (the
//! instance exceeds a size limit). Theorem-check failures are not errors:
//! commands report them in their output and `main` turns them into exit
//! code 4 so that the full report still reaches the user.

use std::fmt;

use matroid_dd::analysis::AnalysisError;
use matroid_dd::build::BuildError;
use matroid_dd::dd::DdError;
use matroid_dd::family::FamilyError;
use matroid_dd::matroid::MatroidError;
use matroid_dd::oracle::OracleError;
use matroid_dd::transforms::TransformError;

/// Exit code for input errors.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for size-limit refusals.
pub const EXIT_RESOURCE: i32 = 3;
/// Exit code when a checked relation or bound fails to hold.
pub const EXIT_THEOREM: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    /// The request cannot be interpreted: bad file, bad schema, bad names.
    Input(String),
    /// The request is well-formed but the instance exceeds a size limit.
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Resource(msg) => f.write_str(msg),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid matroid description: {e}"))
    }
}

impl From<DdError> for CliError {
    fn from(e: DdError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::GroundTooLarge(_) => CliError::Resource(e.to_string()),
            FamilyError::MemberOutOfRange { .. } => CliError::Input(e.to_string()),
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::TooLarge { .. } => CliError::Resource(e.to_string()),
            BuildError::OrderMismatch => CliError::Input(e.to_string()),
            BuildError::Dd(inner) => inner.into(),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::TooLarge { .. } | AnalysisError::SuffixTooLarge { .. } => {
                CliError::Resource(e.to_string())
            }
            AnalysisError::Build(inner) => inner.into(),
            AnalysisError::Dd(inner) => inner.into(),
            AnalysisError::Matroid(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Build(inner) => inner.into(),
            TransformError::Dd(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Input(e.to_string())
    }
}
