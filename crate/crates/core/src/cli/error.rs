//! Stable error codes for the command-line front end.

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::affine::AffineError;
use crate::blocks::BlocksError;
use crate::boundary::BoundaryError;
use crate::fusion::FusionError;
use crate::liealg::LieError;
use crate::modular::InvariantViolation;
use crate::orbifold::OrbifoldError;
use crate::simplecurrent::SimpleCurrentError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorCode {
    /// Malformed command line, algebra, label or number.
    Parse,
    /// Weyl group larger than the configured cap.
    WeylCap,
    /// A construction outside the implemented cases.
    NotImplemented,
    /// Input that is well-formed but violates a construction's precondition.
    Precondition,
    /// A computed object failed one of its invariants.
    Invariant,
    Io,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Parse => "parse",
            ErrorCode::WeylCap => "weyl-cap",
            ErrorCode::NotImplemented => "not-implemented",
            ErrorCode::Precondition => "precondition",
            ErrorCode::Invariant => "invariant",
            ErrorCode::Io => "io",
        }
    }

    pub fn exit_status(self) -> i32 {
        match self {
            ErrorCode::Parse => 2,
            ErrorCode::WeylCap => 3,
            ErrorCode::NotImplemented => 4,
            ErrorCode::Precondition => 5,
            ErrorCode::Invariant => 6,
            ErrorCode::Io => 7,
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("[{}] {message}", code.as_str())]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
    /// Residual tables or other context for invariant failures.
    pub details: Option<Value>,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
            details: None,
        }
    }

    pub fn parse(message: impl Into<String>) -> CliError {
        Self::new(ErrorCode::Parse, message)
    }

    pub fn precondition(message: impl Into<String>) -> CliError {
        Self::new(ErrorCode::Precondition, message)
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        let code = match e {
            LieError::WeylCap { .. } => ErrorCode::WeylCap,
            LieError::Parse(_) | LieError::InvalidAlgebra { .. } => ErrorCode::Parse,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<InvariantViolation> for CliError {
    fn from(e: InvariantViolation) -> Self {
        CliError::new(ErrorCode::Invariant, e.to_string())
    }
}

impl From<AffineError> for CliError {
    fn from(e: AffineError) -> Self {
        match e {
            AffineError::Lie(l) => l.into(),
            AffineError::NotImplemented(_) => CliError::new(ErrorCode::NotImplemented, e.to_string()),
            AffineError::NotSimpleCurrent(_) => CliError::precondition(e.to_string()),
            AffineError::Invariant(_) | AffineError::PhaseFixing { .. } => {
                CliError::new(ErrorCode::Invariant, e.to_string())
            }
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        let code = match e {
            FusionError::NotAGroup(_) => ErrorCode::Precondition,
            _ => ErrorCode::Invariant,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<SimpleCurrentError> for CliError {
    fn from(e: SimpleCurrentError) -> Self {
        match e {
            SimpleCurrentError::Affine(a) => a.into(),
            SimpleCurrentError::Fusion(f) => f.into(),
            SimpleCurrentError::HalfIntegerCurrent { .. } | SimpleCurrentError::NonIntegerCurrent { .. } => {
                CliError::precondition(e.to_string())
            }
            _ => CliError::new(ErrorCode::Invariant, e.to_string()),
        }
    }
}

impl From<BlocksError> for CliError {
    fn from(e: BlocksError) -> Self {
        match e {
            BlocksError::Affine(a) => a.into(),
            BlocksError::Integrality { .. } => CliError::new(ErrorCode::Invariant, e.to_string()),
            _ => CliError::precondition(e.to_string()),
        }
    }
}

impl From<OrbifoldError> for CliError {
    fn from(e: OrbifoldError) -> Self {
        match e {
            OrbifoldError::Affine(a) => a.into(),
            OrbifoldError::Fusion(f) => f.into(),
            OrbifoldError::Blocks(b) => b.into(),
            OrbifoldError::Precondition(_) | OrbifoldError::NotFixed { .. } => {
                CliError::precondition(e.to_string())
            }
            _ => CliError::new(ErrorCode::Invariant, e.to_string()),
        }
    }
}

impl From<BoundaryError> for CliError {
    fn from(e: BoundaryError) -> Self {
        match e {
            BoundaryError::SimpleCurrent(s) => s.into(),
            BoundaryError::Affine(a) => a.into(),
            _ => CliError::new(ErrorCode::Invariant, e.to_string()),
        }
    }
}
