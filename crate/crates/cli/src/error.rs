use std::fmt::Display;

use minorlab::certify::CertifyError;
use minorlab::decomp::{CoverError, TreedepthError};
use minorlab::graph::{GenerateError, OracleError, ParseError, PropertyParseError};
use minorlab::obstructions::{BoundError, DichotomyError, FamilyError};
use minorlab::tester::TesterError;
use thiserror::Error;

/// Failures, by exit code: 2 usage, 3 data, 4 guard exceeded.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Guard(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Guard(_) => "guard",
        }
    }

    pub fn data(e: impl Display) -> Self {
        CliError::Data(e.to_string())
    }

    pub fn usage(e: impl Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::data(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::data(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::data(e)
    }
}

impl From<GenerateError> for CliError {
    fn from(e: GenerateError) -> Self {
        match e {
            GenerateError::UnknownFamily(_) | GenerateError::Empty => CliError::usage(e),
            GenerateError::NotPlanar(_) => CliError::data(e),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::data(e)
    }
}

impl From<PropertyParseError> for CliError {
    fn from(e: PropertyParseError) -> Self {
        CliError::usage(e)
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } => CliError::Guard(e.to_string()),
            OracleError::NotMonotone(_) => CliError::usage(e),
            OracleError::Unreachable(_) => CliError::data(e),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::TooLarge { .. } => CliError::Guard(e.to_string()),
            _ => CliError::data(e),
        }
    }
}

impl From<TreedepthError> for CliError {
    fn from(e: TreedepthError) -> Self {
        CliError::Guard(e.to_string())
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::InvalidDelta(_) | CoverError::InvalidEps(_) => CliError::usage(e),
            _ => CliError::data(e),
        }
    }
}

impl From<DichotomyError> for CliError {
    fn from(e: DichotomyError) -> Self {
        match e {
            DichotomyError::InvalidEps(_) | DichotomyError::InvalidDensity(_) | DichotomyError::NotMonotone(_) => {
                CliError::usage(e)
            }
            DichotomyError::Cover(c) => c.into(),
            DichotomyError::TooDense { .. } | DichotomyError::ExtensionLimit(_) => CliError::data(e),
        }
    }
}

impl From<TesterError> for CliError {
    fn from(e: TesterError) -> Self {
        match e {
            TesterError::InvalidEps(_)
            | TesterError::EmptyFamily
            | TesterError::NotMonotone(_)
            | TesterError::InvalidDensity(_) => CliError::usage(e),
            TesterError::MemberInProperty(_) | TesterError::MemberTooLarge { .. } => CliError::data(e),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::SpaceTooLarge { .. } => CliError::Guard(e.to_string()),
            CertifyError::InvalidParameter(_)
            | CertifyError::NotSummable(_)
            | CertifyError::NotMonotone(_)
            | CertifyError::NoAlphabet => CliError::usage(e),
            CertifyError::Cover(c) => c.into(),
            _ => CliError::data(e),
        }
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        CliError::usage(e)
    }
}
